"""Batch checks of the structural claims at desk scale.

Each checker returns a :class:`ClaimResult`; an empty counterexample list
means the claim held on every instance examined.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from .field import (
    FieldElement,
    degree_and_qorder,
    element_order,
    embed,
    make_field,
    minimal_polynomial,
    prime_power,
    restrict,
)
from .classify import extend, lift
from .codes import build_code, find_extra_automorphism
from .linearized import count_nonsingular_maps, fixes_subgroup, search_nonstandard
from .lrs import Recurrence, restricted_period
from .projective import group_closure, setup_lambda_gamma, subfield_membership


@dataclass
class ClaimResult:
    claim: str
    checked: int = 0
    counterexamples: list = dc_field(default_factory=list)
    closures: list = dc_field(default_factory=list)  # (GroupClosure, LambdaGamma, d)
    notes: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_record(self) -> dict:
        return {"claim": self.claim, "checked": self.checked, "ok": self.ok,
                "counterexamples": self.counterexamples[:20], **self.notes}


def prime_powers(upto: int, start: int = 2) -> list[int]:
    out = []
    for q in range(start, upto + 1):
        try:
            prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


def elements_with_qorder(q: int, d: int, m: int = 2):
    """All elements of GF(q^m) of degree m over GF(q) with q-order d."""
    p, s = prime_power(q)
    E = make_field(p, s * m)
    for k in range(1, E.N):
        n = E.N // math.gcd(k, E.N)
        if n // math.gcd(n, q - 1) != d:
            continue
        if math.gcd(n, q - 1) == n:  # inside GF(q)
            continue
        x = FieldElement(E, E.exp(k))
        if degree_and_qorder(x, q).m == m:
            yield x


def check_no_qorder3(qmax: int = 64) -> ClaimResult:
    res = ClaimResult("nod3")
    for q in prime_powers(qmax):
        if (q + 1) % 3:
            continue
        for xi in elements_with_qorder(q, 3):
            res.checked += 1
            if search_nonstandard(xi, q):
                res.counterexamples.append({"q": q, "xi": xi.enc})
    return res


def _degree2_data(xi: FieldElement, q: int):
    ws = search_nonstandard(xi, q)
    out = []
    for w in ws:
        lg = setup_lambda_gamma(xi, w.L)
        out.append((w, lg, group_closure([lg.Lam, lg.Gam])))
    return out


def check_qorder4(qmax: int = 81) -> ClaimResult:
    """q-order 4 and nonstandard: p = 3, lambda = -1/2, xi/sigma_1 primitive in GF(9), Xi inside PGL(2, 3)."""
    res = ClaimResult("d4")
    found = 0
    for q in prime_powers(qmax):
        if (q + 1) % 4:
            continue
        for xi in elements_with_qorder(q, 4):
            res.checked += 1
            for w, lg, G in _degree2_data(xi, q):
                found += 1
                res.closures.append((G, lg, w.d))
                K = lg.lam.field
                bad = []
                if K.p != 3:
                    bad.append("p != 3")
                elif lg.lam * 2 != -1:
                    bad.append("lambda != -1/2")
                xt = xi / (xi + xi**q)
                if element_order(xt) != 8:
                    bad.append("xi/sigma_1 not primitive in GF(9)")
                if K.p == 3 and not all(subfield_membership(g, 3) is not None for g in G.elements):
                    bad.append("Xi not inside PGL(2,3)")
                if bad:
                    res.counterexamples.append({"q": q, "xi": xi.enc, "fail": bad})
    res.notes["nonstandard_instances"] = found
    return res


def check_qorder5(qmax: int = 64) -> ClaimResult:
    """q-order 5 and nonstandard: p = 2, lambda^2 + 3 lambda + 1 = 0, xi/sigma_1 primitive in GF(16)."""
    res = ClaimResult("d5")
    found = 0
    for q in prime_powers(qmax):
        if (q + 1) % 5:
            continue
        for xi in elements_with_qorder(q, 5):
            res.checked += 1
            for w, lg, G in _degree2_data(xi, q):
                found += 1
                res.closures.append((G, lg, w.d))
                lam = lg.lam
                bad = []
                if lam.field.p != 2:
                    bad.append("p != 2")
                if (lam * lam + lam * 3 + 1).enc != 0:
                    bad.append("lambda^2 + 3 lambda + 1 != 0")
                xt = xi / (xi + xi**q)
                if element_order(xt) != 15:
                    bad.append("xi/sigma_1 not primitive in GF(16)")
                if lam.field.p == 2 and not all(subfield_membership(g, 4) is not None for g in G.elements):
                    bad.append("Xi not inside PGL(2,4)")
                if bad:
                    res.counterexamples.append({"q": q, "xi": xi.enc, "fail": bad})
    res.notes["nonstandard_instances"] = found
    return res


def irreducible_recurrences(q: int, m: int):
    """(Recurrence, root) for every monic irreducible f of degree m over GF(q), with nonzero f(0)."""
    p, s = prime_power(q)
    E = make_field(p, s * m)
    seen = set()
    for enc in range(1, E.order):
        x = FieldElement(E, enc)
        if degree_and_qorder(x, q).m != m:
            continue
        f = minimal_polynomial(x, q)
        if f.coeffs in seen:
            continue
        seen.add(f.coeffs)
        yield Recurrence.of_element(x, q), x


def check_restricted_period(qs=(2, 3, 4, 5, 7, 8, 9), degrees=(2, 3)) -> ClaimResult:
    res = ClaimResult("trp")
    for q in qs:
        for m in degrees:
            for rec, xi in irreducible_recurrences(q, m):
                res.checked += 1
                delta, lam = restricted_period(rec)
                qo = degree_and_qorder(xi, q)
                if delta != qo.d or lam != restrict(xi**qo.d, rec.field):
                    res.counterexamples.append({"q": q, "m": m, "f": str(rec.charpoly),
                                                "delta": delta, "d": qo.d})
    return res


def check_qorder_arithmetic(qmax: int = 9, degrees=(2, 3)) -> ClaimResult:
    res = ClaimResult("tqord")
    for q in prime_powers(qmax):
        p, s = prime_power(q)
        for m in degrees:
            E = make_field(p, s * m)
            for enc in range(1, E.order):
                x = FieldElement(E, enc)
                res.checked += 1
                try:
                    qo = degree_and_qorder(x, q)
                except AssertionError as exc:
                    res.counterexamples.append({"q": q, "x": enc, "error": str(exc)})
                    continue
                ok = (qo.d * qo.e == qo.n and qo.m <= qo.d
                      and ((q**qo.m - 1) // (q - 1)) % qo.d == 0
                      and math.gcd(qo.d, (q - 1) // qo.e) == 1
                      and E.in_subfield((x**qo.d).enc, q))
                if ok and qo.n <= 64:
                    ok = not any(E.in_subfield((x**k).enc, q) for k in range(1, qo.d))
                if not ok:
                    res.counterexamples.append({"q": q, "m": m, "x": enc})
    return res


def check_code_equivalence(nmax: int = 8, qs=(2, 3, 4)) -> ClaimResult:
    res = ClaimResult("cqpol")
    rows = []
    for q in qs:
        for n in range(2, nmax + 1):
            if math.gcd(n, q) != 1:
                continue
            C = build_code(n, q, [1])
            extra = find_extra_automorphism(C)
            ns = bool(search_nonstandard(C.xi, q))
            res.checked += 1
            rows.append({"q": q, "n": n, "m": C.m, "extra": extra is not None, "nonstandard": ns})
            if (extra is not None) != ns:
                res.counterexamples.append(rows[-1])
    res.notes["rows"] = rows
    return res


def nonsingular_count_inequality(qmax: int = 16, mmax: int = 16) -> list[tuple[int, int]]:
    """(m, q) pairs in [2, mmax] x [2, qmax] where |GL(m, q)| > m (q^m - 1) fails."""
    return [(m, q) for m in range(2, mmax + 1) for q in range(2, qmax + 1)
            if not count_nonsingular_maps(q, m) > m * (q**m - 1)]


CLAIMS = {
    "nod3": check_no_qorder3,
    "d4": check_qorder4,
    "d5": check_qorder5,
    "trp": check_restricted_period,
    "tqord": check_qorder_arithmetic,
    "cqpol": check_code_equivalence,
}


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ValueError:
        return False
    return True


def transport_roundtrips(count: int = 200, seed: int = 0, budget: int = 10**4) -> ClaimResult:
    """Random lift-then-extend round trips; each must keep (n, d) through the lift,
    keep d through the extension, and re-verify over the big field."""
    rng = random.Random(seed)
    # (q0, m, t) with gcd(m, t) = 1 and GF(q0^(m t)) small enough for tables
    shapes = [(3, 2, 1), (3, 2, 3), (4, 2, 3), (5, 2, 3), (7, 2, 3), (9, 2, 1), (5, 2, 1),
              (2, 3, 2), (2, 3, 4), (3, 3, 2), (4, 3, 2)]
    res = ClaimResult("transport")
    attempts = 0
    while res.checked < count:
        attempts += 1
        if attempts > 50 * count:
            raise RuntimeError("could not draw enough nonstandard base elements")
        q0, m, t = rng.choice(shapes)
        p, s = prime_power(q0)
        E = make_field(p, s * m)
        phi = FieldElement(E, rng.randrange(1, E.order))
        qo = degree_and_qorder(phi, q0)
        if qo.m != m or qo.n ** (m - 1) > budget:
            continue
        ws = search_nonstandard(phi, q0, budget)
        if not ws:
            continue
        w = rng.choice(ws)
        q = q0**t
        res.checked += 1
        try:
            up = lift(w, t)
            K = make_field(p, s * t)
            lam = FieldElement(K, rng.randrange(1, K.order))
            xi = embed(lam, up.L.field) * up.xi
            if element_order(xi) % up.n:
                xi = up.xi
            out = extend(up, xi)
        except Exception as exc:  # noqa: BLE001 - every failure is a counterexample
            res.counterexamples.append({"q0": q0, "m": m, "t": t, "phi": phi.enc, "error": repr(exc)})
            continue
        ok = ((up.n, up.d) == (w.n, w.d) and out.d == w.d and out.n % up.n == 0
              and out.L == up.L and out.q == q
              and fixes_subgroup(up.L, up.xi) and fixes_subgroup(out.L, out.xi))
        if not ok:
            res.counterexamples.append({"q0": q0, "m": m, "t": t, "phi": phi.enc})
    res.notes["attempts"] = attempts
    return res


__all__ = [
    "CLAIMS",
    "ClaimResult",
    "check_code_equivalence",
    "check_no_qorder3",
    "check_qorder4",
    "check_qorder5",
    "check_qorder_arithmetic",
    "check_restricted_period",
    "elements_with_qorder",
    "irreducible_recurrences",
    "is_prime_power",
    "nonsingular_count_inequality",
    "prime_powers",
    "transport_roundtrips",
]
