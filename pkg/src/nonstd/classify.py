"""The two known families of nonstandard elements, the lifting and extension
transports, the degree-2 classifier and exhaustive surveys.

Naming: type I means minimal polynomial x^m - eta (q-order m); type II means
obtained from a primitive element of GF(q0^m) by lifting to GF(q), q = q0^t,
and extending.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Any

from .field import (
    BudgetError,
    FieldElement,
    FieldError,
    GF,
    degree_and_qorder,
    divisors,
    element_order,
    embed,
    home_field,
    make_field,
    minimal_polynomial,
    multiplicative_order,
    prime_power,
    restrict,
)
from .linearized import (
    NonstandardWitness,
    QPolynomial,
    evaluate,
    is_standard,
    qpoly_from_images,
    search_nonstandard,
    witness_from_qpoly,
)
from . import __version__

REPORT_HEADER = "# nonstd-report v1"


@dataclass
class ClassLabel:
    kind: str  # standard | type_I | type_II | sporadic | unclassified
    params: dict = dc_field(default_factory=dict)
    evidence: dict = dc_field(default_factory=dict)

    def __str__(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.kind}({inner})"

    def to_record(self) -> dict:
        return {"kind": self.kind, **self.params}


def _unclassified(step: str, **evidence) -> ClassLabel:
    return ClassLabel("unclassified", {}, {"failed_step": step, **evidence})


def _small(q: int) -> GF:
    p, s = prime_power(q)
    return make_field(p, s)


def _subfield_power(q0: int, q: int) -> int | None:
    """t with q0^t = q, or None."""
    t, x = 0, 1
    while x < q:
        x *= q0
        t += 1
    return t if x == q else None


# ---------------------------------------------------------------------------
# type I


def _root_of_binomial(q: int, m: int, eta: FieldElement) -> FieldElement | None:
    """Least-encoding root of x^m - eta of degree m in GF(q^m), or None when reducible."""
    p, s = prime_power(q)
    E = make_field(p, s * m)
    N = E.N
    target = E.log(embed(eta, E).enc)
    g = math.gcd(m, N)
    if target % g:
        return None
    k0 = (target // g) * pow(m // g, -1, N // g) % (N // g)
    roots = sorted(E.exp(k0 + j * (N // g)) for j in range(g))
    for enc in roots:
        x = FieldElement(E, enc)
        if degree_and_qorder(x, q).m == m:
            return x
    return None


def construct_type_I(q: int, m: int, eta: FieldElement, tau, scalars) -> NonstandardWitness:
    """Witness L(xi^j) = eta_j xi^{tau(j)} for xi a root of x^m - eta."""
    if q == 2:
        raise ValueError("type I needs q > 2")
    K = _small(q)
    eta = K(eta)
    if eta.enc == 0:
        raise ValueError("eta must be nonzero")
    tau = [int(t) for t in tau]
    if len(tau) != m or sorted(tau) != list(range(m)) or tau[0] != 0:
        raise ValueError("tau must be a permutation of 0..m-1 fixing 0")
    scalars = [K(c) for c in scalars]
    if len(scalars) != m - 1:
        raise ValueError(f"need {m - 1} scalars")
    e = element_order(eta)
    if any(c.enc == 0 or c**e != 1 for c in scalars):
        raise ValueError("scalars must lie in <eta>")
    xi = _root_of_binomial(q, m, eta)
    if xi is None:
        raise ValueError(f"x^{m} - eta is reducible over GF({q})")
    n = m * e
    if n <= 4:
        raise ValueError(f"order n = {n} must exceed 4")
    E = xi.field
    coeffs = [E.one] + [embed(c, E) for c in scalars]
    images = [coeffs[j] * xi ** tau[j] for j in range(m)]
    L = qpoly_from_images(xi, q, images)
    if is_standard(L) is not None:
        raise ValueError("requested pattern is a standard q-polynomial")
    w = witness_from_qpoly(xi, q, L, tag="type_I")
    assert w.d == m and w.n == n
    w.verify()
    return w


# ---------------------------------------------------------------------------
# transports


def lift(w: NonstandardWitness, t: int) -> NonstandardWitness:
    """Witness over GF(q0^t) from one over GF(q0): coefficient i moves to index u*i mod m, ut = 1 mod m."""
    q0, m = w.q, w.m
    if t < 1:
        raise ValueError("t must be positive")
    if math.gcd(m, t) != 1:
        raise ValueError(f"lifting needs gcd(m, t) = 1, got m={m}, t={t}")
    if t == 1:
        return w
    p, s = prime_power(q0)
    q = q0**t
    big = make_field(p, s * t * m)
    u = pow(t, -1, m) if m > 1 else 1
    coeffs = [0] * m
    src = w.L.field
    for i, c in enumerate(w.L.coeffs):
        coeffs[(u * i) % m] = embed(FieldElement(src, c), big).enc
    L = QPolynomial(big, q, tuple(coeffs))
    xi = embed(w.xi, big)
    out = witness_from_qpoly(xi, q, L, tag=w.tag)
    assert (out.n, out.d, out.m) == (w.n, w.d, w.m), "lift changed (n, d, m)"
    out.verify()
    return out


def extend(w: NonstandardWitness, xi: FieldElement) -> NonstandardWitness:
    """The same L as a witness for xi, when <phi> <= <xi> and xi in GF(q)*<phi>."""
    q = w.q
    xi = home_field(xi, q)
    if xi.field is not w.L.field:
        raise FieldError("target element has a different degree")
    n_phi = w.n
    n_xi = element_order(xi)
    if n_xi % n_phi:
        raise ValueError("<phi> is not contained in <xi>")
    if math.lcm(q - 1, n_phi) % n_xi:
        raise ValueError("xi is not in GF(q)*<phi>")
    out = witness_from_qpoly(xi, q, w.L, tag=w.tag)
    assert out.L == w.L
    assert out.d == w.d and out.n == w.n * (n_xi // n_phi), "extension changed d"
    out.verify()
    return out


# ---------------------------------------------------------------------------
# type II


def _base_primitive_witness(q0: int, m: int) -> NonstandardWitness:
    """A primitive element of GF(q0^m) with a simple nonsingular nonstandard L."""
    p, s = prime_power(q0)
    E = make_field(p, s * m)
    xi = E.gen
    K = _small(q0)
    for i in range(1, m):
        for c in range(1, q0):
            shift = embed(K.elem(c), E)
            images = [xi**j for j in range(m)]
            images[i] = images[i] + shift
            L = qpoly_from_images(xi, q0, images)
            if is_standard(L) is None:
                return witness_from_qpoly(xi, q0, L, tag="type_II")
    raise AssertionError("no nonstandard base map found")  # pragma: no cover


def construct_type_II(q0: int, t: int, m: int, k: int) -> NonstandardWitness:
    """Element of order d(q0-1)k and q-order d = (q0^m-1)/(q0-1) over GF(q0^t)."""
    prime_power(q0)
    if m < 2:
        raise ValueError("m must be at least 2")
    if q0**m <= 4:
        raise ValueError(f"q0^m = {q0 ** m} must exceed 4")
    if t < 1 or math.gcd(m, t) != 1:
        raise ValueError(f"need gcd(m, t) = 1, got m={m}, t={t}")
    q = q0**t
    if (q - 1) % (q0 - 1) or ((q - 1) // (q0 - 1)) % k:
        raise ValueError(f"k = {k} does not divide (q-1)/(q0-1) = {(q - 1) // (q0 - 1)}")
    base = _base_primitive_witness(q0, m)
    lifted = lift(base, t)
    d = (q0**m - 1) // (q0 - 1)
    N = d * (q0 - 1) * k
    E = lifted.L.field
    target = E.element_of_order(N)
    w = extend(lifted, target)
    assert w.d == d and w.n == N
    w.evidence = {"q0": q0, "t": t, "k": k, "base_xi": base.xi.enc}
    return w


# ---------------------------------------------------------------------------
# degree-2 classification


def _type_I_label(xi: FieldElement, q: int, qo, witnesses) -> ClassLabel:
    K = _small(q)
    f = minimal_polynomial(xi, q)
    if f.coeffs[1] != 0:
        return _unclassified("minimal polynomial is not x^2 - eta")
    eta = restrict(xi**2, K)
    e = element_order(eta)
    n = qo.n
    if not (n == 2 * e and n > 4 and q % 2 == 1 and ((q - 1) // e) % 2 == 1):
        return _unclassified("type I degree-2 criterion", n=n, e=e)
    # every witness sends xi to eta_1 * xi with eta_1 in <eta>
    for w in witnesses:
        y = evaluate(w.L, xi) / xi
        if restrict(y, K) ** e != 1:
            return _unclassified("witness shape eta_1 * xi")
    return ClassLabel("type_I", {"eta": eta.enc, "e": e}, {"count": len(witnesses),
                                                           "witness": witnesses[0].to_record()})


def classify_degree2(xi: FieldElement, q: int, budget: int | None = None,
                     keep_closures: list | None = None,
                     witnesses: list[NonstandardWitness] | None = None) -> ClassLabel:
    """Label a degree-2 element as standard, type_I or type_II with a checked evidence chain.

    Any failing step gives an unclassified label naming that step.
    ``keep_closures``, when a list, receives the PGL(2, q) closures built.
    """
    from .projective import group_closure, identify_subgroup, setup_lambda_gamma

    xi = home_field(xi, q)
    qo = degree_and_qorder(xi, q)
    if qo.m != 2:
        raise ValueError(f"element has degree {qo.m} over GF({q}), not 2")
    if witnesses is None:
        witnesses = search_nonstandard(xi, q, budget)
    base_ev = {"n": qo.n, "d": qo.d, "e": qo.e, "count": len(witnesses)}
    if not witnesses:
        return ClassLabel("standard", {}, base_ev)
    xq = xi**q
    if (xi + xq).enc == 0:
        lab = _type_I_label(xi, q, qo, witnesses)
        lab.evidence = {**base_ev, **lab.evidence}
        return lab

    w = witnesses[0]
    ev: dict[str, Any] = {**base_ev, "witness": w.to_record()}
    lg = setup_lambda_gamma(xi, w.L)
    G = group_closure([lg.Lam, lg.Gam])
    if keep_closures is not None:
        keep_closures.append(G)
    sub = identify_subgroup(G, q)
    ev.update(xi_order=G.order, xi_group=str(sub), lam=lg.lam.enc, nu=lg.nu.enc, omega_t=lg.omega_t.enc)
    if sub.kind not in ("PSL", "PGL"):
        return _unclassified("Xi is not PSL(2,q0) or PGL(2,q0)", **ev)
    q0 = sub.q0
    if qo.d != q0 + 1:
        return _unclassified("d = q0 + 1", q0=q0, **ev)
    t = _subfield_power(q0, q)
    if t is None or t % 2 == 0:
        return _unclassified("q = q0^t with t odd", q0=q0, **ev)
    K = lg.lam.field
    if not all(K.in_subfield(x.enc, q0) for x in (lg.lam, lg.nu, lg.omega_t)):
        return _unclassified("lambda, nu, omega~ in GF(q0)", q0=q0, t=t, **ev)
    n = qo.n
    delta0 = n // math.gcd(n, q0 * q0 - 1)
    phi = xi**delta0
    qo_phi = degree_and_qorder(phi, q0)
    ev.update(q0=q0, t=t, delta0=delta0, phi=phi.enc, phi_order=qo_phi.n)
    if qo_phi.m != 2 or qo_phi.d != q0 + 1:
        return _unclassified("phi has q0-order q0 + 1", **ev)
    if qo_phi.n != q0 * q0 - 1:
        return _unclassified("phi is primitive in GF(q0^2)", **ev)
    phi_w = search_nonstandard(phi, q0, budget)
    if not phi_w:
        return _unclassified("phi is nonstandard over GF(q0)", **ev)
    k, rem = divmod(n, qo.d * (q0 - 1))
    if rem or ((q - 1) // (q0 - 1)) % k:
        return _unclassified("n = d (q0 - 1) k with k | (q-1)/(q0-1)", **ev)
    try:
        rebuilt = extend(lift(phi_w[0], t), xi)
    except (AssertionError, ValueError) as exc:
        return _unclassified("lift and extend reproduce xi", error=str(exc), **ev)
    ev.update(k=k, transport_d=rebuilt.d, transport_n=rebuilt.n)
    return ClassLabel("type_II", {"q0": q0, "t": t, "k": k}, ev)


# ---------------------------------------------------------------------------
# higher degree heuristics


def _heuristic_label(xi: FieldElement, q: int, qo) -> ClassLabel:
    m, d, n, e = qo.m, qo.d, qo.n, qo.e
    f = minimal_polynomial(xi, q)
    if d == m and all(c == 0 for c in f.coeffs[1:-1]):
        return ClassLabel("type_I", {"eta": restrict(xi**m, _small(q)).enc, "e": e})
    p, s = prime_power(q)
    for s0 in range(1, s + 1):
        if s % s0:
            continue
        q0, t = p**s0, s // s0
        if math.gcd(m, t) == 1 and q0**m > 4 and d == (q0**m - 1) // (q0 - 1) and e % (q0 - 1) == 0:
            return ClassLabel("type_II", {"q0": q0, "t": t, "k": n // (d * (q0 - 1))})
    # Golay elements and their extensions by GF(q)* share the q-order
    if (q, m, d) == (2, 11, 23):
        return ClassLabel("sporadic", {"name": "binary_golay"}, {"e": e})
    if (q, m, d) == (3, 5, 11):
        return ClassLabel("sporadic", {"name": "ternary_golay"}, {"e": e})
    return _unclassified("no known family matches")


# ---------------------------------------------------------------------------
# surveys


@dataclass
class SurveyRow:
    q: int
    m: int
    n: int
    d: int
    e: int
    count: int | None
    label: ClassLabel

    def to_record(self) -> dict:
        return {"q": self.q, "m": self.m, "n": self.n, "d": self.d, "e": self.e,
                "count": self.count, "label": str(self.label),
                "evidence": self.label.evidence}


def orders_of_degree(q: int, m: int) -> list[int]:
    """Orders n of elements of degree exactly m over GF(q)."""
    return [n for n in divisors(q**m - 1) if multiplicative_order(q, n) == m]


def _survey_row(args) -> SurveyRow | None:
    q, m, n, budget = args
    p, s = prime_power(q)
    E = make_field(p, s * m)
    xi = E.element_of_order(n)
    qo = degree_and_qorder(xi, q)
    try:
        witnesses = search_nonstandard(xi, q, budget)
    except BudgetError:
        return _survey_row_by_construction(q, m, n, qo, xi) or _survey_row_by_code(q, m, n, qo, xi)
    if not witnesses:
        return None
    if m == 2:
        label = classify_degree2(xi, q, budget, witnesses=witnesses)
    else:
        label = _heuristic_label(xi, q, qo)
        label.evidence.update(witness=witnesses[0].to_record())
    return SurveyRow(q, m, n, qo.d, qo.e, len(witnesses), label)


def _survey_row_by_construction(q, m, n, qo, xi) -> SurveyRow | None:
    """Fallback for type II shapes: build a witness of the same order.

    Elements of equal order generate the same cyclic subgroup, so the
    constructed L is a witness for the representative as well.
    """
    label = _heuristic_label(xi, q, qo)
    if label.kind != "type_II":
        return None
    w = construct_type_II(label.params["q0"], label.params["t"], m, label.params["k"])
    if w.n != n or w.L.field is not xi.field:
        return None
    mine = witness_from_qpoly(xi, q, w.L, tag="type_II")
    mine.verify()
    label.evidence.update(route="construction", witness=mine.to_record())
    return SurveyRow(q, m, n, qo.d, qo.e, None, label)


def _survey_row_by_code(q, m, n, qo, xi) -> SurveyRow | None:
    """Fallback for rows too large for direct search: the cyclic-code route."""
    from .codes import build_code, find_extra_automorphism, perm_to_qpoly

    try:
        C = build_code(n, q, [1])
        perm = find_extra_automorphism(C)
    except BudgetError as exc:
        return SurveyRow(q, m, n, qo.d, qo.e, None, _unclassified("search budget", error=str(exc)))
    if perm is None:
        return None
    w = witness_from_qpoly(C.xi, q, perm_to_qpoly(C, perm))
    label = _heuristic_label(xi, q, qo)
    label.evidence.update(route="code automorphism", perm=list(perm), witness=w.to_record())
    return SurveyRow(q, m, n, qo.d, qo.e, None, label)


def survey(q: int, m: int = 2, budget: int | None = None, workers: int = 1) -> list[SurveyRow]:
    """One representative per order n of degree m; nonstandard rows only, sorted by n."""
    jobs = [(q, m, n, budget) for n in orders_of_degree(q, m)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_survey_row, jobs))
    else:
        rows = [_survey_row(j) for j in jobs]
    return sorted((r for r in rows if r is not None), key=lambda r: r.n)


# ---------------------------------------------------------------------------
# reports


def report_header(command: str, params: dict, seed: int | None = None) -> dict:
    return {"command": command, "params": params, "version": __version__, "seed": seed}


def dumps_report(header: dict, records: list[dict], document: bool = False) -> str:
    """Line-oriented report (header comment, header record, one record per line) or one JSON document."""
    if document:
        return json.dumps({"format": "nonstd-report", "format_version": 1, "header": header,
                           "records": records}, sort_keys=True, indent=2) + "\n"
    lines = [REPORT_HEADER, json.dumps(header, sort_keys=True)]
    lines += [json.dumps(r, sort_keys=True) for r in records]
    return "\n".join(lines) + "\n"


def loads_report(text: str) -> tuple[dict, list[dict]]:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        if doc.get("format") != "nonstd-report" or doc.get("format_version") != 1:
            raise ValueError("unsupported report document")
        return doc["header"], doc["records"]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != REPORT_HEADER:
        raise ValueError("missing report header line")
    header = json.loads(lines[1])
    return header, [json.loads(ln) for ln in lines[2:]]
