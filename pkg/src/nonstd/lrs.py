"""Linear recurring sequences u_k = s_{m-1} u_{k-1} + ... + s_0 u_{k-m}."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .field import (
    GF,
    FieldElement,
    FieldError,
    Poly,
    embed,
    make_field,
    minimal_polynomial,
    prime_power,
    restrict,
)
from .linearized import QPolynomial, evaluate, qpoly_from_images


@dataclass(frozen=True)
class Recurrence:
    """Recurrence over GF(q) = ``field`` with characteristic polynomial f.

    f(x) = x^m - s_{m-1} x^{m-1} - ... - s_0, stored as a monic Poly.
    """

    field: GF
    charpoly: Poly

    def __post_init__(self):
        f = self.charpoly
        if f.field is not self.field:
            raise FieldError("characteristic polynomial over the wrong field")
        if f.degree < 1 or f.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic of degree >= 1")
        if f.coeffs[0] == 0:
            raise ValueError("constant coefficient s_0 must be nonzero")

    @classmethod
    def from_sigma(cls, field: GF, sigma: Sequence) -> Recurrence:
        """From (s_0, ..., s_{m-1}) as FieldElements or ints."""
        coeffs = tuple(field.neg(field(s).enc) for s in sigma) + (1,)
        return cls(field, Poly(field, coeffs))

    @classmethod
    def of_element(cls, xi: FieldElement, q: int) -> Recurrence:
        """The recurrence whose characteristic polynomial is xi's minimal polynomial over GF(q)."""
        p, s = prime_power(q)
        small = make_field(p, s)
        f = minimal_polynomial(xi, q).map(lambda c: restrict(c, small), small)
        return cls(small, f)

    @property
    def m(self) -> int:
        return int(self.charpoly.degree)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def sigma(self) -> list[int]:
        F = self.field
        return [F.neg(c) for c in self.charpoly.coeffs[:-1]]


def _sigma_in(rec: Recurrence, E: GF) -> list[int]:
    if E is rec.field:
        return rec.sigma
    if E.p != rec.field.p or E.r % rec.field.r:
        raise FieldError(f"{E!r} does not contain {rec.field!r}")
    return [embed(FieldElement(rec.field, s), E).enc for s in rec.sigma]


def _common_field(init: Sequence[FieldElement]) -> GF:
    fields = {id(x.field): x.field for x in init}
    if len(fields) != 1:
        raise FieldError("initial values from mixed fields")
    return next(iter(fields.values()))


def generate(rec: Recurrence, init: Sequence[FieldElement], count: int) -> list[FieldElement]:
    m = rec.m
    if len(init) != m:
        raise ValueError(f"need {m} initial values")
    if count < m:
        raise ValueError("count must be at least m")
    E = _common_field(init)
    sigma = _sigma_in(rec, E)
    u = [x.enc for x in init]
    while len(u) < count:
        acc = 0
        k = len(u)
        for i, s in enumerate(sigma):
            if s:
                acc = E.add(acc, E.mul(s, u[k - m + i]))
        u.append(acc)
    return [FieldElement(E, v) for v in u]


def _step(E: GF, sigma: list[int], state: tuple[int, ...]) -> tuple[int, ...]:
    acc = 0
    for s, v in zip(sigma, state):
        if s and v:
            acc = E.add(acc, E.mul(s, v))
    return state[1:] + (acc,)


def charpoly_order(rec: Recurrence) -> int:
    """ord(f): least N with f | x^N - 1, found by iterating x^k mod f."""
    F = rec.field
    m = rec.m
    f = rec.charpoly.coeffs
    # x^k mod f as a length-m coefficient vector; multiply by x each step
    one = (1,) + (0,) * (m - 1)
    v = one
    k = 0
    limit = F.order**m
    while True:
        top = v[-1]
        shifted = (0,) + v[:-1]
        v = tuple(F.sub(shifted[i], F.mul(top, f[i])) for i in range(m))
        k += 1
        if v == one:
            return k
        if k > limit:  # pragma: no cover
            raise AssertionError("charpoly order not found")


def period(rec: Recurrence, init: Sequence[FieldElement]) -> int:
    """Smallest period of the sequence, by cycle detection on the state.

    The state map is invertible (s_0 != 0), so the orbit of the initial state
    is a pure cycle.
    """
    if len(init) != rec.m:
        raise ValueError(f"need {rec.m} initial values")
    if all(x.enc == 0 for x in init):
        raise ValueError("period of the all-zero sequence is not defined here")
    E = _common_field(init)
    sigma = _sigma_in(rec, E)
    start = tuple(x.enc for x in init)
    state = _step(E, sigma, start)
    k = 1
    while state != start:
        state = _step(E, sigma, state)
        k += 1
    assert charpoly_order(rec) % k == 0, "period does not divide ord(f)"
    return k


def restricted_period(rec: Recurrence) -> tuple[int, FieldElement]:
    """First return of the impulse state (0,...,0,1) to (0,...,0,lam), lam != 0."""
    F = rec.field
    sigma = rec.sigma
    state = (0,) * (rec.m - 1) + (1,)
    k = 0
    while True:
        state = _step(F, sigma, state)
        k += 1
        if not any(state[:-1]):
            return k, FieldElement(F, state[-1])


def qpoly_from_initials(rec: Recurrence, xi: FieldElement, init: Sequence[FieldElement]) -> QPolynomial:
    """The q-polynomial L with u_k = L(xi^k) for the sequence started at ``init``."""
    E = xi.field
    m = rec.m
    f_big = Poly(E, tuple(_sigma_in_poly(rec, E)))
    if f_big(xi).enc != 0:
        raise ValueError("xi is not a root of the characteristic polynomial")
    if any(x.field is not E for x in init):
        raise FieldError("initial values must live in the field of xi")
    L = qpoly_from_images(xi, rec.q, init)
    seq = generate(rec, init, 2 * m)
    for k in range(2 * m):
        assert evaluate(L, xi**k) == seq[k], "recovered q-polynomial disagrees with the sequence"
    return L


def _sigma_in_poly(rec: Recurrence, E: GF) -> list[int]:
    if E is rec.field:
        return list(rec.charpoly.coeffs)
    return [embed(FieldElement(rec.field, c), E).enc for c in rec.charpoly.coeffs]
