"""q-polynomials L(x) = sum L_i x^{q^i} and the nonstandard-witness search."""

from __future__ import annotations

import math
import os
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import (
    GF,
    BudgetError,
    FieldElement,
    FieldError,
    coordinates,
    degree_and_qorder,
    home_field,
    matrix_rank,
    minimal_polynomial,
    prime_power,
    solve_linear,
)

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """Search budget; the NONSTD_BUDGET environment variable overrides it."""
    env = os.environ.get("NONSTD_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class QPolynomial:
    """L(x) = coeffs[0] x + coeffs[1] x^q + ... over ``field`` = GF(q^m)."""

    field: GF
    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p, s = prime_power(self.q)
        if p != self.field.p or self.field.r != s * len(self.coeffs):
            raise FieldError(f"coefficient field of a {self.q}-polynomial of q-degree "
                             f"{len(self.coeffs)} must be GF({self.q}^{len(self.coeffs)})")
        if not any(self.coeffs):
            raise ValueError("the zero map is not a q-polynomial")

    @classmethod
    def from_elements(cls, q: int, coeffs: Sequence[FieldElement]) -> QPolynomial:
        F = coeffs[0].field
        return cls(F, q, tuple(F(c).enc for c in coeffs))

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: FieldElement) -> FieldElement:
        return evaluate(self, x)

    def scaled(self, c: FieldElement) -> QPolynomial:
        F = self.field
        return QPolynomial(F, self.q, tuple(F.mul(F(c).enc, a) for a in self.coeffs))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def evaluate(L: QPolynomial, x: FieldElement) -> FieldElement:
    F = L.field
    if x.field is not F:
        raise FieldError(f"cannot evaluate a polynomial over {F!r} at an element of {x.field!r}")
    acc = 0
    y = x.enc
    for c in L.coeffs:
        if c:
            acc = F.add(acc, F.mul(c, y))
        y = F.pow(y, L.q)
    return FieldElement(F, acc)


def qpoly_from_images(xi: FieldElement, q: int, images: Sequence[FieldElement]) -> QPolynomial:
    """The unique L with L(xi^j) = images[j] for j < m.

    Solves the Vandermonde system sum_i L_i (xi^j)^{q^i} = images[j] in the
    conjugates xi^{q^i}; xi must have degree m = len(images) and live in
    GF(q^m).
    """
    F = xi.field
    m = len(images)
    A = [[F.pow(F.pow(xi.enc, q**i), j) for i in range(m)] for j in range(m)]
    try:
        sol = solve_linear(F, A, [F(y).enc for y in images])
    except ZeroDivisionError:
        raise AssertionError(f"{xi!r} does not have degree {m} over GF({q})") from None
    return QPolynomial(F, q, tuple(sol))


def _power_basis(L: QPolynomial) -> list[FieldElement]:
    g = L.field.gen
    return [g**i for i in range(L.m)]


def matrix_over_basis(L: QPolynomial, basis: Sequence[FieldElement]) -> list[list[FieldElement]]:
    """m x m matrix of L over GF(q); column j holds the coordinates of L(b_j)."""
    cols = [coordinates(evaluate(L, b), basis, L.q) for b in basis]
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def is_nonsingular(L: QPolynomial) -> bool:
    basis = _power_basis(L)
    M = matrix_over_basis(L, basis)
    return matrix_rank(L.field, [[c.enc for c in row] for row in M]) == L.m


def is_standard(L: QPolynomial) -> tuple[FieldElement, int] | None:
    """(c, j) when L(x) = c x^{q^j}, else None."""
    nz = [(j, c) for j, c in enumerate(L.coeffs) if c]
    if len(nz) != 1:
        return None
    j, c = nz[0]
    return FieldElement(L.field, c), j


def subgroup_members(xi: FieldElement) -> bytearray:
    """Membership bitmap of <xi> over canonical encodings."""
    F = xi.field
    bitmap = bytearray(F.order)
    y = 1
    while True:
        bitmap[y] = 1
        y = F.mul(y, xi.enc)
        if y == 1:
            return bitmap


def fixes_subgroup(L: QPolynomial, xi: FieldElement) -> bool:
    F = L.field
    if xi.field is not F:
        raise FieldError("polynomial and element live in different fields")
    if xi.enc == 0:
        raise ValueError("xi must be nonzero")
    members = subgroup_members(xi)
    seen = bytearray(F.order)
    count = 0
    y = 1
    while True:
        v = evaluate(L, FieldElement(F, y)).enc
        if not members[v] or seen[v]:
            return False
        seen[v] = 1
        count += 1
        y = F.mul(y, xi.enc)
        if y == 1:
            return True


def induced_permutation(L: QPolynomial, xi: FieldElement) -> tuple[int, ...]:
    """pi with L(xi^j) = xi^{pi(j)} for 0 <= j < ord(xi)."""
    F = xi.field
    expo = {}
    y = 1
    k = 0
    while True:
        expo[y] = k
        y = F.mul(y, xi.enc)
        k += 1
        if y == 1:
            break
    n = k
    perm = []
    y = 1
    for _ in range(n):
        v = evaluate(L, FieldElement(F, y)).enc
        if v not in expo:
            raise ValueError("L does not map <xi> into itself")
        perm.append(expo[v])
        y = F.mul(y, xi.enc)
    if len(set(perm)) != n:
        raise ValueError("L is not injective on <xi>")
    return tuple(perm)


@dataclass
class NonstandardWitness:
    """A certified (xi, L, induced permutation) triple, with L(1) = 1."""

    xi: FieldElement
    q: int
    m: int
    n: int
    d: int
    L: QPolynomial
    perm: tuple[int, ...]
    tag: str = "unclassified"
    evidence: dict = dc_field(default_factory=dict)

    @property
    def images(self) -> list[FieldElement]:
        """L(1), L(xi), ..., L(xi^{m-1})."""
        return [evaluate(self.L, self.xi**i) for i in range(self.m)]

    def verify(self) -> None:
        """Re-check every invariant; raises AssertionError on failure."""
        assert self.L.field is self.xi.field
        assert evaluate(self.L, self.xi.field.one) == 1, "L(1) != 1"
        assert is_standard(self.L) is None, "L is standard"
        assert fixes_subgroup(self.L, self.xi), "L does not fix <xi>"
        assert induced_permutation(self.L, self.xi) == self.perm
        assert self.perm[0] == 0
        qo = degree_and_qorder(self.xi, self.q)
        assert (qo.m, qo.n, qo.d) == (self.m, self.n, self.d)

    def to_record(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "xi_enc": self.xi.enc,
            "L_images": [y.enc for y in self.images],
            "perm": list(self.perm),
            "tag": self.tag,
        }

    @classmethod
    def from_record(cls, rec: dict) -> NonstandardWitness:
        p, s = prime_power(rec["q"])
        from .field import make_field

        F = make_field(p, s * rec["m"])
        xi = F.elem(rec["xi_enc"])
        L = qpoly_from_images(xi, rec["q"], [F.elem(e) for e in rec["L_images"]])
        return cls(xi, rec["q"], rec["m"], rec["n"], rec["d"], L, tuple(rec["perm"]), rec["tag"])


def witness_from_qpoly(xi: FieldElement, q: int, L: QPolynomial, tag: str = "unclassified") -> NonstandardWitness:
    """Normalise L to L(1) = 1 and package it; raises if L is not a witness."""
    one = evaluate(L, xi.field.one)
    if one.enc == 0:
        raise ValueError("L(1) = 0")
    L = L.scaled(one.inverse())
    if is_standard(L) is not None:
        raise ValueError("L is standard")
    if not fixes_subgroup(L, xi):
        raise ValueError("L does not fix <xi>")
    qo = degree_and_qorder(xi, q)
    return NonstandardWitness(xi, q, qo.m, qo.n, qo.d, L, induced_permutation(L, xi), tag)


# ---------------------------------------------------------------------------
# exhaustive search


def power_coordinates(xi: FieldElement, q: int, n: int, m: int) -> list[list[int]]:
    """Coordinates c^(k) of xi^k in the basis 1, xi, ..., xi^{m-1}, k < n.

    Driven by the companion recurrence of the minimal polynomial.
    """
    F = xi.field
    f = minimal_polynomial(xi, q).coeffs  # monic, constant-first
    sigma = [F.neg(c) for c in f[:m]]
    c = [1] + [0] * (m - 1)
    out = []
    for _ in range(n):
        out.append(c)
        top = c[-1]
        c = [F.mul(sigma[0], top)] + [F.add(c[i - 1], F.mul(sigma[i], top)) for i in range(1, m)]
    return out


def _survivors(F: GF, coords_log: np.ndarray, stride: int, n: int, m: int,
               cand: np.ndarray) -> np.ndarray:
    """Filter candidate image-exponent tuples by L(xi^k) in <xi> for all k.

    ``cand`` has shape (B, m-1): exponents a_i with L(xi^i) = g^(stride*a_i).
    """
    N = F.N
    ylog = (cand * stride) % N
    alive = np.arange(len(cand))
    for k in range(m, n):
        row = coords_log[k]
        acc = np.full(len(alive), row[0], dtype=np.int64)
        for i in range(1, m):
            if row[i] != N:
                acc = F.vadd(acc, (ylog[alive, i - 1] + row[i]) % N)
        ok = (acc != N) & (acc % stride == 0)
        alive = alive[ok]
        if len(alive) == 0:
            break
    return cand[alive]


def search_nonstandard(xi: FieldElement, q: int, budget: int | None = None,
                       chunk: int = 1 << 15) -> list[NonstandardWitness]:
    """All normalised nonstandard L fixing <xi>, sorted by image-tuple encoding.

    Enumerates image tuples (L(xi), ..., L(xi^{m-1})) in <xi>^{m-1}; a
    candidate survives when every L(xi^k) lands in <xi> and the images of the
    basis are GF(q)-independent (then L is a bijection of <xi>).
    """
    xi = home_field(xi, q)
    F = xi.field
    F._need_tables()
    qo = degree_and_qorder(xi, q)
    m, n = qo.m, qo.n
    if m == 1:
        return []
    total = n ** (m - 1)
    budget = default_budget() if budget is None else budget
    if total > budget:
        raise BudgetError(f"{total} candidates exceed the search budget {budget}")
    N = F.N
    stride = N // n
    coords = power_coordinates(xi, q, n, m)
    coords_log = np.array([[N if c == 0 else F.log(c) for c in row] for row in coords], dtype=np.int64)

    found = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cand = np.stack(np.unravel_index(idx, (n,) * (m - 1)), axis=1).astype(np.int64)
        found.extend(map(tuple, _survivors(F, coords_log, stride, n, m, cand).tolist()))

    # exponent of xi^j as a power of g is j*u*stride; invert to read off pi
    u = F.log(xi.enc) // stride
    u_inv = pow(u, -1, n)
    standard = {tuple((i * q**j) % n for i in range(1, m)) for j in range(m)}
    witnesses = []
    for a in found:
        exps = [0] + [ai * u_inv % n for ai in a]
        if tuple(exps[1:]) in standard:
            continue
        basis_cols = [coords[e] for e in exps]
        if matrix_rank(F, basis_cols) < m:
            continue
        images = [FieldElement(F, F.pow(xi.enc, e)) for e in exps]
        L = qpoly_from_images(xi, q, images)
        assert is_standard(L) is None
        perm = _perm_from_coords(F, coords, exps, xi, n)
        witnesses.append(NonstandardWitness(xi, q, m, n, qo.d, L, perm))
    witnesses.sort(key=lambda w: tuple(y.enc for y in w.images[1:]))
    return witnesses


def _perm_from_coords(F: GF, coords, exps, xi: FieldElement, n: int) -> tuple[int, ...]:
    powers = [1]
    for _ in range(n - 1):
        powers.append(F.mul(powers[-1], xi.enc))
    expo = {v: k for k, v in enumerate(powers)}
    imgs = [powers[e] for e in exps]
    perm = []
    for c in coords:
        acc = 0
        for ci, y in zip(c, imgs):
            if ci:
                acc = F.add(acc, F.mul(ci, y))
        perm.append(expo[acc])
    assert len(set(perm)) == n
    return tuple(perm)


def is_nonstandard(xi: FieldElement, q: int, budget: int | None = None) -> bool:
    return bool(search_nonstandard(xi, q, budget))


def count_nonsingular_maps(q: int, m: int) -> int:
    """|GL(m, q)| = (q^m - 1)(q^m - q)...(q^m - q^{m-1})."""
    return math.prod(q**m - q**i for i in range(m))
