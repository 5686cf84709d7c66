"""PGL(2, q) on GF(q) u {inf}, the Lambda/Gamma pair attached to a degree-2
witness, subgroup identification, and the companion-matrix orbit for general m."""

from __future__ import annotations

import math
from collections import Counter, deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .field import (
    GF,
    BudgetError,
    FieldElement,
    FieldError,
    coordinates,
    degree_and_qorder,
    factorize,
    home_field,
    make_field,
    minimal_polynomial,
    prime_power,
    restrict,
)
from .linearized import QPolynomial, evaluate, fixes_subgroup

CLOSURE_BUDGET = 10**6


class _Infinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (_infinity, ())


def _infinity():
    return INF


INF = _Infinity()


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ProjMatrix:
    """[[a, b], [c, d]] up to scalars, stored with its first nonzero entry equal to 1."""

    field: GF
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, F: GF, a, b, c, d) -> ProjMatrix:
        a, b, c, d = (F(x).enc for x in (a, b, c, d))
        return cls.from_encodings(F, a, b, c, d)

    @classmethod
    def from_encodings(cls, F: GF, a: int, b: int, c: int, d: int) -> ProjMatrix:
        if F.sub(F.mul(a, d), F.mul(b, c)) == 0:
            raise ValueError("singular matrix")
        lead = next(x for x in (a, b, c, d) if x)
        if lead != 1:
            s = F.inv(lead)
            a, b, c, d = F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s)
        return cls(F, a, b, c, d)

    @classmethod
    def identity(cls, F: GF) -> ProjMatrix:
        return cls(F, 1, 0, 0, 1)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def entries(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, x) for x in self.key)

    def __repr__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]@{self.field!r}"

    def __matmul__(self, other: ProjMatrix) -> ProjMatrix:
        F = self.field
        if other.field is not F:
            raise FieldError("mixed fields")
        a, b, c, d = self.key
        e, f, g, h = other.key
        m, add = F.mul, F.add
        return ProjMatrix.from_encodings(
            F,
            add(m(a, e), m(b, g)), add(m(a, f), m(b, h)),
            add(m(c, e), m(d, g)), add(m(c, f), m(d, h)),
        )

    __mul__ = __matmul__

    def inverse(self) -> ProjMatrix:
        F = self.field
        return ProjMatrix.from_encodings(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def det(self) -> FieldElement:
        F = self.field
        return FieldElement(F, F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c)))

    def trace(self) -> FieldElement:
        return FieldElement(self.field, self.field.add(self.a, self.d))

    def is_identity(self) -> bool:
        return self.key == (1, 0, 0, 1)

    def __pow__(self, k: int) -> ProjMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = ProjMatrix.identity(self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x @ self
            k += 1
        return k

    def apply(self, x):
        """x -> (a x + b) / (c x + d) on GF(q) u {inf}."""
        F = self.field
        if x is INF:
            num, den = self.a, self.c
        else:
            xe = F(x).enc
            num = F.add(F.mul(self.a, xe), self.b)
            den = F.add(F.mul(self.c, xe), self.d)
        if den == 0:
            return INF
        return FieldElement(F, F.div(num, den))

    def fixed_points(self) -> list:
        F = self.field
        pts = [INF] if self.c == 0 else []
        pts += [x for x in F.elements() if self.apply(x) == x]
        return pts


def three_point_map(F: GF, p1, p2, p3) -> ProjMatrix:
    """The unique A in PGL(2, q) with A(p1) = inf, A(p2) = 0, A(p3) = 1."""

    def vec(x):
        return (1, 0) if x is INF else (F(x).enc, 1)

    (x1, y1), (x2, y2), (x3, y3) = vec(p1), vec(p2), vec(p3)
    # B = [alpha v1 | beta v2] sends inf, 0, 1 to p1, p2, p3 when alpha v1 + beta v2 = v3
    det = F.sub(F.mul(x1, y2), F.mul(x2, y1))
    if det == 0:
        raise ValueError("points are not distinct")
    alpha = F.div(F.sub(F.mul(x3, y2), F.mul(x2, y3)), det)
    beta = F.div(F.sub(F.mul(x1, y3), F.mul(x3, y1)), det)
    B = ProjMatrix.from_encodings(F, F.mul(alpha, x1), F.mul(beta, x2), F.mul(alpha, y1), F.mul(beta, y2))
    return B.inverse()


# ---------------------------------------------------------------------------
# Lambda and Gamma


@dataclass(frozen=True)
class LambdaGamma:
    Lam: ProjMatrix
    Gam: ProjMatrix
    lam: FieldElement
    nu: FieldElement
    omega_t: FieldElement
    sigma1: FieldElement
    sigma0: FieldElement
    omega: FieldElement


def setup_lambda_gamma(xi: FieldElement, L: QPolynomial) -> LambdaGamma:
    """lam = s0/s1^2, omega~ = omega/s1 where L(xi) = omega + nu xi and f = x^2 - s1 x - s0."""
    q = L.q
    xi = home_field(xi, q)
    E = xi.field
    if L.field is not E:
        raise FieldError("L and xi live in different fields")
    if L.m != 2:
        raise ValueError("setup_lambda_gamma needs degree 2")
    if evaluate(L, E.one) != 1:
        raise ValueError("L must be normalised to L(1) = 1")
    p, s = prime_power(q)
    K = make_field(p, s)
    xq = xi**q
    s1 = xi + xq
    s0 = -(xi * xq)
    if s1.enc == 0:
        raise ValueError("sigma_1 = 0: q-order 2, handled by the type I route")
    omega, nu = coordinates(evaluate(L, xi), [E.one, xi], q)
    s1k, s0k = restrict(s1, K), restrict(s0, K)
    omega_k, nu_k = restrict(omega, K), restrict(nu, K)
    lam = s0k / (s1k * s1k)
    om_t = omega_k / s1k
    Lam = ProjMatrix.of(K, 0, lam, 1, 1)
    Gam = ProjMatrix.of(K, 1, om_t, 0, nu_k)
    return LambdaGamma(Lam, Gam, lam, nu_k, om_t, s1k, s0k, omega_k)


def f_sequence(lam: FieldElement, k: int) -> FieldElement:
    """F_0 = 0, F_1 = 1, F_{k+2} = F_{k+1} + lam F_k (F_{-1} = 1/lam)."""
    if lam.enc == 0:
        raise ValueError("lambda must be nonzero")
    F = lam.field
    if k == -1:
        return lam.inverse()
    if k < -1:
        raise ValueError("index must be >= -1")
    a, b = F.zero, F.one
    for _ in range(k):
        a, b = b, b + lam * a
    return a


def lambda_power_closed_form(lam: FieldElement, k: int) -> ProjMatrix:
    F = lam.field
    return ProjMatrix.of(F, lam * f_sequence(lam, k - 1), lam * f_sequence(lam, k),
                         f_sequence(lam, k), f_sequence(lam, k + 1))


def gamma_power_closed_form(nu: FieldElement, omega_t: FieldElement, k: int) -> ProjMatrix:
    F = nu.field
    geo = F.zero
    x = F.one
    for _ in range(k):
        geo = geo + x
        x = x * nu
    return ProjMatrix.of(F, 1, omega_t * geo, 0, nu**k)


# ---------------------------------------------------------------------------
# orbits and closures


def orbit(generators: Sequence[ProjMatrix], start) -> list:
    """Closure of {start} under the generators, in breadth-first order."""
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = g.apply(x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def all_orbits(generators: Sequence[ProjMatrix], F: GF) -> list[list]:
    points = [INF] + list(F.elements())
    done: set = set()
    out = []
    for x in points:
        if x not in done:
            orb = orbit(generators, x)
            done.update(orb)
            out.append(orb)
    return out


@dataclass
class GroupClosure:
    generators: list[ProjMatrix]
    elements: list[ProjMatrix]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def field(self) -> GF:
        return self.elements[0].field

    def keys(self) -> set[tuple[int, int, int, int]]:
        return {g.key for g in self.elements}


def group_closure(generators: Sequence[ProjMatrix], budget: int = CLOSURE_BUDGET) -> GroupClosure:
    if not generators:
        raise ValueError("need at least one generator")
    F = generators[0].field
    ident = ProjMatrix.identity(F)
    seen = {ident.key}
    elems = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x @ g
            if y.key not in seen:
                seen.add(y.key)
                elems.append(y)
                queue.append(y)
                if len(elems) > budget:
                    raise BudgetError(f"closure exceeds {budget} elements")
    return GroupClosure(list(generators), elems)


# ---------------------------------------------------------------------------
# vectorised element data over a closure


def _arrays(G: GroupClosure) -> tuple[np.ndarray, ...]:
    keys = np.array([g.key for g in G.elements], dtype=np.int64)
    return keys[:, 0], keys[:, 1], keys[:, 2], keys[:, 3]


def element_orders(G: GroupClosure) -> np.ndarray:
    """Projective orders of all elements, by vectorised repeated multiplication."""
    F = G.field
    M, A = F.mul_table, F.add_table
    a0, b0, c0, d0 = _arrays(G)
    a, b, c, d = a0.copy(), b0.copy(), c0.copy(), d0.copy()
    orders = np.zeros(len(a), dtype=np.int64)
    k = 1
    limit = F.order + 1
    while True:
        scalar = (b == 0) & (c == 0) & (a == d) & (orders == 0)
        orders[scalar] = k
        if (orders > 0).all():
            return orders
        if k > limit:  # pragma: no cover
            raise AssertionError("element order exceeds q + 1")
        a, b, c, d = (A[M[a, a0], M[b, c0]], A[M[a, b0], M[b, d0]],
                      A[M[c, a0], M[d, c0]], A[M[c, b0], M[d, d0]])
        k += 1


def fixed_point_counts(G: GroupClosure) -> np.ndarray:
    """Number of fixed points on GF(q) u {inf}: roots of c x^2 + (d - a) x - b, plus inf when c = 0."""
    F = G.field
    M, A = F.mul_table, F.add_table
    neg = np.array([F.neg(x) for x in range(F.order)], dtype=np.int64)
    a, b, c, d = _arrays(G)
    lin = A[d, neg[a]]
    cst = neg[b]
    counts = (c == 0).astype(np.int64)
    for x in range(F.order):
        val = A[A[M[c, M[x, x]], M[lin, x]], cst]
        counts += val == 0
    return counts


def trichotomy_violations(G: GroupClosure) -> list[tuple[ProjMatrix, int, int]]:
    """Non-identity elements breaking: f=1, k=p or f=2, k | q-1 or f=0, k | q+1."""
    F = G.field
    q, p = F.order, F.p
    orders = element_orders(G)
    fixed = fixed_point_counts(G)
    bad = []
    for g, k, f in zip(G.elements, orders.tolist(), fixed.tolist()):
        if k == 1:
            if f != q + 1:
                bad.append((g, k, f))
            continue
        ok = (f == 1 and k == p) or (f == 2 and (q - 1) % k == 0) or (f == 0 and (q + 1) % k == 0)
        if not ok:
            bad.append((g, k, f))
    return bad


# ---------------------------------------------------------------------------
# subfield tests


def subfield_membership(M, q0: int) -> FieldElement | None:
    """phi with M^(q0) = phi M (entrywise q0-th powers), or None.

    ``M`` is a ProjMatrix or a raw 4-tuple (a, b, c, d) of FieldElements;
    the raw form keeps the scaling, so phi need not be 1.
    """
    if isinstance(M, ProjMatrix):
        F, ent = M.field, M.key
    else:
        ent_el = tuple(M)
        F = ent_el[0].field
        ent = tuple(F(x).enc for x in ent_el)
    p, s = prime_power(q0)
    if p != F.p or F.r % s:
        raise FieldError(f"GF({q0}) is not a subfield of {F!r}")
    powered = [F.pow(x, q0) for x in ent]
    i = next(i for i, x in enumerate(ent) if x)
    phi = F.div(powered[i], ent[i])
    if all(y == F.mul(phi, x) for x, y in zip(ent, powered)):
        return FieldElement(F, phi)
    return None


def trace_det_test(M: ProjMatrix, q0: int) -> bool:
    """Tr(M) = 0 or Tr(M)^{2(q0-1)} = det(M)^{q0-1}."""
    p, s = prime_power(q0)
    F = M.field
    if p != F.p or F.r % s:
        raise FieldError(f"GF({q0}) is not a subfield of {F!r}")
    tr, det = M.trace(), M.det()
    return tr.enc == 0 or tr ** (2 * (q0 - 1)) == det ** (q0 - 1)


# ---------------------------------------------------------------------------
# identification


@dataclass(frozen=True)
class SubgroupLabel:
    kind: str  # cyclic, dihedral, elem_abelian, semidirect, A4, S4, A5, PSL, PGL
    order: int
    q0: int | None = None
    conjugator: ProjMatrix | None = None

    def __str__(self) -> str:
        if self.kind in ("PSL", "PGL"):
            return f"{self.kind}(2,{self.q0})"
        if self.kind in ("A4", "S4", "A5"):
            return self.kind
        if self.kind == "semidirect":
            return f"semidirect({self.q0},{self.order // self.q0})"
        return f"{self.kind}({self.order})"


def _subfield_orders(F: GF) -> list[int]:
    return [F.p**s for s in range(1, F.r + 1) if F.r % s == 0]


def _pgl_census(G: GroupClosure, q0: int) -> ProjMatrix | None:
    """A conjugator sending a size-(q0+1) orbit to GF(q0) u {inf} and G into PGL(2, q0)."""
    F = G.field
    for orb in all_orbits(G.generators, F):
        if len(orb) != q0 + 1:
            continue
        A = three_point_map(F, orb[0], orb[1], orb[2])
        Ainv = A.inverse()
        if all(subfield_membership(A @ g @ Ainv, q0) is not None for g in G.elements):
            return A
    return None


def identify_subgroup(G: GroupClosure, q: int | None = None) -> SubgroupLabel:
    F = G.field
    if q is not None and q != F.order:
        raise FieldError(f"closure lives in {F!r}, not GF({q})")
    p, q = F.p, F.order
    N = G.order
    if N == 1:
        return SubgroupLabel("cyclic", 1)
    orders = element_orders(G)
    hist = Counter(orders.tolist())
    gens = G.generators
    abelian = all((x @ y).key == (y @ x).key for x in gens for y in gens)
    if hist.get(N):
        return SubgroupLabel("cyclic", N)
    if abelian:
        if all(k in (1, p) for k in hist) and len(factorize(N)) == 1 and factorize(N)[0][0] == p:
            return SubgroupLabel("elem_abelian", N)
        if N == 4 and set(hist) == {1, 2}:
            return SubgroupLabel("dihedral", 4)
        raise AssertionError(f"unrecognised abelian subgroup of order {N}")
    if N % 2 == 0 and hist.get(N // 2):
        k = N // 2
        g = G.elements[int(np.flatnonzero(orders == k)[0])]
        cyc = set()
        x = ProjMatrix.identity(F)
        for _ in range(k):
            cyc.add(x.key)
            x = x @ g
        outside = [o for h, o in zip(G.elements, orders.tolist()) if h.key not in cyc]
        if all(o == 2 for o in outside):
            return SubgroupLabel("dihedral", N)
    for q0 in _subfield_orders(F):
        if q0 < 3:
            continue
        full = q0 * (q0 * q0 - 1)
        if N == full:
            A = _pgl_census(G, q0)
            if A is not None:
                return SubgroupLabel("PGL", N, q0, A)
        if q0 % 2 and N == full // 2:
            A = _pgl_census(G, q0)
            if A is not None:
                return SubgroupLabel("PSL", N, q0, A)
    shapes = {
        "A4": {1: 1, 2: 3, 3: 8},
        "S4": {1: 1, 2: 9, 3: 8, 4: 6},
        "A5": {1: 1, 2: 15, 3: 20, 5: 24},
    }
    for name, shape in shapes.items():
        if dict(hist) == shape:
            return SubgroupLabel(name, N)
    pk = p ** dict(factorize(N)).get(p, 0)
    ell = N // pk
    p_elems = sum(v for k, v in hist.items() if k in (1, p))
    if pk > 1 and p_elems == pk and (q - 1) % ell == 0 and (pk - 1) % ell == 0:
        return SubgroupLabel("semidirect", N, pk)
    raise AssertionError(f"subgroup of order {N} matches no class (orders {dict(hist)})")


# ---------------------------------------------------------------------------
# general m: companion matrix orbit


def companion_matrix(xi: FieldElement, q: int) -> list[list[int]]:
    """T_f over GF(q) (encodings): multiplication by xi in the basis 1, xi, ..., xi^{m-1}."""
    p, s = prime_power(q)
    K = make_field(p, s)
    f = minimal_polynomial(xi, q).coeffs
    m = len(f) - 1
    T = [[0] * m for _ in range(m)]
    for i in range(1, m):
        T[i][i - 1] = 1
    for i in range(m):
        T[i][m - 1] = restrict(FieldElement(xi.field, xi.field.neg(f[i])), K).enc
    return T


def qpoly_matrix(xi: FieldElement, L: QPolynomial) -> list[list[int]]:
    """Matrix of L over GF(q) in the basis 1, xi, ..., xi^{m-1} (column j = coordinates of L(xi^j))."""
    q = L.q
    p, s = prime_power(q)
    K = make_field(p, s)
    m = L.m
    basis = [xi**i for i in range(m)]
    cols = [[restrict(c, K).enc for c in coordinates(evaluate(L, b), basis, q)] for b in basis]
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def _matvec(K: GF, A: list[list[int]], v: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = K.add(acc, K.mul(a, x))
        out.append(acc)
    return tuple(out)


def _normalise(K: GF, v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    if lead == 1:
        return v
    s = K.inv(lead)
    return tuple(K.mul(x, s) for x in v)


def companion_orbit(xi: FieldElement, L: QPolynomial) -> int:
    """Size of the orbit of the point <1> of PG(m-1, q) under <T_f, L>."""
    q = L.q
    xi = home_field(xi, q)
    if L.field is not xi.field:
        raise FieldError("L and xi live in different fields")
    if not fixes_subgroup(L, xi):
        raise ValueError("L does not fix <xi>")
    p, s = prime_power(q)
    K = make_field(p, s)
    qo = degree_and_qorder(xi, q)
    T = companion_matrix(xi, q)
    Lm = qpoly_matrix(xi, L)
    m = qo.m
    start = (1,) + (0,) * (m - 1)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for A in (T, Lm):
            w = _normalise(K, _matvec(K, A, v))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    # T^d = eta I
    eta = restrict(xi**qo.d, K).enc
    Td = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for _ in range(qo.d):
        Td = [list(_matvec(K, T, tuple(Td[i][j] for i in range(m)))) for j in range(m)]
        Td = [[Td[j][i] for j in range(m)] for i in range(m)]
    assert all(Td[i][j] == (eta if i == j else 0) for i in range(m) for j in range(m)), "T^d != eta I"
    assert len(seen) == qo.d, (len(seen), qo.d)
    return len(seen)


def projective_order(M: ProjMatrix) -> int:
    return M.order()


def lcm_orders(G: GroupClosure) -> int:
    return math.lcm(*element_orders(G).tolist())
