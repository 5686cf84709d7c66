"""Cyclic codes with defining zeros, permutation automorphisms, and the
bridge between automorphisms and q-polynomials fixing <xi>."""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .field import (
    GF,
    BudgetError,
    FieldElement,
    FieldError,
    Poly,
    coordinates,
    make_field,
    minimal_polynomial,
    multiplicative_order,
    prime_power,
    restrict,
)
from .linearized import (
    QPolynomial,
    evaluate,
    induced_permutation,
    qpoly_from_images,
)

CODEWORD_BUDGET = 1 << 24
NODE_BUDGET = 2_000_000


def cyclotomic_closure(zeros: Iterable[int], q: int, n: int) -> tuple[int, ...]:
    out = set()
    for z in zeros:
        y = z % n
        while y not in out:
            out.add(y)
            y = y * q % n
    return tuple(sorted(out))


@dataclass
class CyclicCode:
    """Length-n code over GF(q) with zeros xi^z, z in ``zeros`` (closed under z -> qz)."""

    n: int
    q: int
    zeros: tuple[int, ...]
    genpoly: Poly
    small: GF
    big: GF
    xi: FieldElement
    m: int

    @property
    def dim(self) -> int:
        return self.n - int(self.genpoly.degree)

    @property
    def reps(self) -> list[int]:
        """Smallest exponent of each cyclotomic orbit in ``zeros``."""
        seen, out = set(), []
        for z in self.zeros:
            if z not in seen:
                orb = cyclotomic_closure([z], self.q, self.n)
                seen.update(orb)
                out.append(min(orb))
        return out

    def describe(self) -> str:
        return f"{self.n} {self.q} zeros={','.join(map(str, self.zeros))}"


def build_code(n: int, q: int, zero_exponents: Iterable[int]) -> CyclicCode:
    p, s = prime_power(q)
    if n < 1:
        raise ValueError("length must be positive")
    if math.gcd(n, q) != 1:
        raise ValueError(f"length {n} is not coprime to q = {q}")
    zero_exponents = list(zero_exponents)
    for z in zero_exponents:
        if not 0 <= z < n:
            raise ValueError(f"zero exponent {z} out of range [0, {n})")
    m = multiplicative_order(q, n)
    small = make_field(p, s)
    big = make_field(p, s * m)
    xi = big.element_of_order(n)
    zeros = cyclotomic_closure(zero_exponents, q, n)
    g = Poly(big, (1,))
    code = CyclicCode(n, q, zeros, Poly(small, (1,)), small, big, xi, m)
    for z in code.reps:
        g = g * minimal_polynomial(xi**z, q)
    code.genpoly = g.map(lambda c: restrict(c, small), small)
    assert code.genpoly.degree == len(zeros) or (not zeros and code.genpoly.degree == 0)
    # generator and parity descriptions must agree
    assert all(contains(code, row) for row in generator_matrix(code))
    return code


def golay_binary() -> CyclicCode:
    return build_code(23, 2, [1])


def golay_ternary() -> CyclicCode:
    return build_code(11, 3, [1])


# ---------------------------------------------------------------------------
# matrices


def generator_matrix(C: CyclicCode) -> np.ndarray:
    """Rows x^i g(x) for i < dim, as encodings over GF(q)."""
    g = list(C.genpoly.coeffs)
    G = np.zeros((C.dim, C.n), dtype=np.int64)
    for i in range(C.dim):
        G[i, i:i + len(g)] = g
    return G


def parity_matrix(C: CyclicCode) -> np.ndarray:
    """H over GF(q) with c in C iff H c = 0.

    For each orbit representative z the map c -> c(xi^z) is GF(q)-linear into
    GF(q^m); its rows are the coordinates of xi^{zi} in the basis 1, g, ..., g^{m-1}.
    """
    big, small = C.big, C.small
    basis = [big.gen**k for k in range(C.m)]
    rows = []
    for z in C.reps:
        cols = []
        for i in range(C.n):
            coords = coordinates(C.xi ** (z * i), basis, C.q)
            cols.append([restrict(c, small).enc for c in coords])
        rows.extend(np.array(cols, dtype=np.int64).T.tolist())
    if not rows:
        return np.zeros((0, C.n), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def _parity(C: CyclicCode) -> np.ndarray:
    H = getattr(C, "_H", None)
    if H is None:
        H = parity_matrix(C)
        C._H = H
    return H


def contains(C: CyclicCode, word: Sequence[int]) -> bool:
    """Parity test c(xi^z) = 0 at every zero, evaluated in GF(q^m)."""
    if len(word) != C.n:
        raise ValueError("word length mismatch")
    big = C.big
    for z in C.reps:
        alpha = C.xi**z
        acc = big.zero
        x = big.one
        for c in word:
            c = int(c)
            if c:
                acc = acc + _lift(C, c) * x
            x = x * alpha
        if acc.enc:
            return False
    return True


def _lift(C: CyclicCode, enc: int) -> FieldElement:
    from .field import embed

    return embed(FieldElement(C.small, enc), C.big)


def _words_in_code(C: CyclicCode, words: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of ``words`` (shape (..., n)) lie in C."""
    H = _parity(C)
    if H.shape[0] == 0:
        return np.ones(words.shape[:-1], dtype=bool)
    syn = C.small.matmul(words, H.T)
    return ~syn.any(axis=-1)


def codewords(C: CyclicCode, budget: int = CODEWORD_BUDGET, chunk: int = 1 << 16):
    """Yield all codewords in chunks (arrays of shape (B, n))."""
    k = C.dim
    total = C.q**k
    if total > budget:
        raise BudgetError(f"{total} codewords exceed the enumeration budget {budget}")
    if k == 0:
        yield np.zeros((1, C.n), dtype=np.int64)
        return
    G = generator_matrix(C)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        msgs = np.stack(np.unravel_index(idx, (C.q,) * k), axis=1).astype(np.int64)
        yield C.small.matmul(msgs, G)


def weight_distribution(C: CyclicCode, budget: int = CODEWORD_BUDGET) -> list[int]:
    dist = np.zeros(C.n + 1, dtype=np.int64)
    for block in codewords(C, budget):
        dist += np.bincount((block != 0).sum(axis=1), minlength=C.n + 1)
    return dist.tolist()


def min_distance(C: CyclicCode, budget: int = CODEWORD_BUDGET) -> int:
    if C.dim == 0:
        raise ValueError("the zero code has no minimum distance")
    dist = weight_distribution(C, budget)
    return next(w for w in range(1, C.n + 1) if dist[w])


def min_weight_supports(C: CyclicCode, budget: int = CODEWORD_BUDGET) -> tuple[int, list[int]]:
    """(w, sorted distinct support bitmasks of the weight-w codewords)."""
    w = min_distance(C, budget)
    weights = 1 << np.arange(C.n, dtype=np.int64)
    masks = set()
    for block in codewords(C, budget):
        nz = block != 0
        sel = nz[nz.sum(axis=1) == w]
        masks.update((sel * weights).sum(axis=1).tolist())
    return w, sorted(masks)


# ---------------------------------------------------------------------------
# permutations


def _check_perm(C: CyclicCode, perm: Sequence[int]) -> tuple[int, ...]:
    perm = tuple(int(i) for i in perm)
    if len(perm) != C.n:
        raise ValueError(f"permutation length {len(perm)} != n = {C.n}")
    if sorted(perm) != list(range(C.n)):
        raise ValueError("not a permutation")
    return perm


def is_perm_automorphism(C: CyclicCode, perm: Sequence[int]) -> bool:
    """Every permuted generator row c^pi = (c_pi(0), ..., c_pi(n-1)) passes the parity test."""
    perm = _check_perm(C, perm)
    if C.dim == 0:
        return True
    G = generator_matrix(C)
    return bool(_words_in_code(C, G[:, list(perm)]).all())


def standard_group(n: int, q: int, m: int | None = None) -> set[tuple[int, ...]]:
    """The maps i -> q^a i + b mod n generated by the shift and the Frobenius."""
    mo = multiplicative_order(q % n, n) if n > 1 else 1
    if m is None:
        m = mo
    if m != mo:
        raise ValueError(f"m = {m} is not the order of {q} mod {n}")
    out = {tuple((pow(q, a, n) * i + b) % n for i in range(n)) for a in range(m) for b in range(n)}
    assert len(out) == m * n
    return out


def in_standard_group(perm: Sequence[int], q: int) -> bool:
    """Solve pi(i) = q^a i + b from pi(0), pi(1), then check every point."""
    n = len(perm)
    if n == 1:
        return True
    b = perm[0]
    s = (perm[1] - b) % n
    mo = multiplicative_order(q % n, n)
    if s not in {pow(q, a, n) for a in range(mo)}:
        return False
    return all(perm[i] == (s * i + b) % n for i in range(n))


def _exhaustive_extra(C: CyclicCode, batch: int = 5040) -> tuple[int, ...] | None:
    """Lex-first non-standard automorphism by scanning all of S_n."""
    n = C.n
    if C.dim == 0 or C.dim == n:
        # every permutation is an automorphism
        for perm in itertools.permutations(range(n)):
            if not in_standard_group(perm, C.q):
                return perm
        return None
    G = generator_matrix(C)
    it = itertools.permutations(range(n))
    while True:
        perms = np.array(list(itertools.islice(it, batch)), dtype=np.int64)
        if len(perms) == 0:
            return None
        ok = _words_in_code(C, G[:, perms].transpose(1, 0, 2)).all(axis=-1)
        for idx in np.flatnonzero(ok):
            perm = tuple(perms[idx].tolist())
            if not in_standard_group(perm, C.q):
                return perm


def all_automorphisms_small(C: CyclicCode) -> list[tuple[int, ...]]:
    """Every permutation automorphism, by brute force (n <= 8)."""
    if C.n > 8:
        raise BudgetError("brute-force automorphism listing is limited to n <= 8")
    G = generator_matrix(C)
    perms = np.array(list(itertools.permutations(range(C.n))), dtype=np.int64)
    if C.dim in (0, C.n):
        return [tuple(p) for p in perms.tolist()]
    ok = _words_in_code(C, G[:, perms].transpose(1, 0, 2)).all(axis=-1)
    return [tuple(p) for p in perms[ok].tolist()]


def coordinate_invariants(n: int, supports: Sequence[int]) -> list[tuple]:
    """Per coordinate: (#blocks through i, sorted #blocks through {i, j} for j != i)."""
    through = [[b for b in supports if b >> i & 1] for i in range(n)]
    inv = []
    for i in range(n):
        pair = sorted(sum(1 for b in through[i] if b >> j & 1) for j in range(n) if j != i)
        inv.append((len(through[i]), tuple(pair)))
    return inv


def _backtrack_extra(C: CyclicCode, node_budget: int) -> tuple[int, ...] | None:
    n = C.n
    _, supports = min_weight_supports(C)
    blocks = np.array(supports, dtype=np.int64)
    support_set = set(supports)
    inv = coordinate_invariants(n, supports)
    allowed = [[j for j in range(n) if inv[j] == inv[i]] for i in range(n)]
    bit = [1 << i for i in range(n)]
    # mapped[b]: image under pi of the trace of block b on the assigned domain
    # image[b]:  trace of block b on the assigned image range
    mapped = np.zeros(len(blocks), dtype=np.int64)
    image = np.zeros(len(blocks), dtype=np.int64)
    in_block = [(blocks >> i) & 1 == 1 for i in range(n)]
    perm = [-1] * n
    used = [False] * n
    nodes = 0

    def consistent() -> bool:
        return np.array_equal(np.sort(mapped), np.sort(image))

    def rec(k: int):
        nonlocal nodes, mapped, image
        if k == n:
            if in_standard_group(perm, C.q):
                return None
            imgs = set()
            for b in supports:
                imgs.add(sum(bit[perm[i]] for i in range(n) if b >> i & 1))
            if imgs == support_set and is_perm_automorphism(C, perm):
                return tuple(perm)
            return None
        for j in allowed[k]:
            if used[j]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise BudgetError(f"automorphism search exceeded {node_budget} nodes")
            old_m, old_i = mapped, image
            mapped = np.where(in_block[k], mapped | bit[j], mapped)
            image = np.where(in_block[j], image | bit[j], image)
            if consistent():
                perm[k], used[j] = j, True
                found = rec(k + 1)
                if found is not None:
                    return found
                perm[k], used[j] = -1, False
            mapped, image = old_m, old_i
        return None

    return rec(0)


def find_extra_automorphism(C: CyclicCode, node_budget: int = NODE_BUDGET) -> tuple[int, ...] | None:
    """Lexicographically smallest permutation automorphism outside the shift/Frobenius group.

    Exhaustive over S_n for n <= 8; otherwise backtracking over coordinate
    images, pruned by the multiset of minimum-weight supports traced on the
    assigned points.  None means the search space was exhausted.
    """
    if C.n <= 8:
        found = _exhaustive_extra(C)
    else:
        if C.dim == 0 or C.dim == C.n:
            return _exhaustive_extra(C)
        found = _backtrack_extra(C, node_budget)
    if found is not None:
        assert is_perm_automorphism(C, found)
        assert not in_standard_group(found, C.q)
    return found


# ---------------------------------------------------------------------------
# automorphism <-> q-polynomial


def _single_zero(C: CyclicCode) -> None:
    if set(C.zeros) != set(cyclotomic_closure([1], C.q, C.n)):
        raise ValueError("the bridge needs the code with the single defining zero xi")


def perm_to_qpoly(C: CyclicCode, perm: Sequence[int]) -> QPolynomial:
    """L with L(xi^j) = xi^{pi(j)} on the basis, checked on all of <xi>."""
    _single_zero(C)
    perm = _check_perm(C, perm)
    xi = C.xi
    L = qpoly_from_images(xi, C.q, [xi ** perm[j] for j in range(C.m)])
    for j in range(C.n):
        if evaluate(L, xi**j) != xi ** perm[j]:
            raise ValueError("permutation is not an automorphism of the code")
    return L


def qpoly_to_perm(C: CyclicCode, L: QPolynomial) -> tuple[int, ...]:
    _single_zero(C)
    if L.field is not C.big:
        raise FieldError("q-polynomial over the wrong field")
    return induced_permutation(L, C.xi)


# ---------------------------------------------------------------------------
# text format and sphere packing


_LINE = re.compile(r"^\s*(\d+)\s+(\d+)\s+zeros=([\d,]*)(?:\s+perm=\[([\d,\s]*)\])?\s*$")


def format_code_line(C: CyclicCode, perm: Sequence[int] | None = None) -> str:
    line = C.describe()
    if perm is not None:
        line += " perm=[" + ",".join(map(str, perm)) + "]"
    return line


def parse_code_line(line: str) -> tuple[int, int, list[int], list[int] | None]:
    mt = _LINE.match(line)
    if not mt:
        raise ValueError(f"cannot parse code description {line!r}")
    n, q = int(mt.group(1)), int(mt.group(2))
    zeros = [int(z) for z in mt.group(3).split(",") if z]
    perm = None
    if mt.group(4) is not None:
        perm = [int(z) for z in mt.group(4).split(",") if z.strip()]
    return n, q, zeros, perm


def sphere_size(n: int, q: int, t: int) -> int:
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))


def is_perfect(n: int, k: int, q: int, t: int) -> bool:
    return sphere_size(n, q, t) * q**k == q**n
