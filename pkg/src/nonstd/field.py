"""Exact arithmetic in GF(p^r).

Elements are stored by their canonical integer encoding: the polynomial-basis
coordinates (c_0, ..., c_{r-1}) read as a little-endian base-p integer
enc = sum c_i p^i.  All tie-breaking and output ordering uses this encoding.

Fields up to TABLE_LIMIT elements carry exp/log/Zech tables, which makes
every operation O(1) and enables the vectorised log-domain helpers
(``vmul``/``vadd``) used by the search kernels.  Larger fields (up to
SIZE_CAP) fall back to plain polynomial arithmetic; operations that need
discrete logarithms raise on them.
"""

from __future__ import annotations

import functools
import math
import threading
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

SIZE_CAP = 1 << 32
TABLE_LIMIT = 1 << 17


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


class BudgetError(RuntimeError):
    """A search or enumeration would exceed its configured budget."""


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@functools.lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation by trial division, as ((prime, exponent), ...)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, e in factorize(n):
        divs = [d * prime**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p**s, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    return fac[0]


def multiplicative_order(a: int, n: int) -> int:
    """Smallest t >= 1 with a**t = 1 mod n (n >= 1, gcd(a, n) = 1)."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible mod {n}")
    t, x = 1, a % n
    while x != 1:
        x = x * a % n
        t += 1
    return t


# ---------------------------------------------------------------------------
# polynomials over GF(p) as constant-first coefficient lists


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm])


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [c * inv % p for c in b]
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _is_irreducible_modp(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over GF(p)."""
    r = len(f) - 1
    if r == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**r, f, p), x, p):
        return False
    for ell, _ in factorize(r):
        h = _psub(_ppowmod(x, p ** (r // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _digits(enc: int, p: int, r: int) -> list[int]:
    out = []
    for _ in range(r):
        enc, c = divmod(enc, p)
        out.append(c)
    return out


def _undigits(coeffs: Sequence[int], p: int) -> int:
    enc = 0
    for c in reversed(coeffs):
        enc = enc * p + c
    return enc


# ---------------------------------------------------------------------------
# fields


class GF:
    """The field GF(p^r) in a fixed polynomial basis.

    Use :func:`make_field`; it caches, so equal parameters give the same
    object.  Arithmetic methods act on integer encodings.
    """

    def __init__(self, p: int, r: int, modulus: Sequence[int]):
        self.p = p
        self.r = r
        self.order = p**r
        self.N = self.order - 1
        self.modulus = tuple(modulus)
        self.has_tables = self.order <= TABLE_LIMIT
        self.primitive = self._find_primitive()
        if self.has_tables:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})"

    def __reduce__(self):
        return (make_field, (self.p, self.r))

    # -- construction helpers --------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.r == 1:
            return a * b % self.p
        prod = _pmul(_digits(a, self.p, self.r), _digits(b, self.p, self.r), self.p)
        return _undigits(_pmod(prod, self.modulus, self.p), self.p)

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _find_primitive(self) -> int:
        if self.N == 1:
            return 1
        factors = [ell for ell, _ in factorize(self.N)]
        for g in range(2, self.order):
            if all(self._pow_slow(g, self.N // ell) != 1 for ell in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    def _build_tables(self) -> None:
        N = self.N
        exp = [0] * (2 * N)
        log = [-1] * self.order
        x = 1
        for i in range(N):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, self.primitive)
        if x != 1:  # pragma: no cover
            raise AssertionError("primitive element does not have full order")
        exp[N:] = exp[:N]
        self._exp = exp
        self._log = log
        # zech[k] = log(1 + g^k), -1 when that sum vanishes
        p = self.p
        zech = [0] * N
        for k in range(N):
            e = exp[k]
            one_plus = e + 1 if e % p != p - 1 else e - (p - 1)
            zech[k] = log[one_plus] if one_plus else -1
        self._zech = zech
        self._half = N // 2 if p != 2 else 0
        # log-domain arrays; zero is the sentinel value N
        self.ZL = N
        self.np_exp = np.array(exp[:N] + [0], dtype=np.int64)
        self.np_log = np.array([N if v < 0 else v for v in log], dtype=np.int64)
        self.np_zech = np.array([N if z < 0 else z for z in zech] + [N], dtype=np.int64)

    def _need_tables(self) -> None:
        if not self.has_tables:
            raise FieldError(f"{self!r} is too large for table-based operations")

    # -- scalar arithmetic on encodings ----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        if self.has_tables:
            la = self._log[a]
            z = self._zech[(self._log[b] - la) % self.N]
            return 0 if z < 0 else self._exp[la + z]
        p = self.p
        da, db = _digits(a, p, self.r), _digits(b, p, self.r)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        if self.has_tables:
            return self._exp[self._log[a] + self._half]
        p = self.p
        return _undigits([(-c) % p for c in _digits(a, p, self.r)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.has_tables:
            return self._exp[self.N - self._log[a]]
        return self._pow_slow(a, self.N - 1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        if self.has_tables:
            return self._exp[(self._log[a] * e) % self.N]
        if e < 0:
            a, e = self.inv(a), -e
        return self._pow_slow(a, e % self.N if self.N else 0)

    def log(self, a: int) -> int:
        """Discrete logarithm to the stored primitive element."""
        self._need_tables()
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        if self.has_tables:
            return self._exp[k % self.N]
        return self._pow_slow(self.primitive, k % self.N)

    def from_int(self, k: int) -> int:
        """Encoding of the prime-field element k mod p."""
        return k % self.p

    def in_subfield(self, a: int, q: int) -> bool:
        """Frobenius fixed-point test a^q = a."""
        return self.pow(a, q) == a

    def subfield(self, q: int) -> list[int]:
        """Encodings of GF(q) inside this field, sorted."""
        p, s = prime_power(q)
        if p != self.p or self.r % s:
            raise FieldError(f"GF({q}) is not a subfield of {self!r}")
        if self.has_tables:
            step = self.N // (q - 1)
            return sorted([0] + [self._exp[k * step] for k in range(q - 1)])
        return [a for a in range(self.order) if self.in_subfield(a, q)]

    # -- log-domain vector arithmetic (zero is ZL) ------------------------

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        N = self.N
        return np.where((a == N) | (b == N), N, (a + b) % N)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        N = self.N
        a, b = np.broadcast_arrays(a, b)
        az, bz = a == N, b == N
        z = self.np_zech[(b - a) % N]
        s = np.where(z == N, N, (a + z) % N)
        return np.where(az, b, np.where(bz, a, s))

    # -- dense tables for small fields (encodings in, encodings out) --------

    @functools.cached_property
    def add_table(self) -> np.ndarray:
        q = self.order
        if q > 1 << 10:
            raise FieldError(f"{self!r} is too large for dense tables")
        return np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @functools.cached_property
    def mul_table(self) -> np.ndarray:
        q = self.order
        if q > 1 << 10:
            raise FieldError(f"{self!r} is too large for dense tables")
        return np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over this field on encoding arrays; A is (..., k, n), B is (n, r)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.r == 1:
            return (A @ B) % self.p
        prod = self.mul_table[A[..., :, :, None], B]  # (..., k, n, r)
        acc = prod[..., 0, :]
        for j in range(1, prod.shape[-2]):
            acc = self.add_table[acc, prod[..., j, :]]
        return acc

    # -- elements ----------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError(f"element of {value.field!r} used in {self!r}")
            return value
        return FieldElement(self, int(value) % self.p)

    def elem(self, enc: int) -> FieldElement:
        if not 0 <= enc < self.order:
            raise FieldError(f"encoding {enc} out of range for {self!r}")
        return FieldElement(self, enc)

    def from_coeffs(self, coeffs: Sequence[int]) -> FieldElement:
        if len(coeffs) != self.r or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError("coefficients must be r residues mod p")
        return FieldElement(self, _undigits(coeffs, self.p))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The stored primitive element."""
        return FieldElement(self, self.primitive)

    def elements(self) -> Iterator[FieldElement]:
        for enc in range(self.order):
            yield FieldElement(self, enc)

    def element_of_order(self, n: int) -> FieldElement:
        """The canonical element g^((p^r-1)/n) of order n."""
        if self.N % n:
            raise FieldError(f"{n} does not divide {self.N}")
        return FieldElement(self, self.pow(self.primitive, self.N // n))


@functools.lru_cache(maxsize=None)
def make_field(p: int, r: int) -> GF:
    """GF(p^r) with the lexicographically smallest monic irreducible modulus.

    Candidate moduli x^r + c_{r-1}x^{r-1} + ... + c_0 are ordered by the
    integer sum c_i p^i, so the constant term varies fastest.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if r < 1:
        raise FieldError("extension degree must be positive")
    if p**r >= SIZE_CAP:
        raise FieldError(f"p^r = {p}^{r} exceeds the size cap 2^32")
    for k in range(p**r):
        f = _digits(k, p, r) + [1]
        if _is_irreducible_modp(f, p):
            return GF(p, r, f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def field_of_order(q: int) -> GF:
    p, s = prime_power(q)
    return make_field(p, s)


class FieldElement:
    """A value in a :class:`GF`; ints combine as prime-field scalars."""

    __slots__ = ("field", "enc")

    def __init__(self, field: GF, enc: int):
        self.field = field
        self.enc = enc

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")
            return other.enc
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.enc, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.enc, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.enc))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.enc, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.enc, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.enc))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.enc))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.enc, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.enc))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field is other.field and self.enc == other.enc
        if isinstance(other, int):
            return self.enc == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.r, self.enc))

    def __bool__(self) -> bool:
        return self.enc != 0

    def __lt__(self, other: FieldElement) -> bool:
        return self.enc < other.enc

    def __repr__(self) -> str:
        return f"GF({self.field.p}^{self.field.r}):{self.enc}"

    @property
    def coeffs(self) -> list[int]:
        return _digits(self.enc, self.field.p, self.field.r)

    def order(self) -> int:
        return element_order(self)

    def log(self) -> int:
        return self.field.log(self.enc)


def parse_element(text: str) -> FieldElement:
    """Inverse of ``repr``: ``GF(p^r):enc``."""
    head, _, enc = text.partition(":")
    if not (head.startswith("GF(") and head.endswith(")") and "^" in head):
        raise FieldError(f"cannot parse field element {text!r}")
    p, r = head[3:-1].split("^")
    return make_field(int(p), int(r)).elem(int(enc))


# ---------------------------------------------------------------------------
# polynomials over a field


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over ``field``; coefficients constant-first, trimmed."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def __call__(self, x: FieldElement) -> FieldElement:
        F = self.field
        acc = 0
        xe = F(x).enc
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, xe), c)
        return FieldElement(F, acc)

    def __mul__(self, other: Poly) -> Poly:
        F = self.field
        if other.field is not F:
            raise FieldError("mixed fields")
        if not self.coeffs or not other.coeffs:
            return Poly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, tuple(out))

    def map(self, fn, target: GF) -> Poly:
        return Poly(target, tuple(fn(FieldElement(self.field, c)).enc for c in self.coeffs))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coeffs]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


# ---------------------------------------------------------------------------
# orders, degrees, minimal polynomials


def _check_base(F: GF, q: int) -> int:
    p, s = prime_power(q)
    if p != F.p or F.r % s:
        raise FieldError(f"GF({q}) is not a subfield of {F!r}")
    return s


def element_order(x: FieldElement) -> int:
    """Multiplicative order, by descending through prime factors of p^r - 1."""
    if x.enc == 0:
        raise ValueError("zero has no multiplicative order")
    F = x.field
    n = F.N
    for ell, e in factorize(F.N):
        for _ in range(e):
            if F.pow(x.enc, n // ell) == 1:
                n //= ell
            else:
                break
    return n


def conjugates(x: FieldElement, q: int) -> list[FieldElement]:
    """The distinct conjugates x, x^q, x^{q^2}, ... over GF(q)."""
    _check_base(x.field, q)
    F = x.field
    out = [x.enc]
    y = F.pow(x.enc, q)
    while y != x.enc:
        out.append(y)
        y = F.pow(y, q)
    return [FieldElement(F, c) for c in out]


def degree_over(x: FieldElement, q: int) -> int:
    return len(conjugates(x, q))


def minimal_polynomial(x: FieldElement, over_q: int) -> Poly:
    """Monic product of (X - c) over the conjugates of x over GF(over_q).

    The result lives in ``x.field``; all coefficients are verified to lie in
    the subfield GF(over_q).
    """
    F = x.field
    result = Poly(F, (1,))
    for c in conjugates(x, over_q):
        result = result * Poly(F, (F.neg(c.enc), 1))
    for c in result.coeffs:
        if not F.in_subfield(c, over_q):  # pragma: no cover
            raise AssertionError("minimal polynomial left the subfield")
    return result


@dataclass(frozen=True)
class QOrder:
    m: int  # degree over GF(q)
    d: int  # q-order: least d with x^d in GF(q)
    n: int  # multiplicative order
    e: int  # gcd(n, q - 1) = order of x^d


def degree_and_qorder(x: FieldElement, q: int) -> QOrder:
    _check_base(x.field, q)
    n = element_order(x)
    m = multiplicative_order(q, n)
    e = math.gcd(n, q - 1)
    d = n // e
    assert m <= d, (m, d)
    assert ((q**m - 1) // (q - 1)) % d == 0, (d, q, m)
    assert math.gcd(d, (q - 1) // e) == 1
    return QOrder(m, d, n, e)


# ---------------------------------------------------------------------------
# subfield embeddings


_embed_lock = threading.Lock()
_embed_memo: dict[tuple[int, int, int], list[int]] = {}
_restrict_memo: dict[tuple[int, int, int], dict[int, int]] = {}


def _embedding_table(src: GF, dst: GF) -> list[int]:
    key = (src.p, src.r, dst.r)
    table = _embed_memo.get(key)
    if table is not None:
        return table
    with _embed_lock:
        table = _embed_memo.get(key)
        if table is not None:
            return table
        if src.p != dst.p or dst.r % src.r:
            raise FieldError(f"{src!r} does not embed in {dst!r}")
        # image of the source generator: least-encoding root of its
        # minimal polynomial over GF(p) among the (|src|-1)-th roots of unity
        mp = minimal_polynomial(src.gen, src.p)
        mp_dst = Poly(dst, mp.coeffs)  # prime-field constants share encodings
        step = dst.N // src.N
        roots = [dst.pow(dst.primitive, k * step) for k in range(src.N)]
        roots = [b for b in roots if mp_dst(FieldElement(dst, b)).enc == 0]
        if not roots:  # pragma: no cover
            raise AssertionError("embedding: no root found")
        beta = min(roots)
        table = [0] * src.order
        y = 1
        g = src.primitive
        x = 1
        for _ in range(src.N):
            table[x] = y
            x = src.mul(x, g)
            y = dst.mul(y, beta)
        _embed_memo[key] = table
        _restrict_memo[key] = {v: k for k, v in enumerate(table)}
        return table


def embed(x: FieldElement, target: GF) -> FieldElement:
    """Image of x under the canonical embedding GF(p^a) -> GF(p^b), a | b."""
    src = x.field
    if src is target:
        return x
    return FieldElement(target, _embedding_table(src, target)[x.enc])


def restrict(y: FieldElement, target: GF) -> FieldElement:
    """Preimage of y under embed(., y.field) from the subfield ``target``."""
    if y.field is target:
        return y
    _embedding_table(target, y.field)
    pre = _restrict_memo[(target.p, target.r, y.field.r)].get(y.enc)
    if pre is None:
        raise FieldError(f"{y!r} does not lie in {target!r}")
    return FieldElement(target, pre)


def home_field(x: FieldElement, q: int) -> FieldElement:
    """Move x into GF(q^m), m its degree over GF(q), via the embedding."""
    p, s = prime_power(q)
    m = degree_over(x, q)
    H = make_field(p, s * m)
    return restrict(x, H)


# ---------------------------------------------------------------------------
# linear algebra over a field (encodings)


def solve_linear(F: GF, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Solve A x = b for square nonsingular A by Gaussian elimination."""
    n = len(A)
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((i for i in range(col, n) if M[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        M[col] = [F.mul(v, inv) for v in M[col]]
        for i in range(n):
            if i != col and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def matrix_rank(F: GF, A: Sequence[Sequence[int]]) -> int:
    M = [list(row) for row in A]
    rank = 0
    cols = len(M[0]) if M else 0
    for col in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][col])
        M[rank] = [F.mul(v, inv) for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(M[i], M[rank])]
        rank += 1
    return rank


def coordinates(y: FieldElement, basis: Sequence[FieldElement], q: int) -> list[FieldElement]:
    """Coordinates of y over GF(q) in the given GF(q)-basis.

    Uses the Moore matrix: applying x -> x^{q^k} to y = sum c_i b_i keeps
    c_i fixed, which gives m equations over the big field.
    """
    F = y.field
    m = len(basis)
    A = []
    rhs = []
    for k in range(m):
        qk = q**k
        A.append([F.pow(b.enc, qk) for b in basis])
        rhs.append(F.pow(y.enc, qk))
    sol = solve_linear(F, A, rhs)
    return [FieldElement(F, c) for c in sol]
