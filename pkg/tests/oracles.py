"""Slow, table-free reference implementations used as independent oracles."""

from __future__ import annotations

import itertools


def poly_mulmod(a, b, mod, p):
    """Schoolbook product of coefficient lists (constant first) reduced by a monic modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    r = len(mod) - 1
    for k in range(len(out) - 1, r - 1, -1):
        c = out[k]
        if c:
            for i in range(r + 1):
                out[k - r + i] = (out[k - r + i] - c * mod[i]) % p
    out = out[:r] + [0] * (r - len(out[:r]))
    return out


def digits(enc, p, r):
    return [(enc // p**i) % p for i in range(r)]


def undigits(c, p):
    return sum(x * p**i for i, x in enumerate(c))


def ref_mul(F, a, b):
    return undigits(poly_mulmod(digits(a, F.p, F.r), digits(b, F.p, F.r), list(F.modulus), F.p), F.p)


def ref_add(F, a, b):
    return undigits([(x + y) % F.p for x, y in zip(digits(a, F.p, F.r), digits(b, F.p, F.r))], F.p)


def ref_pow(F, a, e):
    out = 1
    for _ in range(e):
        out = ref_mul(F, out, a)
    return out


def ref_order(F, a):
    k, y = 1, a
    while y != 1:
        y = ref_mul(F, y, a)
        k += 1
    return k


def ref_qorder(F, a, q):
    """Least d > 0 with a^d fixed by x -> x^q, by walking powers."""
    d, y = 1, a
    while ref_pow(F, y, q) != y:
        y = ref_mul(F, y, a)
        d += 1
    return d


def is_irreducible_bruteforce(f, p):
    """No root-free factorisation check: trial division by every monic polynomial of degree <= deg/2."""
    r = len(f) - 1
    for deg in range(1, r // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            rem = list(f)
            for k in range(len(rem) - 1, deg - 1, -1):
                c = rem[k]
                if c:
                    for i in range(deg + 1):
                        rem[k - deg + i] = (rem[k - deg + i] - c * g[i]) % p
            if not any(rem[:deg]):
                return False
    return True

