import itertools
import math

import numpy as np
import pytest

from nonstd.codes import (
    BudgetError,
    all_automorphisms_small,
    build_code,
    codewords,
    contains,
    cyclotomic_closure,
    find_extra_automorphism,
    format_code_line,
    generator_matrix,
    golay_binary,
    golay_ternary,
    in_standard_group,
    is_perfect,
    is_perm_automorphism,
    min_distance,
    parity_matrix,
    parse_code_line,
    perm_to_qpoly,
    qpoly_to_perm,
    sphere_size,
    standard_group,
    weight_distribution,
)
from nonstd.linearized import search_nonstandard, witness_from_qpoly


def brute_codewords(C):
    """All words c with c(xi^z) = 0 for every defining zero, straight from the definition."""
    E, xi = C.big, C.xi
    small = [x for x in E.elements() if E.in_subfield(x.enc, C.q)]
    out = []
    for word in itertools.product(small, repeat=C.n):
        if all(sum((w * xi ** (z * i) for i, w in enumerate(word)), E.zero) == 0 for z in C.zeros):
            out.append(word)
    return out


def test_cyclotomic_closure():
    assert cyclotomic_closure([1], 2, 7) == (1, 2, 4)
    assert cyclotomic_closure([1], 2, 23) == (1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18)
    assert cyclotomic_closure([1], 3, 11) == (1, 3, 4, 5, 9)


def test_hamming_code():
    C = build_code(7, 2, [1])
    assert C.dim == 4 and C.m == 3
    assert weight_distribution(C) == [1, 0, 0, 7, 7, 0, 0, 1]
    assert is_perfect(7, 4, 2, 1)


@pytest.mark.parametrize("n,q,zeros", [(7, 2, [1]), (8, 3, [1]), (5, 4, [1]), (4, 3, [1]), (7, 2, [1, 3]), (6, 5, [0, 2])])
def test_codewords_against_definition(n, q, zeros):
    C = build_code(n, q, zeros)
    ref = brute_codewords(C)
    assert len(ref) == q**C.dim
    words = np.concatenate(list(codewords(C)))
    assert len(words) == len(ref)
    ref_weights = sorted(sum(1 for x in w if x) for w in ref)
    assert sorted(int((row != 0).sum()) for row in words) == ref_weights
    for row in generator_matrix(C):
        assert contains(C, row)
    H = parity_matrix(C)
    assert H.shape[1] == n


def test_golay_codes():
    B = golay_binary()
    assert (B.dim, min_distance(B)) == (12, 7)
    assert sphere_size(23, 2, 3) == 2**11
    T = golay_ternary()
    assert (T.dim, min_distance(T)) == (6, 5)
    assert sphere_size(11, 3, 2) == 3**5
    assert len(standard_group(23, 2)) == 253 and len(standard_group(11, 3)) == 55


@pytest.mark.parametrize("C,m,d", [(golay_binary(), 11, 23), (golay_ternary(), 5, 11)])
def test_golay_extra_automorphism_gives_witness(C, m, d):
    perm = find_extra_automorphism(C)
    assert perm is not None and is_perm_automorphism(C, perm) and not in_standard_group(perm, C.q)
    w = witness_from_qpoly(C.xi, C.q, perm_to_qpoly(C, perm))
    w.verify()
    assert (w.m, w.d) == (m, d)


def test_standard_group_is_automorphisms():
    C = build_code(7, 2, [1])
    for g in standard_group(7, 2):
        assert is_perm_automorphism(C, g) and in_standard_group(g, 2)
    assert not in_standard_group((0, 2, 1, 3, 4, 5, 6), 2)


def test_small_automorphism_group_order():
    # Hamming [7,4,3] has automorphism group GL(3,2) of order 168
    assert len(all_automorphisms_small(build_code(7, 2, [1]))) == 168


@pytest.mark.parametrize("n,q", [(7, 2), (8, 3), (5, 2), (5, 4), (4, 3), (7, 4)])
def test_bridge_agrees_with_search(n, q):
    C = build_code(n, q, [1])
    extra = find_extra_automorphism(C)
    ws = search_nonstandard(C.xi, q)
    assert (extra is None) == (not ws)
    for w in ws:
        perm = qpoly_to_perm(C, w.L)
        assert is_perm_automorphism(C, perm)
        L = perm_to_qpoly(C, perm)
        assert L == w.L


def test_bridge_needs_single_zero():
    C = build_code(7, 2, [1, 3])
    with pytest.raises(ValueError):
        perm_to_qpoly(C, tuple(range(7)))


def test_text_format_roundtrip():
    C = build_code(7, 2, [1])
    line = format_code_line(C, [0, 1, 4, 3, 2, 6, 5])
    n, q, zeros, perm = parse_code_line(line)
    assert (n, q, zeros, perm) == (7, 2, [1, 2, 4], [0, 1, 4, 3, 2, 6, 5])
    assert parse_code_line("11 3 zeros=1")[3] is None
    with pytest.raises(ValueError):
        parse_code_line("eleven 3")


def test_errors():
    with pytest.raises(ValueError):
        build_code(6, 2, [1])
    with pytest.raises(ValueError):
        build_code(7, 2, [9])
    with pytest.raises(BudgetError):
        list(codewords(golay_binary(), budget=100))
    assert math.comb(23, 3) + math.comb(23, 2) + 23 + 1 == 2048
