import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonstd.field import (
    FieldElement,
    FieldError,
    conjugates,
    coordinates,
    degree_and_qorder,
    divisors,
    element_order,
    embed,
    factorize,
    field_of_order,
    home_field,
    is_prime,
    make_field,
    minimal_polynomial,
    multiplicative_order,
    parse_element,
    prime_power,
    restrict,
)
from oracles import is_irreducible_bruteforce, ref_add, ref_mul, ref_order, ref_qorder

SMALL = [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 1), (2, 6)]


def test_number_theory_helpers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert prime_power(81) == (3, 4)
    assert multiplicative_order(2, 23) == 11
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("p,r", SMALL)
def test_modulus_is_lex_smallest_irreducible(p, r):
    F = make_field(p, r)
    f = list(F.modulus)
    assert f[-1] == 1 and is_irreducible_bruteforce(f, p)
    key = sum(c * p**i for i, c in enumerate(f[:-1]))
    for k in range(key):
        cand = [(k // p**i) % p for i in range(r)] + [1]
        assert not is_irreducible_bruteforce(cand, p)


def test_fixed_moduli():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(2, 3).modulus == (1, 1, 0, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)


@pytest.mark.parametrize("p,r", [(2, 3), (3, 2), (2, 4), (5, 2)])
def test_tables_match_schoolbook(p, r):
    F = make_field(p, r)
    for a, b in itertools.product(range(F.order), repeat=2):
        assert F.mul(a, b) == ref_mul(F, a, b)
        assert F.add(a, b) == ref_add(F, a, b)


def test_slow_path_agrees_with_tables():
    F = make_field(2, 20)  # above the table limit
    assert not F.has_tables
    G = make_field(2, 10)
    a, b = 12345, 987654
    assert F.mul(a, b) == ref_mul(F, a, b)
    assert F.mul(F.inv(a), a) == 1
    assert F.pow(F.primitive, F.N) == 1
    assert G.has_tables


def test_primitive_and_element_of_order():
    F = make_field(3, 4)
    assert ref_order(F, F.primitive) == 80
    for n in (1, 2, 5, 8, 16, 40, 80):
        assert ref_order(F, F.element_of_order(n).enc) == n
    with pytest.raises(FieldError):
        F.element_of_order(7)


field_params = st.sampled_from(SMALL)


@settings(max_examples=150, deadline=None)
@given(field_params, st.data())
def test_field_axioms(pr, data):
    F = make_field(*pr)
    a, b, c = (F.elem(data.draw(st.integers(0, F.order - 1))) for _ in range(3))
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0 and a + (-a) == 0
    if a:
        assert a * a.inverse() == 1 and (b / a) * a == b
    assert (a + b) ** F.p == a**F.p + b**F.p  # Frobenius is additive


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2, 4), (2, 2, 6), (3, 1, 2), (3, 2, 4), (2, 3, 6)]), st.data())
def test_embedding_is_a_homomorphism(params, data):
    p, a_deg, b_deg = params
    S, T = make_field(p, a_deg), make_field(p, b_deg)
    x = S.elem(data.draw(st.integers(0, S.order - 1)))
    y = S.elem(data.draw(st.integers(0, S.order - 1)))
    assert embed(x + y, T) == embed(x, T) + embed(y, T)
    assert embed(x * y, T) == embed(x, T) * embed(y, T)
    assert restrict(embed(x, T), S) == x
    assert T.in_subfield(embed(x, T).enc, S.order)


def test_embedding_is_deterministic_and_restrict_rejects():
    S, T = make_field(2, 2), make_field(2, 4)
    assert embed(S.gen, T) == embed(S.gen, T)
    outside = next(x for x in T.elements() if not T.in_subfield(x.enc, 4))
    with pytest.raises(FieldError):
        restrict(outside, S)


def test_vectorised_log_arithmetic():
    F = make_field(3, 3)
    logs = np.array([F.N if a == 0 else F.log(a) for a in range(F.order)])
    A, B = np.meshgrid(logs, logs)
    prod = F.vmul(A, B)
    summ = F.vadd(A, B)
    for i, j in itertools.product(range(F.order), repeat=2):
        pe = 0 if prod[i, j] == F.N else F.exp(int(prod[i, j]))
        se = 0 if summ[i, j] == F.N else F.exp(int(summ[i, j]))
        assert pe == F.mul(j, i) and se == F.add(j, i)


def test_matmul_matches_loops():
    rng = np.random.default_rng(1)
    for p, r in [(5, 1), (2, 3), (3, 2)]:
        F = make_field(p, r)
        A = rng.integers(0, F.order, size=(3, 4))
        B = rng.integers(0, F.order, size=(4, 2))
        C = F.matmul(A, B)
        for i in range(3):
            for j in range(2):
                acc = 0
                for k in range(4):
                    acc = F.add(acc, F.mul(int(A[i, k]), int(B[k, j])))
                assert C[i, j] == acc


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (5, 2)])
def test_qorder_against_bruteforce(q, m):
    p, s = prime_power(q)
    E = make_field(p, s * m)
    for x in E.elements():
        if not x:
            continue
        qo = degree_and_qorder(x, q)
        assert qo.n == ref_order(E, x.enc) == element_order(x)
        assert qo.d == ref_qorder(E, x.enc, q)
        assert qo.d * qo.e == qo.n
        assert qo.m == len(conjugates(x, q))


def test_qorder_examples():
    E = make_field(3, 2)
    prim = E.gen
    qo = degree_and_qorder(prim, 3)
    assert (qo.m, qo.d, qo.n, qo.e) == (2, 4, 8, 2)
    E = make_field(2, 11)
    x = E.element_of_order(23)
    assert degree_and_qorder(x, 2).d == 23


def test_minimal_polynomial_and_home_field():
    E = make_field(2, 4)
    x = E.element_of_order(5)
    f = minimal_polynomial(x, 2)
    assert f.degree == 4 and f(x) == 0
    y = E.element_of_order(3)
    h = home_field(y, 2)
    assert h.field is make_field(2, 2) and embed(h, E) == y


def test_coordinates_roundtrip():
    E = make_field(3, 3)
    xi = E.gen
    basis = [xi**i for i in range(3)]
    for y in E.elements():
        c = coordinates(y, basis, 3)
        assert all(E.in_subfield(ci.enc, 3) for ci in c)
        assert sum((ci * b for ci, b in zip(c, basis)), E.zero) == y


def test_errors_and_parse():
    with pytest.raises(FieldError):
        make_field(4, 1)
    with pytest.raises(FieldError):
        make_field(2, 40)
    F = field_of_order(9)
    with pytest.raises(FieldError):
        F(1) + make_field(3, 3)(1)
    x = F.elem(5)
    assert parse_element(repr(x)) == x
    with pytest.raises(ValueError):
        element_order(F.zero)
    assert isinstance(F.gen, FieldElement)
