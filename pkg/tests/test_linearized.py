import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonstd.field import BudgetError, FieldError, degree_and_qorder, make_field
from nonstd.linearized import (
    NonstandardWitness,
    QPolynomial,
    count_nonsingular_maps,
    evaluate,
    fixes_subgroup,
    induced_permutation,
    is_nonsingular,
    is_standard,
    qpoly_from_images,
    search_nonstandard,
    witness_from_qpoly,
)


def brute_force_witness_count(xi, q):
    """Every GF(q)-linear map as an m x m matrix over GF(q) in the basis 1, xi, ..."""
    E = xi.field
    m = degree_and_qorder(xi, q).m
    K = [x for x in E.elements() if E.in_subfield(x.enc, q)]
    basis = [xi**i for i in range(m)]
    members = set()
    y = E.one
    while True:
        members.add(y.enc)
        y = y * xi
        if y == 1:
            break
    count = 0
    for cols in itertools.product(itertools.product(K, repeat=m), repeat=m):
        images = [sum((c * b for c, b in zip(col, basis)), E.zero) for col in cols]
        if images[0] != 1:
            continue
        try:
            L = qpoly_from_images(xi, q, images)
        except ValueError:
            continue  # the zero map
        if is_standard(L) is not None or not is_nonsingular(L):
            continue
        if all(evaluate(L, E.elem(g)).enc in members for g in members):
            count += 1
    return count


def test_evaluation_and_standard_maps():
    E = make_field(2, 3)
    L = QPolynomial(E, 2, (0, 1, 0))  # x -> x^2
    assert all(evaluate(L, x) == x**2 for x in E.elements())
    assert is_standard(L) == (E.one, 1)
    assert is_standard(QPolynomial(E, 2, (1, 1, 0))) is None
    with pytest.raises(FieldError):
        QPolynomial(E, 2, (1, 0))
    with pytest.raises(ValueError):
        QPolynomial(E, 2, (0, 0, 0))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2), (2, 3), (4, 2), (5, 2)]), st.data())
def test_q_polynomials_are_linear_over_the_base(params, data):
    q, m = params
    p = {2: 2, 3: 3, 4: 2, 5: 5}[q]
    s = 2 if q == 4 else 1
    E = make_field(p, s * m)
    coeffs = tuple(data.draw(st.integers(0, E.order - 1)) for _ in range(m))
    if not any(coeffs):
        coeffs = (1,) + coeffs[1:]
    L = QPolynomial(E, q, coeffs)
    x = E.elem(data.draw(st.integers(0, E.order - 1)))
    y = E.elem(data.draw(st.integers(0, E.order - 1)))
    c = E.elem(E.subfield(q)[data.draw(st.integers(0, q - 1))])
    assert evaluate(L, x + y) == evaluate(L, x) + evaluate(L, y)
    assert evaluate(L, c * x) == c * evaluate(L, x)


def test_qpoly_from_images_interpolates():
    E = make_field(3, 3)
    xi = E.gen
    imgs = [E.elem(7), E.elem(11), E.elem(2)]
    L = qpoly_from_images(xi, 3, imgs)
    assert [evaluate(L, xi**j) for j in range(3)] == imgs


def test_census_gf9_primitive_has_four():
    xi = make_field(3, 2).gen
    ws = search_nonstandard(xi, 3)
    assert len(ws) == 4 == brute_force_witness_count(xi, 3)
    for w in ws:
        w.verify()
        assert w.perm == induced_permutation(w.L, xi)


def test_census_gf4_primitive_has_none():
    xi = make_field(2, 2).gen
    assert search_nonstandard(xi, 2) == [] and brute_force_witness_count(xi, 2) == 0


@pytest.mark.parametrize("q,n", [(5, 8), (3, 4), (4, 5), (5, 24), (7, 16)])
def test_search_matches_bruteforce(q, n):
    p = {3: 3, 4: 2, 5: 5, 7: 7}[q]
    s = 2 if q == 4 else 1
    xi = make_field(p, 2 * s).element_of_order(n)
    assert len(search_nonstandard(xi, q)) == brute_force_witness_count(xi, q)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_primitive_counts(q):
    p, s = {3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}[q]
    xi = make_field(p, 2 * s).gen
    assert len(search_nonstandard(xi, q)) == q * q - q - 2


def test_witness_records_roundtrip_and_budget():
    xi = make_field(3, 2).gen
    w = search_nonstandard(xi, 3)[0]
    back = NonstandardWitness.from_record(w.to_record())
    assert back.L == w.L and back.perm == w.perm
    back.verify()
    with pytest.raises(BudgetError):
        search_nonstandard(make_field(2, 10).gen, 32, budget=10)


def test_witness_from_qpoly_normalises_and_rejects():
    E = make_field(3, 2)
    xi = E.gen
    w = search_nonstandard(xi, 3)[0]
    scaled = w.L.scaled(E.elem(2))
    assert witness_from_qpoly(xi, 3, scaled).L == w.L
    with pytest.raises(ValueError):
        witness_from_qpoly(xi, 3, QPolynomial(E, 3, (0, 1)))
    assert fixes_subgroup(QPolynomial(E, 3, (0, 1)), xi)


def _det(M, p):
    if len(M) == 1:
        return M[0][0] % p
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]], p)
               for j in range(len(M))) % p


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)])
def test_nonsingular_counts_by_enumeration(q, m):
    count = sum(1 for entries in itertools.product(range(q), repeat=m * m)
                if _det([list(entries[i * m:(i + 1) * m]) for i in range(m)], q))
    assert count_nonsingular_maps(q, m) == count


@pytest.mark.parametrize("p,r,q", [(3, 2, 3), (5, 2, 5), (2, 4, 4), (7, 2, 7), (3, 4, 9), (2, 3, 2)])
def test_witness_existence_is_order_invariant(p, r, q):
    E = make_field(p, r)
    by_order = {}
    for x in E.elements():
        if not x or degree_and_qorder(x, q).m < 2:
            continue
        qo = degree_and_qorder(x, q)
        ws = search_nonstandard(x, q)
        by_order.setdefault(qo.n, set()).add(len(ws))
    for n, counts in by_order.items():
        assert len(counts) == 1, (n, counts)
