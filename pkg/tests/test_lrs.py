import pytest

from nonstd.field import degree_and_qorder, embed, make_field, restrict
from nonstd.linearized import evaluate
from nonstd.lrs import (
    Recurrence,
    charpoly_order,
    generate,
    period,
    qpoly_from_initials,
    restricted_period,
)


def test_fibonacci_mod_2_and_5():
    F2 = make_field(2, 1)
    rec = Recurrence.from_sigma(F2, [1, 1])  # u_{k+2} = u_k + u_{k+1}
    seq = generate(rec, [F2(0), F2(1)], 9)
    assert [s.enc for s in seq] == [0, 1, 1, 0, 1, 1, 0, 1, 1]
    assert period(rec, [F2(0), F2(1)]) == 3
    assert charpoly_order(rec) == 3
    F5 = make_field(5, 1)
    fib5 = Recurrence.from_sigma(F5, [1, 1])
    assert period(fib5, [F5(0), F5(1)]) == 20  # Pisano period of 5


def test_primitive_trinomial_has_maximal_period():
    F2 = make_field(2, 1)
    rec = Recurrence.from_sigma(F2, [1, 0, 1, 0, 0])  # x^5 - x^2 - 1
    assert charpoly_order(rec) == 31
    assert period(rec, [F2(1)] + [F2(0)] * 4) == 31


def test_validation():
    F = make_field(3, 1)
    with pytest.raises(ValueError):
        Recurrence.from_sigma(F, [0, 1])
    rec = Recurrence.from_sigma(F, [1, 1])
    with pytest.raises(ValueError):
        generate(rec, [F(1)], 5)
    with pytest.raises(ValueError):
        period(rec, [F(0), F(0)])


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (4, 2), (5, 2), (2, 4)])
def test_restricted_period_is_qorder_on_every_root(q, m):
    p = {2: 2, 3: 3, 4: 2, 5: 5}[q]
    s = {2: 1, 3: 1, 4: 2, 5: 1}[q]
    E = make_field(p, s * m)
    K = make_field(p, s)
    for x in E.elements():
        if not x or degree_and_qorder(x, q).m != m:
            continue
        rec = Recurrence.of_element(x, q)
        delta, lam = restricted_period(rec)
        d = degree_and_qorder(x, q).d
        assert delta == d
        assert lam == restrict(x**d, K)
        # direct definition: impulse state returns to a multiple of itself
        seq = generate(rec, [K.zero] * (m - 1) + [K.one], delta + m)
        assert all(v.enc == 0 for v in seq[delta:delta + m - 1])


def test_qpoly_from_initials_reproduces_sequence():
    E = make_field(3, 2)
    xi = E.gen
    rec = Recurrence.of_element(xi, 3)
    init = [E.one, E.elem(5)]
    L = qpoly_from_initials(rec, xi, init)
    seq = generate(rec, init, 20)
    assert all(evaluate(L, xi**k) == seq[k] for k in range(20))
    with pytest.raises(ValueError):
        qpoly_from_initials(rec, E.element_of_order(4), init)


def test_sequences_over_the_big_field_embed():
    E = make_field(2, 4)
    K = make_field(2, 1)
    rec = Recurrence.from_sigma(K, [1, 1])
    seq = generate(rec, [E.one, E.gen], 6)
    assert seq[2] == E.one + E.gen and seq[0].field is E
    assert embed(K.one, E) == E.one
