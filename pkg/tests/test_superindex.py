from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from qgrass.superindex import (Shape, SuperTuple, e0_e_brute, e0_e_closed, edeg, edeg_vector,
                               enumerate_graded, equiv, eta_repr, geq_partial, graded_dim_formula,
                               k_count, k_set, omega_tail, star, succ_lex, succcurlyeq_weight,
                               super_star, unit)

SHAPES = [Shape(2, 1, 3, 1), Shape(2, 1, 3, 2), Shape(2, 2, 3, 1), Shape(3, 2, 3, 2),
          Shape(2, 2, 5, 1), Shape(1, 0, 3, 3), Shape(3, 0, 3, 2), Shape(2, 3, 3, 2),
          Shape(2, 10, 3, 2), Shape(4, 1, 3, 1), Shape(3, 1, 5, 2), Shape(2, 1, 4, 2, 8)]


def star_oracle(b, g):
    return sum(b[i] * g[j] for i in range(len(b)) for j in range(len(b)) if j < i)


def box(shape):
    return [SuperTuple(a, u) for a in product(range(shape.bound + 1), repeat=shape.m)
            for u in product((0, 1), repeat=shape.n)]


def test_star_examples():
    assert star(unit(2, 0), unit(2, 1)) == 0
    assert star(unit(2, 1), unit(2, 0)) == 1
    assert star((1, 1), (1, 1)) == 1
    with pytest.raises(ValueError):
        star((1,), (1, 0))


vecs = st.integers(1, 5).flatmap(lambda k: st.tuples(
    st.lists(st.integers(0, 6), min_size=k, max_size=k),
    st.lists(st.integers(0, 6), min_size=k, max_size=k)))


@given(vecs)
def test_star_matches_double_loop(pair):
    b, g = pair
    assert star(b, g) == star_oracle(b, g)
    # the two orders add up to the full cross sum minus the diagonal
    assert star(b, g) + star(g, b) == sum(b) * sum(g) - sum(x * y for x, y in zip(b, g))


def test_super_star_examples():
    assert super_star(SuperTuple((0, 0), (1, 0)), SuperTuple((1, 1), (0, 0))) == 2
    assert super_star(SuperTuple((1, 0), (0,)), SuperTuple((0, 1), (0,))) == 0
    assert super_star(SuperTuple((0,), (1, 0)), SuperTuple((0,), (0, 1))) == 0


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_enumeration_matches_box(shape):
    by_degree = {}
    for t in box(shape):
        by_degree.setdefault(t.degree, []).append(t)
    total = 0
    for s in range(shape.top + 1):
        got = enumerate_graded(shape, s)
        assert got == sorted(by_degree.get(s, []))
        assert len(got) == graded_dim_formula(shape, s)
        total += len(got)
    assert total == shape.total_dim == (shape.r * shape.ell) ** shape.m * 2 ** shape.n
    assert enumerate_graded(shape, -1) == [] == enumerate_graded(shape, shape.top + 1)


def test_enumeration_examples():
    sh = Shape(2, 1, 3, 1)
    assert enumerate_graded(sh, 0) == [SuperTuple((0, 0), (0,))]
    assert len(enumerate_graded(sh, 2)) == 5
    assert enumerate_graded(sh, 5) == [SuperTuple((2, 2), (1,))]


def test_shape_validation():
    for bad in [(0, 1, 3), (1, -1, 3), (1, 1, 2), (1, 1, 4), (1, 1, 3, 0)]:
        with pytest.raises(ValueError):
            Shape(*bad)
    assert str(Shape(3, 2, 3, 2)) == "(3,2,3,2)"


def test_energy_examples():
    t = SuperTuple((5, 2), (0,))
    assert edeg(t, 3) == 1 and edeg_vector(t, 3) == (1, 0)
    assert edeg(SuperTuple((0, 0, 0), ()), 3) == 0
    assert edeg_vector(SuperTuple((3, 3, 5), ()), 3) == (1, 1, 1)
    a, b = SuperTuple((3, 0), (1,)), SuperTuple((4, 0), (0,))
    assert equiv(a, b, 3) and geq_partial(a, b, 3)
    with pytest.raises(ValueError):
        equiv(SuperTuple((3, 0), (0,)), SuperTuple((4, 0), (0,)), 3)


def test_weight_order_examples():
    assert succcurlyeq_weight((1, 1, 0), (1, 0, 1))
    assert not succcurlyeq_weight((0, 1, 1), (1, 1, 0))
    # (1,1,0) - (0,1,1) = eps1 - eps3, a sum of two simple roots
    assert succcurlyeq_weight((1, 1, 0), (0, 1, 1))
    assert not succcurlyeq_weight((1, 1, 0), (1, 1, 1))
    assert succ_lex((1, 1, 0), (1, 0, 1)) and not succ_lex((0, 1, 1), (1, 1, 0))


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_weight_order_reflexive(k):
    assert succcurlyeq_weight(k, k)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_lex_max_dominates_its_grade(shape):
    for kappa in range(shape.m * (shape.r - 1) + 1):
        ks = k_set(shape, kappa)
        top = max(ks)
        assert all(succcurlyeq_weight(top, k) for k in ks)


@pytest.mark.parametrize("shape", SHAPES, ids=str)
def test_e0_e_closed_form(shape):
    for s in range(shape.top + 1):
        assert e0_e_closed(shape, s) == e0_e_brute(shape, s)


def test_e0_e_examples():
    sh = Shape(3, 2, 3, 2)
    assert e0_e_brute(sh, 1) == (0, 0)
    assert e0_e_brute(sh, 10) == (1, 3)
    assert e0_e_brute(sh, 16) == (3, 3)
    with pytest.raises(ValueError):
        e0_e_brute(sh, 18)


def test_k_set_examples():
    sh = Shape(3, 2, 3, 2)
    assert k_set(sh, 1) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert k_set(sh, 3) == [(1, 1, 1)]
    assert k_set(sh, 4) == [] and k_count(sh, 4) == 0


@settings(max_examples=50)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(-1, 14))
def test_k_count_matches_enumeration(m, r, kappa):
    sh = Shape(m, 0, 3, r)
    ks = k_set(sh, kappa)
    assert len(ks) == k_count(sh, kappa)
    assert all(len(k) == m and sum(k) == kappa and max(k) <= r - 1 for k in ks)


def test_eta_examples():
    assert eta_repr(Shape(2, 1, 3, 1), (0, 0), 2) == SuperTuple((2, 0), (0,))
    assert eta_repr(Shape(2, 2, 3, 1), (0, 0), 6) == SuperTuple((2, 2), (1, 1))
    assert eta_repr(Shape(3, 2, 3, 2), (1, 1, 1), 15) == SuperTuple((5, 5, 5), (0, 0))
    assert omega_tail(3, 2) == (1, 1, 0)
    with pytest.raises(ValueError):
        eta_repr(Shape(3, 2, 3, 2), (2, 0, 0), 10)
    with pytest.raises(ValueError):
        eta_repr(Shape(3, 2, 3, 2), (1, 1, 1), 8)


@pytest.mark.parametrize("shape", SHAPES[:6], ids=str)
def test_eta_degree_and_energy(shape):
    for s in range(shape.top + 1):
        for kappa in range(shape.m * (shape.r - 1) + 1):
            for kvec in k_set(shape, kappa):
                rest = s - shape.ell * kappa
                if not 0 <= rest <= shape.m * (shape.ell - 1) + shape.n:
                    continue
                t = eta_repr(shape, kvec, s)
                assert t.degree == s and edeg_vector(t, shape.ell) == kvec
                assert t in enumerate_graded(shape, s)
