import random

import pytest
from hypothesis import given, settings, strategies as st

from qgrass import structure as stc
from qgrass.linalg import Subspace
from qgrass.superindex import (Shape, SuperTuple, e0_e, edeg, eta_repr, graded_dim_formula,
                               k_count)

BIG = Shape(3, 2, 3, 2)
SMALL = Shape(2, 1, 3, 2)

# (E0, E, layer dims, socle summands) for every degree of the big shape
BIG_TABLE = {
    0: (0, 0, [1], 1), 1: (0, 0, [5], 1), 2: (0, 0, [13], 1),
    3: (0, 1, [22, 3], 1), 4: (0, 1, [26, 15], 1), 5: (0, 1, [22, 39], 1),
    6: (0, 2, [13, 66, 3], 1), 7: (0, 2, [5, 78, 15], 1), 8: (0, 2, [1, 66, 39], 1),
    9: (1, 3, [39, 66, 1], 3), 10: (1, 3, [15, 78, 5], 3), 11: (1, 3, [3, 66, 13], 3),
    12: (2, 3, [39, 22], 3), 13: (2, 3, [15, 26], 3), 14: (2, 3, [3, 22], 3),
    15: (3, 3, [13], 1), 16: (3, 3, [5], 1), 17: (3, 3, [1], 1),
}


def test_closure_is_invariant_and_contains_generator():
    mod = stc.piece_module(SMALL, 4)
    for i in range(mod.dim):
        cm = stc.cyclic_closure(mod.unit(i), mod)
        assert cm.space.member(mod.unit(i))
        assert stc.is_invariant(mod, cm.space)
        # monomial-closure oracle: the torus grading makes closures monomial
        assert cm.space == mod.coordinate_span(sorted(stc.monomial_closure(mod, i)))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 7), st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_closure_of_combination(s, coeffs):
    mod = stc.piece_module(SMALL, s)
    field = mod.field
    v = {}
    for k, c in enumerate(coeffs):
        if c and k < mod.dim:
            v[k] = field.from_int(c)
    sp = stc.closure(mod, [v])
    assert stc.is_invariant(mod, sp)
    assert sp.member(v)


def test_cyclic_example_from_bottom_representative():
    mod = stc.piece_module(BIG, 3)
    eta = eta_repr(BIG, (0, 0, 0), 3)
    cm = stc.cyclic_closure(mod.unit(mod.index(eta)), mod)
    assert cm.dim == graded_dim_formula(BIG.restricted(), 3) == 22


def test_restricted_pieces_are_simple():
    sh = Shape(2, 1, 3, 1)
    for s in range(sh.top + 1):
        mod = stc.piece_module(sh, s)
        top = eta_repr(sh, (0, 0), s)
        cm = stc.cyclic_closure(mod.unit(mod.index(top)), mod)
        assert cm.dim == mod.dim
        rep = stc.simplicity_certify(cm)
        assert rep.simple and rep.exact and rep.commutant_dim == 1


def test_higher_energy_monomial_is_not_simple():
    mod = stc.piece_module(BIG, 10)
    t = next(x for x in mod.labels if edeg(x, 3) == 3)
    rep = stc.simplicity_certify(stc.cyclic_closure(mod.unit(mod.index(t)), mod))
    assert not rep.simple


@pytest.mark.parametrize("s", range(18))
def test_big_shape_table(s):
    E0, E, layers, summands = BIG_TABLE[s]
    filt = stc.edeg_filtration(BIG, s)
    assert (filt.E0, filt.E) == (E0, E) == e0_e(BIG, s)
    assert filt.layer_dims == layers == filt.expected_layer_dims
    assert filt.loewy_length == E - E0 + 1 and filt.ok
    cert = stc.socle_certify(BIG, s, schur=s in (1, 12))
    assert cert.certified and cert.exact
    assert len(cert.summands) == summands == k_count(BIG, E0)
    assert cert.dim == layers[0]


def test_simple_range_socle_is_whole_piece():
    for s in (1, 2, 15, 16, 17):
        cert = stc.socle_certify(BIG, s)
        assert cert.dim == graded_dim_formula(BIG, s)


def test_socle_example_twelve():
    cert = stc.socle_certify(BIG, 12)
    assert sorted(tuple(x["kappa"]) for x in cert.summands) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert all(x["simple"] and x["inside"] for x in cert.summands)


def test_wrong_socle_candidate_fails():
    mod = stc.piece_module(BIG, 10)
    for grade in (2, 3):
        assert not stc._certify_socle(mod, grade, schur=False).certified


def test_socle_certify_raises_on_failure(monkeypatch):
    monkeypatch.setattr(stc, "e0_e", lambda shape, s: (2, 3))
    with pytest.raises(stc.CertificationError):
        stc.socle_certify(BIG, 10, schur=False)


@pytest.mark.parametrize("s", range(SMALL.top + 1))
def test_small_shape_rigidity(s):
    passed, certs = stc.socle_filtration_check(SMALL, s)
    assert passed
    assert len(certs) == stc.edeg_filtration(SMALL, s).loewy_length
    assert stc.primitive_check(SMALL, s)
    assert stc.indecomposability_certify(SMALL, s)


def test_big_shape_ten_has_three_levels():
    passed, certs = stc.socle_filtration_check(BIG, 10)
    assert passed and len(certs) == 3


@pytest.mark.parametrize("s", [5, 10, 12])
def test_big_shape_indecomposable(s):
    assert stc.indecomposability_certify(BIG, s)


def test_direct_sum_is_decomposable():
    a = stc.piece_module(SMALL, 4)
    assert not stc.indecomposability_certify(SMALL, mod=stc.direct_sum(a, a))
    b = stc.piece_module(Shape(2, 1, 3, 1), 2)
    assert not stc.indecomposability_certify(b.shape, mod=stc.direct_sum(b, b))


def test_quotient_and_submodule_dims():
    mod = stc.piece_module(BIG, 10)
    filt = stc.edeg_filtration(BIG, 10, mod)
    quo = stc.quotient_module(mod, filt.chain[0])
    assert quo.dim == mod.dim - filt.chain[0].dim
    sub = stc.submodule(mod, filt.chain[1])
    assert sub.dim == filt.chain[1].dim
    for mat in list(quo.mats.values()) + list(sub.mats.values()):
        assert mat.nrows == mat.ncols


def test_non_invariant_subspace_detected():
    mod = stc.piece_module(SMALL, 4)
    i = next(k for k, t in enumerate(mod.labels) if edeg(t, 3) == 0)
    assert not stc.is_invariant(mod, mod.coordinate_span([i]))
    assert stc.is_invariant(mod, Subspace.ambient(mod.dim, mod.field))


def test_non_monomial_fallback():
    # the diagonal copy inside a doubled simple piece has no monomial basis
    b = stc.piece_module(Shape(2, 1, 3, 1), 2)
    mod = stc.direct_sum(b, b)
    v = {0: mod.field.one, b.dim: mod.field.one}
    cm = stc.cyclic_closure(v, mod)
    assert cm.dim == b.dim and not cm.space.is_monomial()
    rep = stc.simplicity_certify(cm)
    assert rep.simple and rep.commutant_dim == 1
    vecs, _ = stc._maximal_generators(mod, cm.space, random.Random(3))
    assert all(stc.closure(mod, [w]) == cm.space for w in vecs)


def test_net_twelve():
    net = stc.inclusion_net(BIG, 12)
    assert sorted(tuple(a) for a, _ in net.edges) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert all(b == [1, 1, 1] for _, b in net.edges)
    assert net.checks["edges_match_componentwise_order"]
    assert net.checks["same_grade_mutually_non_included"]
    dot = net.to_dot()
    assert dot.startswith("digraph net {") and '"011" -> "111";' in dot
    assert {v["dim"] for v in net.vertices} == {13, 61}


def test_inclusion_order_small():
    counts, bad = stc.inclusion_order_check(SMALL, 4)
    assert counts == {"i": 9, "ii": 18, "iii": 9} and not bad


def test_inclusion_order_equivalent_pair():
    mod = stc.piece_module(SMALL, 4)
    a = mod.index(SuperTuple((3, 0), (1,)))
    b = mod.index(SuperTuple((4, 0), (0,)))
    counts, bad = stc.inclusion_order_check(SMALL, 4, [(a, b)])
    assert counts["i"] == 1 and not bad
    assert stc.closure(mod, [mod.unit(a)]) == stc.closure(mod, [mod.unit(b)])


def test_inclusion_order_strict_inclusion():
    # energy (1,1) against (1,0)
    mod = stc.piece_module(SMALL, 6)
    hi = mod.index(SuperTuple((3, 3), (0,)))
    lo = mod.index(SuperTuple((5, 1), (0,)))
    big, small = stc.closure(mod, [mod.unit(hi)]), stc.closure(mod, [mod.unit(lo)])
    assert big.contains(small) and big.dim > small.dim
