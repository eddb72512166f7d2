from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnr.errors import InputError
from homnr.services import nr_bracket as nr
from homnr.services.cochains import BasedSpace, Cochain, TwistMap, is_alternating
from homnr.services.linear import Matrix
from tests.helpers import (
    beta_cochains, cochains, combinations, fixture, fixture_alternating_basis, twists,
)

TWISTS = [(1, 1), (1, 2), (1, 1, 2)]
ARITY_TRIPLES = [(1, 1, 2), (1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2), (3, 1, 1), (1, 3, 2)]


@pytest.mark.parametrize("p,q", [(0, 2), (1, 1), (2, 1), (2, 2), (3, 2)])
def test_shuffle_count_and_signs(p, q):
    sh = nr.shuffles(p, q)
    assert len(sh) == comb(p + q, p)
    assert sh[0].perm == tuple(range(1, p + q + 1)) and sh[0].sign == 1
    for s in sh:
        assert list(s.head) == sorted(s.head) and list(s.tail) == sorted(s.tail)


def test_shuffle_signs_for_two_one():
    signs = {s.head: s.sign for s in nr.shuffles(2, 1)}
    assert signs == {(1, 2): 1, (1, 3): -1, (2, 3): 1}


def test_unknown_kind_is_refused():
    space = BasedSpace.standard(1)
    f = Cochain.zero(space, 1)
    with pytest.raises(InputError):
        nr.circle(f, f, TwistMap.identity(1), "middle")


def test_square_half_vanishes_on_leibniz_fixture():
    a = fixture("FIX-LZ2")
    assert nr.square_half(a.product, a.twist, nr.LEFT).is_zero()


def test_square_half_witness_on_non_leibniz_fixture():
    a = fixture("FIX-NONLEIB1")
    sq = nr.square_half(a.product, a.twist, nr.LEFT)
    assert sq.support() == [(0, 0, 0)]


@pytest.mark.parametrize("kind", [nr.LEFT, nr.RIGHT])
@given(d=cochains(dim=2, arity=2), beta=twists(dim=2))
@settings(max_examples=20, deadline=None)
def test_square_half_matches_three_term_formula(kind, d, beta):
    assert nr.circle(d, d, beta, kind) == nr.square_half_direct(d, beta, kind)


@given(f=cochains(dim=2, arity=2), g=cochains(dim=2, arity=1))
@settings(max_examples=20, deadline=None)
def test_bracket_graded_antisymmetry(f, g):
    beta = TwistMap.identity(2)
    for kind in nr.KINDS:
        fg = nr.bracket(f, g, beta, kind)
        gf = nr.bracket(g, f, beta, kind)
        # degrees 1 and 0: [f,g] = −[g,f]
        assert fg == -gf


@pytest.mark.parametrize("kind", [nr.LEFT, nr.RIGHT])
@given(f=cochains(dim=2, arity=1), g=cochains(dim=2, arity=1), h=cochains(dim=2, arity=2))
@settings(max_examples=15, deadline=None)
def test_bracket_graded_jacobi(kind, f, g, h):
    beta = TwistMap.identity(2)
    br = lambda x, y: nr.bracket(x, y, beta, kind)
    # degrees 0, 0, 1: [f,[g,h]] = [[f,g],h] + [g,[f,h]]
    assert br(f, br(g, h)) == br(br(f, g), h) + br(g, br(f, h))


@pytest.mark.parametrize("kind", [nr.LEFT, nr.RIGHT])
@given(f=cochains(dim=2, arity=2), g=cochains(dim=2, arity=2), h=cochains(dim=2, arity=1))
@settings(max_examples=10, deadline=None)
def test_bracket_graded_jacobi_odd_degrees(kind, f, g, h):
    beta = TwistMap.identity(2)
    br = lambda x, y: nr.bracket(x, y, beta, kind)
    # degrees 1, 1, 0: [f,[g,h]] = [[f,g],h] − [g,[f,h]]
    assert br(f, br(g, h)) == br(br(f, g), h) - br(g, br(f, h))


def test_bracket_with_the_identity_map_returns_the_product():
    # d∘id = 2d and id∘d = d
    a = fixture("FIX-LZ2")
    ident = Cochain.linear_map(Matrix.identity(2), a.space)
    assert nr.bracket(a.product, ident, a.twist, nr.LEFT) == a.product


def _draw_triple(data, beta, arities):
    return tuple(data.draw(beta_cochains(beta, k)) for k in arities)


@pytest.mark.parametrize("beta", TWISTS)
@pytest.mark.parametrize("kind", [nr.LEFT, nr.RIGHT])
@pytest.mark.parametrize("arities", ARITY_TRIPLES)
@given(data=st.data())
@settings(max_examples=4, deadline=None)
def test_circle_is_graded_pre_lie_on_beta_cochains(beta, kind, arities, data):
    f, g, h = _draw_triple(data, beta, arities)
    c = lambda x, y: nr.circle(x, y, TwistMap.diagonal(beta), kind)
    associator_gh = c(c(f, g), h) - c(f, c(g, h))
    associator_hg = c(c(f, h), g) - c(f, c(h, g))
    if (arities[1] - 1) * (arities[2] - 1) % 2:
        associator_hg = -associator_hg
    assert associator_gh == associator_hg


@pytest.mark.parametrize("beta", TWISTS)
@pytest.mark.parametrize("kind", [nr.LEFT, nr.RIGHT])
@pytest.mark.parametrize("arities", ARITY_TRIPLES)
@given(data=st.data())
@settings(max_examples=4, deadline=None)
def test_bracket_graded_jacobi_on_beta_cochains(beta, kind, arities, data):
    f, g, h = _draw_triple(data, beta, arities)
    br = lambda x, y: nr.bracket(x, y, TwistMap.diagonal(beta), kind)
    last = br(g, br(f, h))
    if (arities[0] - 1) * (arities[1] - 1) % 2:
        last = -last
    assert br(f, br(g, h)) == br(br(f, g), h) + last


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
@given(data=st.data())
@settings(max_examples=8, deadline=None)
def test_lie_bracket_agrees_with_left_bracket_on_alternating_cochains(m, n, data):
    a = fixture("FIX-HEIS")
    f = data.draw(combinations(fixture_alternating_basis("FIX-HEIS", m)))
    g = data.draw(combinations(fixture_alternating_basis("FIX-HEIS", n)))
    lie = nr.bracket(f, g, a.twist, nr.LIE)
    assert lie == nr.bracket(f, g, a.twist, nr.LEFT)
    assert is_alternating(lie)
