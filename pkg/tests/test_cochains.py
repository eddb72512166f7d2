from fractions import Fraction

import pytest
from hypothesis import given, settings

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services.cochains import (
    BasedSpace, Cochain, TwistMap, alternating_basis, beta_cochain_basis, evaluate,
    full_space_dim, is_alternating, is_beta_cochain, is_pair_cochain, symmetric_leibniz_basis,
    twist_compose,
)
from tests.helpers import cochains, fixture

F = Fraction


def test_based_space_rejects_duplicate_labels():
    with pytest.raises(InputError):
        BasedSpace(2, ("a", "a"))
    with pytest.raises(InputError):
        BasedSpace(2, ("a",))


def test_cochain_drops_zero_values_and_rejects_bad_keys():
    space = BasedSpace.standard(2)
    c = Cochain(space, space, 2, {(0, 1): (0, 0), (1, 1): (1, 0)})
    assert c.support() == [(1, 1)]
    with pytest.raises(InputError):
        Cochain(space, space, 2, {(0, 2): (1, 0)})
    with pytest.raises(InputError):
        Cochain(space, space, 2, {(0, 1): (1,)})


def test_evaluate_is_multilinear():
    space = BasedSpace.standard(2)
    c = Cochain(space, space, 2, {(0, 0): (1, 0), (1, 0): (0, 2)})
    # (e1 + 3e2, 2e1) = 2·c(e1,e1) + 6·c(e2,e1)
    assert evaluate(c, [(F(1), F(3)), (F(2), F(0))]) == (2, 12)


def test_arithmetic_cancels():
    space = BasedSpace.standard(2)
    c = Cochain(space, space, 1, {(0,): (1, 1)})
    assert (c - c).is_zero()
    assert (c + c) == c.scale(2)


def test_beta_cochain_basis_dims_for_diagonal_twist():
    a = fixture("FIX-DIAG-BETA")
    assert beta_cochain_basis(a.space, a.twist, 1).dim == 2
    assert beta_cochain_basis(a.space, a.twist, 2).dim == 3


def test_identity_twist_gives_the_full_space():
    space = BasedSpace.standard(2)
    for k in (1, 2, 3):
        assert beta_cochain_basis(space, TwistMap.identity(2), k).dim == full_space_dim(space, k)


def test_alternating_basis_dim():
    space = BasedSpace.standard(3)
    basis = alternating_basis(space, TwistMap.identity(3), 2)
    # Λ²(ℚ³)* ⊗ ℚ³
    assert basis.dim == 9
    assert all(is_alternating(f) for f in basis.members)


def test_symmetric_basis_members_flip_under_insertion():
    a = fixture("FIX-HEIS")
    basis = symmetric_leibniz_basis(a.space, a.twist, 2, a.product)
    full = beta_cochain_basis(a.space, a.twist, 2)
    assert 0 < basis.dim < full.dim
    assert all(is_pair_cochain(f, a.product) for f in basis.members)


def test_pair_condition_on_fixture_products():
    lz2, nonleib = fixture("FIX-LZ2"), fixture("FIX-NONLEIB1")
    # d takes values in span(e1), and e1 multiplies to zero on both sides
    assert is_pair_cochain(lz2.product, lz2.product)
    assert not is_pair_cochain(nonleib.product, nonleib.product)
    heis = fixture("FIX-HEIS")
    assert is_pair_cochain(heis.product, heis.product)


def test_basis_coordinates_round_trip():
    a = fixture("FIX-DIAG-BETA")
    basis = beta_cochain_basis(a.space, a.twist, 2)
    f = basis.combine([F(1), F(-2), F(3)])
    assert basis.contains(f)
    assert basis.coordinates(f) is not None
    assert basis.combine(basis.coordinates(f)) == f


@given(cochains(dim=2, arity=2))
@settings(max_examples=40, deadline=None)
def test_identity_twist_makes_every_cochain_equivariant(f):
    beta = TwistMap.identity(2)
    assert twist_compose(f, beta) == f
    assert is_beta_cochain(f, beta)


def test_scaled_twist_equivariance():
    space = BasedSpace.standard(1)
    beta = TwistMap.diagonal([2])
    # f(x, y) = x·y: f(2x, 2y) = 4xy ≠ 2xy
    f = Cochain(space, space, 2, {(0, 0): (1,)})
    assert not is_beta_cochain(f, beta)
    assert la.is_zero_vector(evaluate(Cochain.zero(space, 2), [(F(1),), (F(1),)]))
