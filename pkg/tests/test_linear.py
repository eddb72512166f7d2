from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services.linear import Matrix, Subspace

F = Fraction

entries = st.integers(min_value=-3, max_value=3)
matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda rows: st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)
    )
).map(Matrix.from_rows)


def test_rank_and_kernel_of_a_rank_one_matrix():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    assert la.rank(m) == 1
    kernel = la.kernel_basis(m)
    assert kernel.dim == 1
    assert m.apply(kernel.basis[0]) == (0, 0)


def test_rref_stays_rational():
    reduced, pivots = la.rref(Matrix.from_rows([[2, 1], [1, 3]]))
    assert pivots == (0, 1)
    assert all(isinstance(x, Fraction) for row in reduced for x in row)


def test_solve_linear_returns_none_when_inconsistent():
    m = Matrix.from_rows([[1, 1], [2, 2]])
    assert la.solve_linear(m, [F(1), F(3)]) is None
    x = la.solve_linear(m, [F(1), F(2)])
    assert m.apply(x) == (1, 2)


def test_solve_linear_rejects_wrong_length():
    with pytest.raises(InputError):
        la.solve_linear(Matrix.identity(2), [F(1)])


def test_inverse():
    m = Matrix.from_rows([[2, 1], [1, 1]])
    inv = la.inverse(m)
    assert m.matmul(inv) == Matrix.identity(2)
    assert la.inverse(Matrix.from_rows([[1, 2], [2, 4]])) is None


def test_intersection_of_planes_in_three_space():
    xy = Subspace(3, (la.unit_vector(3, 0), la.unit_vector(3, 1)))
    yz = Subspace(3, (la.unit_vector(3, 1), la.unit_vector(3, 2)))
    meet = la.intersection(xy, yz)
    assert meet.dim == 1 == la.intersection_dim(xy, yz)
    assert la.subspace_membership(la.unit_vector(3, 1), meet)
    assert not la.subspace_membership(la.unit_vector(3, 0), meet)


def test_complement_basis_completes_the_inner_space():
    inner = Subspace(3, (la.unit_vector(3, 0),))
    outer = Subspace(3, (la.vector([1, 1, 0]), la.unit_vector(3, 0), la.unit_vector(3, 2)))
    extra = la.complement_basis(inner, outer)
    assert extra.dim == 2


def test_solve_affine_recovers_a_linear_system():
    # x + 2y = 3, x - y = 0
    residual = lambda v: [v[0] + 2 * v[1] - 3, v[0] - v[1]]
    assert la.solve_affine(residual, 2) == (1, 1)
    assert la.solve_affine(lambda v: [v[0] - v[0] + 1], 1) is None


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    kernel = la.kernel_basis(m)
    assert la.rank(m) + kernel.dim == m.cols
    for v in kernel.basis:
        assert la.is_zero_vector(m.apply(v))


@given(matrices, st.data())
@settings(max_examples=60, deadline=None)
def test_solutions_substitute_exactly(m, data):
    x = [F(data.draw(entries)) for _ in range(m.cols)]
    b = m.apply(x)
    y = la.solve_linear(m, b)
    assert y is not None
    assert m.apply(y) == b
