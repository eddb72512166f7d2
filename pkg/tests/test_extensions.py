from typing import List

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnr.errors import InputError, VerificationFailure
from homnr.services import linear as la
from homnr.services.cohomology import class_representatives, cocycle_subspace, complex_build, is_coboundary
from homnr.services.extensions import (
    ExtensionAlgebra, build_extension, classify, coboundary_perturb, decompose, decompose_extension,
    direct_sum, equivalent_abelian, ext_group_dims, is_quasiderivation, semidirect_lie, verify_cocycle,
)
from homnr.services.linear import Matrix
from homnr.services.representations import adjoint_representation, verify_representation
from homnr.services.structures import HOM_LIE
from tests.helpers import abelian, fixture, l_to_v, lz2_character, lz2_over_q, small


def square_extension() -> ExtensionAlgebra:
    """FIX-LZ2 extended by ℚ with θ(e2, e2) = 1."""
    rep = lz2_over_q()
    return build_extension(rep, l_to_v(rep, {(1, 1): (1,)}))


def test_build_and_decompose_reassemble():
    ext = square_extension()
    assert ext.total.dim == 3
    assert ext.total.mul((0, 1, 0), (0, 1, 0)) == (1, 0, 1)

    parts = decompose_extension(ext)
    assert parts.theta == ext.theta
    assert parts.rep.L.product == ext.rep.L.product
    assert parts.isomorphism == Matrix.identity(3)


def test_section_through_the_module_removes_the_cocycle():
    ext = square_extension()
    # s(e1) = e1 + f1, s(e2) = e2
    section = Matrix.from_rows([[1, 0], [0, 1], [1, 0]])
    parts = decompose(ext.total, ext.inclusion, ext.projection, section)
    assert parts.theta.is_zero()
    assert parts.retraction == Matrix.from_rows([[-1, 0, 1]])


def test_decompose_refuses_a_kernel_that_is_not_an_ideal():
    a = fixture("FIX-LZ2")
    with pytest.raises(InputError) as exc:
        decompose(a, Matrix.from_rows([[0], [1]]), Matrix.from_rows([[1, 0]]))
    assert exc.value.field == "projection"


def test_non_cocycle_is_refused():
    rep = lz2_over_q()
    with pytest.raises(VerificationFailure):
        build_extension(rep, l_to_v(rep, {(0, 0): (1,)}))


def test_classification_of_the_square_extension():
    c = classify(square_extension())
    assert c.flags() == {"trivial": False, "central": True, "abelian": True, "semidirect": False}
    # the graph of e1 ↦ f1 is a complementary ideal although θ ≠ 0
    assert c.trivial_ideal and not c.trivial_agree
    assert c.central_direct


def test_direct_sum_is_trivial_both_ways():
    c = classify(direct_sum(fixture("FIX-LZ2"), abelian(1)))
    assert c.trivial and c.trivial_ideal and c.trivial_agree


def test_coboundary_perturbation_kills_the_square_cocycle():
    ext = square_extension()
    result = coboundary_perturb(ext, Matrix.from_rows([[1, 0]]))
    assert result.holds
    assert result.witnesses == ()
    assert result.extension.theta.is_zero()
    assert result.isomorphism == Matrix.from_rows([[1, 0, 0], [0, 1, 0], [1, 0, 1]])


def test_perturbation_shape_is_checked():
    with pytest.raises(InputError) as exc:
        coboundary_perturb(square_extension(), Matrix.from_rows([[1, 0, 0]]))
    assert exc.value.field == "h"


def test_square_extension_is_equivalent_to_the_trivial_one():
    rep = lz2_over_q()
    h = equivalent_abelian(square_extension(), build_extension(rep))
    assert h is not None
    assert h.entries[0][0] == -1


def _classes(exts: List[ExtensionAlgebra]) -> List[List[int]]:
    classes: List[List[int]] = []
    for i, ext in enumerate(exts):
        for group in classes:
            if equivalent_abelian(ext, exts[group[0]]) is not None:
                group.append(i)
                break
        else:
            classes.append([i])
    return classes


def test_equivalence_classes_follow_second_cohomology():
    rep = lz2_over_q()
    c = complex_build(rep, 2)
    (r,) = class_representatives(c, 2)
    b = rep.lift_theta(l_to_v(rep, {(1, 1): (1,)}))
    thetas = [rep.zero_cochain(), b, r, r + b]
    exts = [build_extension(rep, t) for t in thetas]

    assert _classes(exts) == [[0, 1], [2, 3]]
    for i in range(4):
        for j in range(4):
            same = equivalent_abelian(exts[i], exts[j]) is not None
            assert same == is_coboundary(c, thetas[i] - thetas[j])


def test_ext_group_dims():
    assert ext_group_dims(lz2_over_q()) == (2, 1, 1)


def test_adjoint_representation_of_the_heisenberg_algebra():
    rep = adjoint_representation(fixture("FIX-HEIS"))
    assert rep.kind == HOM_LIE
    assert verify_representation(rep).holds


def test_semidirect_sum_with_a_character():
    L = fixture("FIX-HEIS")
    V = abelian(1, HOM_LIE)
    ext = semidirect_lie(L, V, [Matrix.from_rows([[1]]), Matrix.from_rows([[2]]), Matrix.from_rows([[0]])])
    c = classify(ext)
    assert c.flags() == {"trivial": False, "central": False, "abelian": True, "semidirect": True}
    assert not c.trivial_ideal


def test_semidirect_sum_needs_one_matrix_per_basis_element():
    with pytest.raises(InputError):
        semidirect_lie(fixture("FIX-HEIS"), abelian(1, HOM_LIE), [Matrix.from_rows([[1]])])


def test_quasiderivation_of_the_leibniz_square():
    dp = is_quasiderivation(fixture("FIX-LZ2"), Matrix.identity(2))
    assert dp is not None
    assert dp.column(0) == (2, 0)


def test_semidirect_sum_with_a_nilpotent_action():
    L = fixture("FIX-HEIS")
    V = abelian(2, HOM_LIE)
    nilpotent = Matrix.from_rows([[0, 1], [0, 0]])
    zero = Matrix.from_rows([[0, 0], [0, 0]])
    assert is_quasiderivation(V, nilpotent, 1) is not None
    ext = semidirect_lie(L, V, [nilpotent, zero, zero])
    assert ext.total.dim == 5
    # [e1, f2] = f1 and [f2, e1] = −f1
    assert ext.total.mul((1, 0, 0, 0, 0), (0, 0, 0, 0, 1)) == (0, 0, 0, 1, 0)
    assert ext.total.mul((0, 0, 0, 0, 1), (1, 0, 0, 0, 0)) == (0, 0, 0, -1, 0)
    assert classify(ext).flags() == {"trivial": False, "central": False, "abelian": True, "semidirect": True}


def test_semidirect_sum_refuses_an_action_that_is_not_a_representation():
    L = fixture("FIX-HEIS")
    V = abelian(2, HOM_LIE)
    n = Matrix.from_rows([[0, 1], [0, 0]])
    # [λ(e1), λ(e2)] = diag(1, −1) but λ([e1, e2]) = λ(e3) = 0
    with pytest.raises(VerificationFailure):
        semidirect_lie(L, V, [n, n.transpose(), Matrix.from_rows([[0, 0], [0, 0]])])


def test_cocycle_check_on_the_square_algebra():
    rep = lz2_over_q()
    assert verify_cocycle(rep, l_to_v(rep, {(1, 1): (1,)})).holds
    report = verify_cocycle(rep, l_to_v(rep, {(0, 0): (1,)}))
    assert not report.holds
    # θ(e1, e1) is reached through e1 = [e2, e2] in each slot
    assert report.witness_args() == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


@given(s=small, opposite=st.booleans(), data=st.data())
@settings(max_examples=20, deadline=None)
def test_decomposing_a_built_extension_returns_its_pieces(s, opposite, data):
    rep = lz2_character(s, opposite)
    c = complex_build(rep, 2)
    frame = c.basis(2).frame
    vec = la.zero_vector(frame.size)
    for v in cocycle_subspace(c, 2).basis:
        vec = la.add_vectors(vec, la.scale_vector(data.draw(small), v))
    theta = frame.from_vector(vec)

    ext = build_extension(rep, theta)
    parts = decompose_extension(ext)
    assert parts.theta == ext.theta == theta
    assert parts.rep.lambda_l == rep.lambda_l
    assert parts.rep.lambda_r == rep.lambda_r
    assert parts.isomorphism == Matrix.identity(3)

    # s(e2) = e2 + h·f1 moves θ by the coboundary of h
    h = data.draw(small)
    moved = decompose(ext.total, ext.inclusion, ext.projection, Matrix.from_rows([[1, 0], [0, 1], [0, h]]))
    assert moved.rep.lambda_l == rep.lambda_l
    assert is_coboundary(c, moved.theta - theta)
