import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homnr.errors import InputError
from homnr.services.cochains import Cochain
from homnr.services.cohomology import adjoint_setting, coboundary
from homnr.services.deformations import (
    EXACT, TRUNCATED, FormalAutomorphism, FormalDeformation, check_equivalence,
    defects_by_interpolation, deformation_defect, extend_order, infinitesimal_class,
    is_deformation, obstruction_report, order_one_equivalence, transport_deformation,
)
from homnr.services.linear import Matrix
from tests.helpers import abelian, combinations, fixture, transported


def line_deformation() -> FormalDeformation:
    """Abelian line deformed by e1·e1 = e1: fine to first order, obstructed at the second."""
    base = abelian(1, prefix="e")
    d1 = Cochain(base.space, base.space, 2, {(0, 0): (1,)})
    return FormalDeformation(base, (d1,))


def leibniz_deformation(order: int = 1) -> FormalDeformation:
    """t·[FIX-LZ2] over the abelian plane."""
    base = fixture("FIX-ABELIAN2")
    coeffs = (fixture("FIX-LZ2").product,) + (Cochain.zero(base.space, 2),) * (order - 1)
    return FormalDeformation(base, coeffs)


def test_leibniz_product_deforms_the_abelian_plane_exactly():
    d = leibniz_deformation()
    assert is_deformation(d, TRUNCATED)
    assert is_deformation(d, EXACT)
    assert len(deformation_defect(d, EXACT)) == 3


def test_line_deformation_is_only_truncated():
    d = line_deformation()
    assert is_deformation(d, TRUNCATED)
    assert not is_deformation(d, EXACT)
    top = deformation_defect(d, EXACT)[2]
    assert top.support() == [(0, 0, 0)]


def test_interpolated_defects_match_the_exact_ones():
    d = line_deformation()
    assert defects_by_interpolation(d) == deformation_defect(d, EXACT)
    d = leibniz_deformation(2)
    assert defects_by_interpolation(d) == deformation_defect(d, EXACT)


def test_line_deformation_does_not_extend():
    d1, ranks = extend_order(line_deformation())
    assert d1 is None
    assert ranks == (0, 1)


def test_leibniz_deformation_extends_by_zero():
    d2, ranks = extend_order(leibniz_deformation())
    assert d2 is not None and d2.is_zero()
    assert ranks[0] == ranks[1]


def test_obstruction_report_for_the_line():
    report = obstruction_report(line_deformation(), EXACT, extend=True)
    assert not report.is_deformation
    assert report.rank == (0, 1)
    (ob,) = report.obstructions
    assert ob.order == 2
    assert ob.is_cocycle and not ob.is_coboundary


def test_non_equivariant_coefficient_is_refused():
    base = fixture("FIX-DIAG-BETA")
    d1 = Cochain(base.space, base.space, 2, {(0, 0): (0, 1)})
    with pytest.raises(InputError) as exc:
        FormalDeformation(base, (d1,))
    assert exc.value.field == "coeffs[1]"


def test_extending_a_non_deformation_is_refused():
    d = line_deformation()
    with pytest.raises(InputError):
        extend_order(d.extended(Cochain(d.base.space, d.base.space, 2, {(0, 0): (1,)})))


def test_order_one_equivalence_finds_a_generator():
    base = fixture("FIX-LZ2")
    zero = FormalDeformation(base, (Cochain.zero(base.space, 2),))
    # D(id) = d, so d′₁ = −d is equivalent to d₁ = 0
    shifted = FormalDeformation(base, (-base.product,))
    phi = order_one_equivalence(zero, shifted)
    assert phi is not None
    assert coboundary(base, Cochain.linear_map(phi, base.space)) == base.product
    assert check_equivalence(zero, shifted, FormalAutomorphism(phi, 1)).holds


def test_order_one_equivalence_can_fail():
    base = fixture("FIX-LZ2")
    zero = FormalDeformation(base, (Cochain.zero(base.space, 2),))
    other = FormalDeformation(base, (Cochain(base.space, base.space, 2, {(0, 0): (1, 0)}),))
    assert order_one_equivalence(zero, other) is None


def test_transported_deformation_is_equivalent():
    d = leibniz_deformation(2)
    phi = FormalAutomorphism(Matrix.from_rows([[1, 1], [0, 2]]), 2)
    moved = transport_deformation(d, phi)
    report = check_equivalence(d, moved, phi)
    assert report.holds and report.beta_commutes
    assert report.failing_orders == ()


def test_wrong_generator_is_reported_by_order():
    d = leibniz_deformation(1)
    zero = FormalDeformation(d.base, (Cochain.zero(d.base.space, 2),))
    report = check_equivalence(d, zero, FormalAutomorphism(Matrix.identity(2), 1))
    assert not report.holds
    assert report.failing_orders == (1,)


def test_infinitesimal_class_of_an_inner_deformation():
    base = fixture("FIX-LZ2")
    d = FormalDeformation(base, (base.product,))
    cls = infinitesimal_class(d)
    assert cls.is_cocycle and cls.is_trivial
    assert coboundary(base, Cochain.linear_map(cls.potential, base.space)) == base.product


def test_automorphism_series_truncates_the_exponential():
    nilpotent = Matrix.from_rows([[0, 1], [0, 0]])
    series = FormalAutomorphism(nilpotent, 2).series()
    assert series == [Matrix.identity(2), nilpotent, Matrix.zeros(2, 2)]
    assert FormalAutomorphism(Matrix.identity(2), 3).term(3) == Matrix.diagonal(["1/6", "1/6"])
    with pytest.raises(InputError):
        FormalAutomorphism(nilpotent, -1)


@given(base=transported(["FIX-LZ2", "FIX-DIAG-BETA", "FIX-HEIS-BETA", "FIX-SL2"]), data=st.data())
@settings(max_examples=20, deadline=None)
def test_order_one_equivalence_recovers_a_transport(base, data):
    setting = adjoint_setting(base)
    d = FormalDeformation(base, (data.draw(combinations(setting.basis(2))),))
    phi = data.draw(combinations(setting.basis(1))).as_matrix()
    moved = transport_deformation(d, FormalAutomorphism(phi, 1))
    found = order_one_equivalence(d, moved)
    assert found is not None
    assert check_equivalence(d, moved, FormalAutomorphism(found, 1)).holds
    assert coboundary(base, Cochain.linear_map(found, base.space)) == \
        coboundary(base, Cochain.linear_map(phi, base.space))
