"""
Truncated one-parameter formal deformations d_t = d₀ + t d₁ + … + t^N d_N.

All brackets are the base kind's bracket on the base space with β fixed.
Defects a_s = Σ_{i+j=s} [d_i, d_j]; the order-s obstruction is
Ψ_s = Σ_{i=1}^{s−1} [d_i, d_{s−i}], and extending to order s means solving
2·D(d_s) = −Ψ_s in the arity-2 cochain subspace.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services import nr_bracket as nr
from homnr.services.cochains import Cochain, postcompose, precompose
from homnr.services.cohomology import (
    CochainComplex, CoboundarySetting, adjoint_setting, complex_build,
)
from homnr.services.linear import Matrix
from homnr.services.structures import HomAlgebra

logger = logging.getLogger(__name__)

TRUNCATED = "truncated"
EXACT     = "exact"
MODES     = (TRUNCATED, EXACT)


@dataclass(frozen=True)
class FormalDeformation:
    base: HomAlgebra
    coeffs: Tuple[Cochain, ...]

    def __post_init__(self) -> None:
        setting = adjoint_setting(self.base)
        for i, c in enumerate(self.coeffs, start=1):
            if c.arity != 2:
                raise InputError(f"coefficient d{i} has arity {c.arity}", field=f"coeffs[{i}]")
            problem = setting.violation(c)
            if problem:
                raise InputError(f"coefficient d{i}: {problem}", field=f"coeffs[{i}]")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def setting(self) -> CoboundarySetting:
        return adjoint_setting(self.base)

    def coefficient(self, i: int) -> Cochain:
        """d_i, with d₀ the base product and zero past the order."""
        if i == 0:
            return self.base.product
        if i <= self.order:
            return self.coeffs[i - 1]
        return Cochain.zero(self.base.space, 2)

    def truncated(self, n: int) -> "FormalDeformation":
        return FormalDeformation(self.base, self.coeffs[:n])

    def extended(self, d_next: Cochain) -> "FormalDeformation":
        return FormalDeformation(self.base, self.coeffs + (d_next,))


@dataclass(frozen=True)
class FormalAutomorphism:
    """φ_t = Σ_{i≤N} t^i φ^i / i!."""
    generator: Matrix
    order: int

    def __post_init__(self) -> None:
        if not self.generator.is_square():
            raise InputError("generator must be a square matrix", field="phi")
        if self.order < 0:
            raise InputError("order must be non-negative", field="order")

    def term(self, i: int) -> Matrix:
        if i > self.order:
            return Matrix.zeros(self.generator.rows, self.generator.cols)
        scale = Fraction(1, factorial(i))
        p = self.generator.power(i)
        return Matrix.from_rows([[scale * x for x in row] for row in p.entries], p.cols)

    def series(self) -> List[Matrix]:
        """exp(tφ) mod t^(N+1), one coefficient matrix per power of t."""
        return [self.term(i) for i in range(self.order + 1)]

    def commutes_with(self, beta: Matrix) -> bool:
        return self.generator.matmul(beta) == beta.matmul(self.generator)


def _bracket(setting: CoboundarySetting, f: Cochain, g: Cochain) -> Cochain:
    return nr.bracket(f, g, setting.twist, setting.operator)


# ─── Defects and obstructions ────────────────────────────────────────────────

def deformation_defect(d: FormalDeformation, mode: str = TRUNCATED) -> List[Cochain]:
    """a_0, …, a_N (truncated) or a_0, …, a_2N (exact)."""
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}", field="mode")
    setting = d.setting
    top = d.order if mode == TRUNCATED else 2 * d.order
    out = []
    for s in range(top + 1):
        total = Cochain.zero(d.base.space, 3)
        for i in range(s + 1):
            j = s - i
            if i <= d.order and j <= d.order:
                total = total + _bracket(setting, d.coefficient(i), d.coefficient(j))
        out.append(total)
    return out


def defects_by_interpolation(d: FormalDeformation) -> List[Cochain]:
    """Exact-mode defects read off [d_t, d_t] sampled at 2N+1 values of t."""
    setting = d.setting
    space = d.base.space
    degree = 2 * d.order
    samples = [Fraction(t) for t in range(degree + 1)]
    values = []
    for t in samples:
        d_t = d.coefficient(0)
        for i in range(1, d.order + 1):
            d_t = d_t + d.coefficient(i).scale(t ** i)
        values.append(_bracket(setting, d_t, d_t))
    vandermonde = Matrix.from_rows([[t ** p for p in range(degree + 1)] for t in samples])
    keys = sorted({k for v in values for k in v.coeffs})
    coeffs: List[Dict] = [dict() for _ in range(degree + 1)]
    for key in keys:
        for o in range(space.dim):
            column = [v.value(key)[o] for v in values]
            poly = la.solve_linear(vandermonde, column)
            for p, c in enumerate(poly):
                if c:
                    coeffs[p].setdefault(key, [la.ZERO] * space.dim)[o] = c
    return [Cochain(space, space, 3, c) for c in coeffs]


def is_deformation(d: FormalDeformation, mode: str = TRUNCATED) -> bool:
    return all(a.is_zero() for a in deformation_defect(d, mode))


@dataclass(frozen=True)
class Obstruction:
    order: int
    cochain: Cochain
    is_cocycle: bool
    is_coboundary: bool
    extension_witness: Optional[Cochain] = None


@dataclass(frozen=True)
class ObstructionReport:
    mode: str
    defects: Tuple[Cochain, ...]
    obstructions: Tuple[Obstruction, ...]
    is_deformation: bool
    rank: Optional[Tuple[int, int]] = None   # (rank D₂, rank of D₂ augmented by −Ψ/2)


def _complex(d: FormalDeformation) -> CochainComplex:
    return complex_build(d.base, 2)


def obstruction(d: FormalDeformation, s: int, complex_: Optional[CochainComplex] = None) -> Obstruction:
    if not 2 <= s <= d.order + 1:
        raise InputError(f"obstruction order must lie in 2..{d.order + 1}, got {s}", field="s")
    c = complex_ or _complex(d)
    setting = d.setting
    psi = Cochain.zero(d.base.space, 3)
    for i in range(1, s):
        psi = psi + _bracket(setting, d.coefficient(i), d.coefficient(s - i))
    cocycle = setting.apply(psi).is_zero()
    witness = _solve_order(c, psi)
    return Obstruction(s, psi, cocycle, witness is not None, witness)


def _target(psi: Cochain) -> Cochain:
    return psi.scale(Fraction(-1, 2))


def _solve_order(c: CochainComplex, psi: Cochain) -> Optional[Cochain]:
    frame = c.setting.frame(3)
    x = la.solve_linear(c.operator_matrix(2), frame.to_vector(_target(psi)))
    return None if x is None else c.basis(2).combine(x)


def extend_order(d: FormalDeformation) -> Tuple[Optional[Cochain], Tuple[int, int]]:
    """A next coefficient d_{N+1} and the rank certificate (rank D₂, augmented rank)."""
    if not is_deformation(d, TRUNCATED):
        raise InputError("only a truncated deformation can be extended", field="coeffs")
    c = _complex(d)
    ob = obstruction(d, d.order + 1, c)
    matrix = c.operator_matrix(2)
    rhs = c.setting.frame(3).to_vector(_target(ob.cochain))
    ranks = (la.rank(matrix), la.rank(matrix.hstack(Matrix.from_columns([rhs], matrix.rows))))
    if ob.extension_witness is None:
        logger.info("order %d does not extend: rank %d < %d", d.order, *ranks)
        return None, ranks
    if not is_deformation(d.extended(ob.extension_witness), TRUNCATED):
        raise RuntimeError("extension coefficient fails re-substitution")
    return ob.extension_witness, ranks


def obstruction_report(d: FormalDeformation, mode: str = TRUNCATED, extend: bool = False) -> ObstructionReport:
    defects = tuple(deformation_defect(d, mode))
    holds = all(a.is_zero() for a in defects)
    c = _complex(d)
    obstructions = tuple(obstruction(d, s, c) for s in range(2, d.order + 2))
    rank = None
    if extend:
        if not is_deformation(d, TRUNCATED):
            raise InputError("only a truncated deformation can be extended", field="coeffs")
        _, rank = extend_order(d)
    return ObstructionReport(mode, defects, obstructions, holds, rank)


# ─── Equivalence ─────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class EquivalenceReport:
    holds: bool
    beta_commutes: bool
    failing_orders: Tuple[int, ...] = ()
    defects: Dict[int, Cochain] = field(default_factory=dict)


def _same_setup(d1: FormalDeformation, d2: FormalDeformation) -> None:
    if d1.base.space != d2.base.space or d1.base.product != d2.base.product or d1.base.twist != d2.base.twist:
        raise InputError("deformations must share their base algebra", field="base")
    if d1.order != d2.order:
        raise InputError(f"orders differ: {d1.order} vs {d2.order}", field="coeffs")


def _left_side(d: FormalDeformation, phi: FormalAutomorphism, s: int) -> Cochain:
    """Σ_{i+j=s} φ_i ∘ d_j."""
    total = Cochain.zero(d.base.space, 2)
    for i in range(s + 1):
        total = total + postcompose(phi.term(i), d.coefficient(s - i))
    return total


def _right_terms(d: FormalDeformation, phi: FormalAutomorphism, s: int, skip_top: bool = False) -> Cochain:
    """Σ_{i+j+l=s} d_i(φ_j ·, φ_l ·), leaving out i = s when ``skip_top``."""
    space = d.base.space
    total = Cochain.zero(space, 2)
    for i in range(s + 1):
        if skip_top and i == s:
            continue
        for j in range(s - i + 1):
            l = s - i - j
            total = total + precompose(d.coefficient(i), [phi.term(j), phi.term(l)], space)
    return total


def check_equivalence(d1: FormalDeformation, d2: FormalDeformation, phi: FormalAutomorphism) -> EquivalenceReport:
    """φ_t ∘ d_t = d′_t ⋆ φ_t and φ_t ∘ β = β ∘ φ_t, coefficientwise mod t^(N+1)."""
    _same_setup(d1, d2)
    if phi.generator.rows != d1.base.dim:
        raise InputError("generator dimension does not match the base", field="phi")
    commutes = phi.commutes_with(d1.base.twist.matrix)
    failing, defects = [], {}
    for s in range(d1.order + 1):
        gap = _left_side(d1, phi, s) - _right_terms(d2, phi, s)
        if not gap.is_zero():
            failing.append(s)
            defects[s] = gap
    holds = commutes and not failing
    return EquivalenceReport(holds, commutes, tuple(failing), defects)


def transport_deformation(d: FormalDeformation, phi: FormalAutomorphism) -> FormalDeformation:
    """The d′_t with φ_t ∘ d_t = d′_t ⋆ φ_t, solved order by order."""
    if not phi.commutes_with(d.base.twist.matrix):
        raise InputError("generator must commute with β", field="phi")
    coeffs: List[Cochain] = []
    for s in range(1, d.order + 1):
        known = FormalDeformation(d.base, tuple(coeffs))
        coeffs.append(_left_side(d, phi, s) - _right_terms(known, phi, s, skip_top=True))
    return FormalDeformation(d.base, tuple(coeffs))


def order_one_equivalence(d1: FormalDeformation, d2: FormalDeformation) -> Optional[Matrix]:
    """A generator φ commuting with β with d′₁ = d₁ − D(φ), if one exists."""
    _same_setup(d1, d2)
    if d1.order < 1:
        raise InputError("order-one equivalence needs N ≥ 1", field="coeffs")
    c = complex_build(d1.base, 1)
    gap = d1.coefficient(1) - d2.coefficient(1)
    x = la.solve_linear(c.operator_matrix(1), c.setting.frame(2).to_vector(gap))
    if x is None:
        return None
    return c.basis(1).combine(x).as_matrix()


@dataclass(frozen=True)
class InfinitesimalClass:
    is_cocycle: bool
    is_trivial: bool
    potential: Optional[Matrix] = None


def infinitesimal_class(d: FormalDeformation) -> InfinitesimalClass:
    if d.order < 1:
        raise InputError("an infinitesimal class needs N ≥ 1", field="coeffs")
    c = complex_build(d.base, 1)
    d1 = d.coefficient(1)
    cocycle = d.setting.apply(d1).is_zero()
    x = la.solve_linear(c.operator_matrix(1), c.setting.frame(2).to_vector(d1))
    potential = c.basis(1).combine(x).as_matrix() if x is not None else None
    return InfinitesimalClass(cocycle, x is not None, potential)
