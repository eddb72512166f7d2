"""
Representations of a Hom-algebra L on a Hom-module V.

Everything lives in the ambient space M = L ⊕ V (L first): the actions
λ_l: L×V→V, λ_r: V×L→V, a cocycle θ: L×L→V and the products δ, μ are
ambient cochains supported on their own blocks, and the ambient twist is
α ⊕ α_V. The square ½[d,d] of d = δ+λ_l+λ_r+μ+θ splits by how many
arguments come from V, which gives the six conditions L1–L6.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services import nr_bracket as nr
from homnr.services.cochains import (
    BasedSpace, Cochain, TwistMap, evaluate, postcompose, twist_compose,
)
from homnr.services.linear import Matrix, Vector
from homnr.services.structures import (
    HOM_LIE, LEFT_LEIBNIZ, RIGHT_LEIBNIZ, SYMMETRIC_LEIBNIZ,
    HomAlgebra, VerificationReport, Witness, cochain_witnesses,
)

logger = logging.getLogger(__name__)

L_BLOCK = "L"
V_BLOCK = "V"


@dataclass(frozen=True)
class SplitLayout:
    L: BasedSpace
    V: BasedSpace

    @property
    def n_l(self) -> int:
        return self.L.dim

    @property
    def n_v(self) -> int:
        return self.V.dim

    @property
    def ambient(self) -> BasedSpace:
        if set(self.L.labels) & set(self.V.labels):
            return BasedSpace(self.n_l + self.n_v,
                              tuple(f"L.{x}" for x in self.L.labels) + tuple(f"V.{x}" for x in self.V.labels))
        return self.L.direct_sum(self.V)

    @property
    def l_indices(self) -> Tuple[int, ...]:
        return tuple(range(self.n_l))

    @property
    def v_indices(self) -> Tuple[int, ...]:
        return tuple(range(self.n_l, self.n_l + self.n_v))

    def block_indices(self, block: str) -> Tuple[int, ...]:
        return self.l_indices if block == L_BLOCK else self.v_indices

    def to_ambient(self, block: str, i: int) -> int:
        return i if block == L_BLOCK else self.n_l + i

    def inclusion(self) -> Matrix:
        """i₀: V → M."""
        n = self.n_l + self.n_v
        return Matrix.from_columns([la.unit_vector(n, j) for j in self.v_indices], n)

    def l_inclusion(self) -> Matrix:
        n = self.n_l + self.n_v
        return Matrix.from_columns([la.unit_vector(n, j) for j in self.l_indices], n)

    def projection(self) -> Matrix:
        """π₀: M → L."""
        return self.l_inclusion().transpose()

    def embed(self, block: str, v: Sequence[Fraction]) -> Vector:
        pad_l = [la.ZERO] * self.n_l
        pad_v = [la.ZERO] * self.n_v
        return tuple(list(v) + pad_v) if block == L_BLOCK else tuple(pad_l + list(v))

    def lift(self, f: Cochain, slots: Sequence[str], out: str) -> Cochain:
        """Ambient copy of a cochain whose slots read from the given blocks."""
        space = self.ambient
        coeffs = {}
        for key, value in f.coeffs.items():
            coeffs[tuple(self.to_ambient(b, i) for b, i in zip(slots, key))] = self.embed(out, value)
        return Cochain(space, space, f.arity, coeffs)

    def supported_on(self, f: Cochain, slots: Sequence[str], out: str) -> bool:
        allowed = [set(self.block_indices(b)) for b in slots]
        outs = set(self.block_indices(out))
        for key, value in f.coeffs.items():
            if any(i not in allowed[s] for s, i in enumerate(key)):
                return False
            if any(y and o not in outs for o, y in enumerate(value)):
                return False
        return True


# slot patterns of the components
PATTERNS = {
    "delta":    ((L_BLOCK, L_BLOCK), L_BLOCK),
    "lambda_l": ((L_BLOCK, V_BLOCK), V_BLOCK),
    "lambda_r": ((V_BLOCK, L_BLOCK), V_BLOCK),
    "mu":       ((V_BLOCK, V_BLOCK), V_BLOCK),
    "theta":    ((L_BLOCK, L_BLOCK), V_BLOCK),
}


@dataclass(frozen=True)
class RepresentationData:
    L: HomAlgebra
    V: HomAlgebra
    lambda_l: Cochain
    lambda_r: Cochain

    def __post_init__(self) -> None:
        layout = self.layout
        for name in ("lambda_l", "lambda_r"):
            c = getattr(self, name)
            if c.arity != 2 or c.domain != layout.ambient:
                raise InputError("action must be an arity-2 cochain on L ⊕ V", field=name)
            slots, out = PATTERNS[name]
            if not layout.supported_on(c, slots, out):
                raise InputError(f"action has coefficients outside {'×'.join(slots)}→{out}", field=name)

    @property
    def layout(self) -> SplitLayout:
        return SplitLayout(self.L.space, self.V.space)

    @property
    def kind(self) -> str:
        return self.L.kind

    @property
    def space(self) -> BasedSpace:
        return self.layout.ambient

    @property
    def twist(self) -> TwistMap:
        return self.L.twist.direct_sum(self.V.twist)

    @property
    def delta(self) -> Cochain:
        return self.layout.lift(self.L.product, *PATTERNS["delta"])

    @property
    def mu(self) -> Cochain:
        return self.layout.lift(self.V.product, *PATTERNS["mu"])

    def action(self) -> Cochain:
        return self.lambda_l + self.lambda_r

    def complex_structure(self) -> Cochain:
        """δ + λ_l + λ_r: the structure whose bracket is the values-in-V coboundary."""
        return self.delta + self.action()

    def total_product(self, theta: Optional[Cochain] = None) -> Cochain:
        d = self.delta + self.action() + self.mu
        return d + theta if theta is not None else d

    def zero_cochain(self, arity: int = 2) -> Cochain:
        return Cochain.zero(self.space, arity)

    def lift_theta(self, theta: Cochain) -> Cochain:
        """Accept θ either as an ambient cochain or on L with values in V."""
        if theta.domain == self.space:
            if not self.layout.supported_on(theta, *PATTERNS["theta"]):
                raise InputError("cocycle has coefficients outside L×L→V", field="theta")
            return theta
        if theta.domain == self.L.space and theta.codomain == self.V.space:
            return self.layout.lift(theta, *PATTERNS["theta"])
        raise InputError("cocycle must map L×L to V", field="theta")


def trivial_representation(L: HomAlgebra, V: HomAlgebra) -> RepresentationData:
    space = SplitLayout(L.space, V.space).ambient
    zero = Cochain.zero(space, 2)
    return RepresentationData(L, V, zero, zero)


def adjoint_representation(L: HomAlgebra, prefix: str = "v") -> RepresentationData:
    """V = a copy of L, μ = δ, λ_l(x,v) = [x,v], λ_r(v,y) = [v,y]."""
    space = BasedSpace.standard(L.dim, prefix)
    V = HomAlgebra(space, Cochain(space, space, 2, dict(L.product.coeffs)), L.twist, L.kind,
                   name=f"{L.name}-module" if L.name else "adjoint-module")
    layout = SplitLayout(L.space, space)
    # the stored constants are read with slots from (L,V) or (V,L) and values in V
    shared = Cochain(L.space, space, 2, dict(L.product.coeffs))
    lam_l = layout.lift(shared, *PATTERNS["lambda_l"])
    lam_r = layout.lift(shared, *PATTERNS["lambda_r"])
    return RepresentationData(L, V, lam_l, lam_r)


# ─── The six conditions ──────────────────────────────────────────────────────

def _square_kind(kind: str) -> str:
    return nr.RIGHT if kind == RIGHT_LEIBNIZ else nr.LEFT


def _equivariance_witnesses(f: Cochain, twist: TwistMap, condition: str) -> List[Witness]:
    residual = postcompose(twist.matrix, f) - twist_compose(f, twist)
    return cochain_witnesses(residual, condition)


def six_conditions(rep: RepresentationData, theta: Optional[Cochain] = None) -> Dict[str, VerificationReport]:
    """L1–L6 individually, plus the structure equations of L and V."""
    layout = rep.layout
    twist = rep.twist
    th = rep.lift_theta(theta) if theta is not None else rep.zero_cochain()
    d = rep.total_product(th)
    square = nr.square_half(d, twist, _square_kind(rep.kind))
    by_pattern: Dict[str, List[Witness]] = {"L4": [], "L5": [], "L6": [], "L-structure": [], "V-structure": []}
    v_set = set(layout.v_indices)
    for key, value in square.coeffs.items():
        count = sum(1 for i in key if i in v_set)
        if count == 0:
            l_part = tuple(value[i] for i in layout.l_indices)
            v_part = tuple(value[i] for i in layout.v_indices)
            if not la.is_zero_vector(l_part):
                by_pattern["L-structure"].append(Witness("L-structure", key, value))
            if not la.is_zero_vector(v_part):
                by_pattern["L5"].append(Witness("L5", key, value))
        elif count == 1:
            by_pattern["L4"].append(Witness("L4", key, value))
        elif count == 2:
            by_pattern["L6"].append(Witness("L6", key, value))
        else:
            by_pattern["V-structure"].append(Witness("V-structure", key, value))
    reports = {
        "L1": _equivariance_witnesses(rep.lambda_r, twist, "L1"),
        "L2": _equivariance_witnesses(rep.lambda_l, twist, "L2"),
        "L3": _equivariance_witnesses(th, twist, "L3"),
    }
    reports.update(by_pattern)
    return {name: VerificationReport.from_witnesses(w, "bracket") for name, w in reports.items()}


def flip_witnesses(rep: RepresentationData) -> List[Witness]:
    """λ_l(x,v) = −λ_r(v,x), required for Hom-Lie representations."""
    out = []
    for x, v in product(rep.layout.l_indices, rep.layout.v_indices):
        total = la.add_vectors(rep.lambda_l.value((x, v)), rep.lambda_r.value((v, x)))
        if not la.is_zero_vector(total):
            out.append(Witness("flip", (x, v), total))
    return out


def symmetric_conditions(rep: RepresentationData) -> Dict[str, VerificationReport]:
    """The insertion conditions s1–s6 of a symmetric Hom-Leibniz representation."""
    layout, n = rep.layout, rep.space.dim
    b = rep.twist.image_of_basis(1)
    e = [la.unit_vector(n, i) for i in range(n)]
    lam_l, lam_r, delta, mu = rep.lambda_l, rep.lambda_r, rep.delta, rep.mu

    def anti(f: Cochain, first: Vector, g: Cochain, second: Vector) -> Vector:
        # f(first, second) + g(second, first)
        return la.add_vectors(evaluate(f, [first, second]), evaluate(g, [second, first]))

    L, V = layout.l_indices, layout.v_indices
    checks = {
        "s1": [((x, y, v), anti(lam_l, b[x], lam_r, lam_l(e[y], e[v]))) for x, y, v in product(L, L, V)],
        "s2": [((x, v, y), anti(lam_l, b[x], lam_r, lam_r(e[v], e[y]))) for x, v, y in product(L, V, L)],
        "s3": [((v, x, y), anti(lam_r, b[v], lam_l, delta(e[x], e[y]))) for v, x, y in product(V, L, L)],
        "s4": [((u, v, x), anti(mu, b[u], mu, lam_r(e[v], e[x]))) for u, v, x in product(V, V, L)],
        "s5": [((u, x, v), anti(mu, b[u], mu, lam_l(e[x], e[v]))) for u, x, v in product(V, L, V)],
        "s6": [((x, u, v), anti(lam_l, b[x], lam_r, mu(e[u], e[v]))) for x, u, v in product(L, V, V)],
    }
    return {
        name: VerificationReport.from_witnesses(
            [Witness(name, key, val) for key, val in rows if not la.is_zero_vector(val)], "printed")
        for name, rows in checks.items()
    }


def _sum(*vectors: Vector) -> Vector:
    total = vectors[0]
    for v in vectors[1:]:
        total = la.add_vectors(total, v)
    return total


def printed_axioms(rep: RepresentationData, theta: Optional[Cochain] = None) -> VerificationReport:
    """The representation axioms as displayed, read off the components on basis elements.

    A1/A2 are the twist compatibilities of λ_r and λ_l. A3–A5 are the action
    identities on (x,y,v), (x,v,y) and (v,x,y); right Hom-Leibniz algebras use
    the right-identity versions. Nothing here goes through the bracket.
    """
    layout, n = rep.layout, rep.space.dim
    b = rep.twist.image_of_basis(1)
    e = [la.unit_vector(n, i) for i in range(n)]
    th = rep.lift_theta(theta) if theta is not None else rep.zero_cochain()
    lam_l, lam_r, delta, mu = rep.lambda_l, rep.lambda_r, rep.delta, rep.mu
    neg = lambda v: la.scale_vector(Fraction(-1), v)
    witnesses: List[Witness] = []

    def record(name: str, key: Tuple, lhs: Vector, rhs: Vector) -> None:
        defect = la.add_vectors(rhs, neg(lhs))
        if not la.is_zero_vector(defect):
            witnesses.append(Witness(name, key, defect))

    L, V = layout.l_indices, layout.v_indices
    for v, x in product(V, L):
        # λ_r(α_V v, αx) = α_V λ_r(v,x),  λ_l(αx, α_V v) = α_V λ_l(x,v)
        record("A1", (v, x), lam_r(b[v], b[x]), rep.twist.apply(lam_r(e[v], e[x])))
        record("A2", (x, v), lam_l(b[x], b[v]), rep.twist.apply(lam_l(e[x], e[v])))
    for x, y, v in product(L, L, V):
        dxy, txy = delta(e[x], e[y]), th(e[x], e[y])
        if rep.kind == RIGHT_LEIBNIZ:
            # λ_l(αx,λ_l(y,v)) = λ_l(δ(x,y),α_V v) + μ(θ(x,y),α_V v) − λ_r(λ_l(x,v),αy)
            record("A3", (x, y, v), lam_l(b[x], lam_l(e[y], e[v])),
                   _sum(lam_l(dxy, b[v]), mu(txy, b[v]), neg(lam_r(lam_l(e[x], e[v]), b[y]))))
            # λ_l(αx,λ_r(v,y)) = λ_r(λ_l(x,v),αy) − λ_l(δ(x,y),α_V v) − μ(θ(x,y),α_V v)
            record("A4", (x, v, y), lam_l(b[x], lam_r(e[v], e[y])),
                   _sum(lam_r(lam_l(e[x], e[v]), b[y]), neg(lam_l(dxy, b[v])), neg(mu(txy, b[v]))))
            # λ_r(α_V v,δ(x,y)) + μ(α_V v,θ(x,y)) = λ_r(λ_r(v,x),αy) − λ_r(λ_r(v,y),αx)
            record("A5", (v, x, y), la.add_vectors(lam_r(b[v], dxy), mu(b[v], txy)),
                   la.add_vectors(lam_r(lam_r(e[v], e[x]), b[y]), neg(lam_r(lam_r(e[v], e[y]), b[x]))))
        else:
            # λ_l(αx,λ_l(y,v)) = λ_l(δ(x,y),α_V v) + λ_l(αy,λ_l(x,v)) + μ(θ(x,y),α_V v)
            record("A3", (x, y, v), lam_l(b[x], lam_l(e[y], e[v])),
                   _sum(lam_l(dxy, b[v]), lam_l(b[y], lam_l(e[x], e[v])), mu(txy, b[v])))
            # λ_l(αx,λ_r(v,y)) = λ_r(λ_l(x,v),αy) + λ_r(α_V v,δ(x,y)) + μ(α_V v,θ(x,y))
            record("A4", (x, v, y), lam_l(b[x], lam_r(e[v], e[y])),
                   _sum(lam_r(lam_l(e[x], e[v]), b[y]), lam_r(b[v], dxy), mu(b[v], txy)))
            # λ_r(α_V v,δ(x,y)) = λ_r(λ_r(v,x),αy) + λ_l(αx,λ_r(v,y)) − μ(α_V v,θ(x,y))
            record("A5", (v, x, y), lam_r(b[v], dxy),
                   _sum(lam_r(lam_r(e[v], e[x]), b[y]), lam_l(b[x], lam_r(e[v], e[y])), neg(mu(b[v], txy))))
    if rep.kind == HOM_LIE:
        witnesses += flip_witnesses(rep)
    return VerificationReport.from_witnesses(witnesses, "printed")


def verify_representation(rep: RepresentationData) -> VerificationReport:
    if rep.L.kind != rep.V.kind:
        raise InputError(f"L is {rep.L.kind} but V is {rep.V.kind}", field="kind")
    conditions = six_conditions(rep)
    core: List[Witness] = []
    for name in ("L1", "L2", "L4"):
        core += conditions[name].failing_witnesses
    if rep.kind == HOM_LIE:
        core += flip_witnesses(rep)
    oracle = printed_axioms(rep)
    if (not core) != oracle.holds:
        raise RuntimeError("representation conditions disagree with the printed axioms")
    witnesses = core + list(conditions["L6"].failing_witnesses)
    if rep.kind == SYMMETRIC_LEIBNIZ:
        for report in symmetric_conditions(rep).values():
            witnesses += report.failing_witnesses
    report = VerificationReport.from_witnesses(witnesses, "bracket")
    logger.debug("verify_representation (%s): holds=%s", rep.kind, report.holds)
    return report
