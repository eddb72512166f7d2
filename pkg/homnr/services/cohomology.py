"""
Cochain complexes of Hom-algebras and their cohomology.

The coboundary is always D(f) = [d, f] for the kind's bracket. Each degree
k carries a ``CochainBasis`` of admissible k-cochains and a matrix sending
basis coordinates to the frame coordinates of D(member); dimensions of
cocycles, coboundaries and cohomology are read off those matrices.

Flavors:

  adjoint-left       C_β^k, left bracket
  adjoint-right      C_β^k, right bracket
  adjoint-symmetric  Alt'_β^k, left bracket (not closed under D)
  adjoint-lie        Alt_β^k, Lie bracket
  representation     values in V, structure δ + λ_l + λ_r on L ⊕ V
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from homnr.errors import InputError, VerificationFailure
from homnr.services import linear as la
from homnr.services import nr_bracket as nr
from homnr.services.cochains import (
    FLAVOR_ALT, FLAVOR_BETA, FLAVOR_SYMMETRIC,
    BasedSpace, Cochain, CochainBasis, CochainFrame, Key, TwistMap,
    alternating_basis, beta_cochain_basis, evaluate, is_alternating, is_beta_cochain,
    pair_defects, symmetric_leibniz_basis,
)
from homnr.services.linear import Matrix, Subspace, Vector
from homnr.services.representations import RepresentationData, verify_representation
from homnr.services.structures import (
    HOM_LIE, LEFT_LEIBNIZ, PLAIN, RIGHT_LEIBNIZ, SYMMETRIC_LEIBNIZ,
    HomAlgebra, verify_structure,
)

logger = logging.getLogger(__name__)

ADJOINT_LEFT      = "adjoint-left"
ADJOINT_RIGHT     = "adjoint-right"
ADJOINT_SYMMETRIC = "adjoint-symmetric"
ADJOINT_LIE       = "adjoint-lie"
REPRESENTATION    = "representation"

FLAVORS = (ADJOINT_LEFT, ADJOINT_RIGHT, ADJOINT_SYMMETRIC, ADJOINT_LIE, REPRESENTATION)

# kind an algebra must verify as before its adjoint complex is built
FLAVOR_KIND = {
    ADJOINT_LEFT:      LEFT_LEIBNIZ,
    ADJOINT_RIGHT:     RIGHT_LEIBNIZ,
    ADJOINT_SYMMETRIC: SYMMETRIC_LEIBNIZ,
    ADJOINT_LIE:       HOM_LIE,
}
KIND_FLAVOR = {kind: flavor for flavor, kind in FLAVOR_KIND.items()}

KIND_FAMILY = {
    LEFT_LEIBNIZ:      FLAVOR_BETA,
    RIGHT_LEIBNIZ:     FLAVOR_BETA,
    SYMMETRIC_LEIBNIZ: FLAVOR_SYMMETRIC,
    HOM_LIE:           FLAVOR_ALT,
}
KIND_OPERATOR = {
    LEFT_LEIBNIZ:      nr.LEFT,
    RIGHT_LEIBNIZ:     nr.RIGHT,
    SYMMETRIC_LEIBNIZ: nr.LEFT,
    HOM_LIE:           nr.LIE,
}

ORACLE_ADOPTED = "adopted"
ORACLE_PRINTED = "printed"


def flavor_for(a: HomAlgebra) -> str:
    if a.kind == PLAIN:
        raise InputError("a plain Hom-algebra has no adjoint complex; give it a kind", field="kind")
    return KIND_FLAVOR[a.kind]


# ─── Settings ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CoboundarySetting:
    """Everything D needs: the structure it brackets with and where cochains live."""
    flavor: str
    kind: str
    space: BasedSpace
    structure: Cochain
    twist: TwistMap
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]

    @property
    def operator(self) -> str:
        return KIND_OPERATOR[self.kind]

    @property
    def family(self) -> str:
        return KIND_FAMILY[self.kind]

    def frame(self, k: int) -> CochainFrame:
        return CochainFrame(self.space, k, self.inputs, self.outputs)

    def basis(self, k: int) -> CochainBasis:
        frame = self.frame(k)
        if self.family == FLAVOR_BETA:
            return beta_cochain_basis(self.space, self.twist, k, frame)
        if self.family == FLAVOR_ALT:
            return alternating_basis(self.space, self.twist, k, frame)
        return symmetric_leibniz_basis(self.space, self.twist, k, self.structure, frame)

    def violation(self, f: Cochain) -> Optional[str]:
        """Name of the first membership constraint f breaks, if any."""
        if f.domain != self.space:
            return "cochain lives on a different space"
        if not self.frame(f.arity).contains(f):
            return "coefficients outside the admissible cells"
        if not is_beta_cochain(f, self.twist):
            return "not β-equivariant"
        if self.family == FLAVOR_ALT and not is_alternating(f):
            return "not alternating"
        if self.family == FLAVOR_SYMMETRIC and f.arity >= 2 and pair_defects(f, self.structure, self.inputs, self.twist):
            return "insertion of the product into two slots does not flip sign"
        return None

    def apply(self, f: Cochain) -> Cochain:
        return nr.bracket(self.structure, f, self.twist, self.operator, self.frame(f.arity + 1).tuples())


def adjoint_setting(a: HomAlgebra, flavor: Optional[str] = None) -> CoboundarySetting:
    flavor = flavor or flavor_for(a)
    if flavor not in FLAVOR_KIND:
        raise InputError(f"unknown adjoint flavor {flavor!r}", field="flavor")
    r = tuple(range(a.dim))
    return CoboundarySetting(flavor, FLAVOR_KIND[flavor], a.space, a.product, a.twist, r, r)


def representation_setting(rep: RepresentationData) -> CoboundarySetting:
    if rep.kind == PLAIN:
        raise InputError("representation needs a Leibniz or Lie kind", field="kind")
    layout = rep.layout
    return CoboundarySetting(REPRESENTATION, rep.kind, rep.space, rep.complex_structure(),
                             rep.twist, layout.l_indices, layout.v_indices)


def _require_structure(a: HomAlgebra, kind: str) -> None:
    report = verify_structure(a.with_kind(kind))
    if not report.holds:
        raise VerificationFailure(f"{a.name or 'algebra'} is not {kind}", report)
    if not report.multiplicative:
        raise VerificationFailure(f"{a.name or 'algebra'} is not multiplicative; D does not square to zero", report)


def _require_representation(rep: RepresentationData) -> None:
    _require_structure(rep.L, rep.kind)
    report = verify_representation(rep)
    if not report.holds:
        raise VerificationFailure("representation conditions fail", report)


# ─── Coboundaries ────────────────────────────────────────────────────────────

def coboundary(a: HomAlgebra, f: Cochain, flavor: Optional[str] = None) -> Cochain:
    setting = adjoint_setting(a, flavor)
    problem = setting.violation(f)
    if problem:
        raise InputError(f"cochain is outside the {setting.flavor} subspace: {problem}", field="f")
    return setting.apply(f)


def degree_zero_operator(rep: RepresentationData, v: Sequence[Fraction], r: int = 1) -> Cochain:
    """D⁰ on an α_V-invariant vector of V, as an ambient cochain on L."""
    layout = rep.layout
    if len(v) != layout.n_v:
        raise InputError(f"vector of length {len(v)} for V of dim {layout.n_v}", field="f")
    if r < 1:
        raise InputError("twist exponent must be at least 1", field="r")
    vec = layout.embed("V", v)
    if rep.twist.apply(vec) != vec:
        raise InputError("degree-0 cochains must be fixed by α_V", field="f")
    twisted = rep.twist.image_of_basis(r - 1)
    if rep.kind in (RIGHT_LEIBNIZ, HOM_LIE):
        fn = lambda key: evaluate(rep.lambda_l, [twisted[key[0]], vec])
    else:
        fn = lambda key: la.scale_vector(Fraction(-1), evaluate(rep.lambda_r, [vec, twisted[key[0]]]))
    return Cochain.from_function(rep.space, 1, fn, tuples=[(x,) for x in layout.l_indices])


def rep_coboundary(rep: RepresentationData, f, k: int, r: int = 1) -> Cochain:
    """Coboundary of the complex with values in V; k = 0 takes a vector of V."""
    _require_representation(rep)
    if k == 0:
        return degree_zero_operator(rep, f, r)
    setting = representation_setting(rep)
    if f.arity != k:
        raise InputError(f"cochain of arity {f.arity} given for degree {k}", field="k")
    problem = setting.violation(f)
    if problem:
        raise InputError(f"cochain is outside the representation subspace: {problem}", field="f")
    return setting.apply(f)


# ─── Explicit formulas ───────────────────────────────────────────────────────

def _hat(seq: Sequence, *drop: int) -> List:
    return [x for i, x in enumerate(seq) if i not in drop]


def explicit_coboundary(d: Cochain, beta: TwistMap, f: Cochain, flavor: str,
                        mode: str = ORACLE_ADOPTED,
                        tuples: Optional[Sequence[Key]] = None) -> Optional[Cochain]:
    """Term-by-term formula for D(f); None when no printed form exists.

    ``adopted`` reproduces [d, f] for the flavor's bracket. ``printed`` uses
    the signs as they are usually displayed, which may differ by a global
    sign per degree.
    """
    space = d.domain
    n = space.dim
    k = f.arity
    e = [la.unit_vector(n, i) for i in range(n)]
    b1 = beta.image_of_basis(1)
    bk = beta.image_of_basis(k - 1)
    printed = mode == ORACLE_PRINTED
    if printed and flavor == ADJOINT_RIGHT:
        return None

    def sgn(p: int) -> Fraction:
        return Fraction(-1) if p % 2 else Fraction(1)

    def left_like(key: Key, symmetric: bool) -> Vector:
        a = list(key)
        total = la.zero_vector(n)
        upper = k + 1 if symmetric else k
        for s in range(1, upper + 1):
            c = sgn(s) if (printed and not symmetric) else sgn(k - s)
            rest = [e[x] for x in _hat(a, s - 1)]
            total = la.add_vectors(total, la.scale_vector(c, evaluate(d, [bk[a[s - 1]], evaluate(f, rest)])))
        if not symmetric:
            total = la.add_vectors(total, evaluate(d, [evaluate(f, [e[x] for x in a[:k]]), bk[a[k]]]))
        for s, t in combinations(range(1, k + 2), 2):
            c = Fraction(1) if printed else sgn(k + s + 1)
            args = [b1[x] for x in _hat(a, s - 1)]
            # d(a_s, a_t) replaces a_t, which sits at index t-2 once a_s is gone
            args[t - 2] = evaluate(d, [e[a[s - 1]], e[a[t - 1]]])
            total = la.add_vectors(total, la.scale_vector(c, evaluate(f, args)))
        return total

    def right(key: Key) -> Vector:
        a = list(key)
        total = la.scale_vector(sgn(k + 1), evaluate(d, [bk[a[0]], evaluate(f, [e[x] for x in a[1:]])]))
        for t in range(2, k + 2):
            rest = [e[x] for x in _hat(a, t - 1)]
            total = la.add_vectors(total, la.scale_vector(
                sgn(k + 1 - t), evaluate(d, [evaluate(f, rest), bk[a[t - 1]]])))
        for s, t in combinations(range(1, k + 2), 2):
            args = [b1[x] for x in _hat(a, t - 1)]
            args[s - 1] = evaluate(d, [e[a[s - 1]], e[a[t - 1]]])
            total = la.add_vectors(total, la.scale_vector(sgn(k + t), evaluate(f, args)))
        return total

    def lie(key: Key) -> Vector:
        a = list(key)
        total = la.zero_vector(n)
        for t in range(1, k + 2):
            rest = [e[x] for x in _hat(a, t - 1)]
            if printed:
                term = la.scale_vector(sgn(t + 1), evaluate(d, [bk[a[t - 1]], evaluate(f, rest)]))
            else:
                term = la.scale_vector(sgn(k + 1 - t), evaluate(d, [evaluate(f, rest), bk[a[t - 1]]]))
            total = la.add_vectors(total, term)
        for s, t in combinations(range(1, k + 2), 2):
            args = [evaluate(d, [e[a[s - 1]], e[a[t - 1]]])] + [b1[x] for x in _hat(a, s - 1, t - 1)]
            c = sgn(s + t) if printed else sgn(k + s + t + 1)
            total = la.add_vectors(total, la.scale_vector(c, evaluate(f, args)))
        return total

    if flavor == ADJOINT_LEFT:
        fn = lambda key: left_like(key, symmetric=False)
    elif flavor == ADJOINT_SYMMETRIC:
        fn = lambda key: left_like(key, symmetric=printed)
    elif flavor == ADJOINT_RIGHT:
        fn = right
    elif flavor == ADJOINT_LIE:
        fn = lie
    else:
        raise InputError(f"no explicit formula for flavor {flavor!r}", field="flavor")
    return Cochain.from_function(space, k + 1, fn, tuples=tuples)


def explicit_coboundary_oracle(a: HomAlgebra, f: Cochain, flavor: Optional[str] = None,
                               mode: str = ORACLE_ADOPTED) -> Optional[Cochain]:
    flavor = flavor or flavor_for(a)
    return explicit_coboundary(a.product, a.twist, f, flavor, mode)


@dataclass(frozen=True)
class OracleComparison:
    degree: int
    mode: str
    status: str           # agree | agree-up-to-sign | deviates | unavailable
    checked: int


def _compare(engine: List[Cochain], other: List[Optional[Cochain]]) -> str:
    if any(o is None for o in other):
        return "unavailable"
    if all(x == y for x, y in zip(engine, other)):
        return "agree"
    if all(x == -y for x, y in zip(engine, other)):
        return "agree-up-to-sign"
    return "deviates"


def compare_with_oracle(a: HomAlgebra, k_max: int, flavor: Optional[str] = None) -> List[OracleComparison]:
    """Engine coboundary against both explicit formulas on every basis member, per degree."""
    setting = adjoint_setting(a, flavor)
    out: List[OracleComparison] = []
    for k in range(1, k_max + 1):
        members = list(setting.basis(k).members)
        engine = [setting.apply(f) for f in members]
        for mode in (ORACLE_ADOPTED, ORACLE_PRINTED):
            other = [explicit_coboundary(a.product, a.twist, f, setting.flavor, mode) for f in members]
            status = _compare(engine, other)
            if mode == ORACLE_ADOPTED and status != "agree":
                raise RuntimeError(f"coboundary disagrees with its explicit formula in degree {k}")
            out.append(OracleComparison(k, mode, status, len(members)))
    return out


# ─── Complexes ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DegreeZero:
    """Invariant vectors of V and the matrix of D⁰ into degree-1 frame coordinates."""
    basis: Subspace
    matrix: Matrix
    r: int


@dataclass
class CochainComplex:
    setting: CoboundarySetting
    k_min: int
    k_max: int
    bases: Dict[int, CochainBasis] = field(default_factory=dict)
    matrices: Dict[int, Matrix] = field(default_factory=dict)
    degree_zero: Optional[DegreeZero] = None
    notes: List[str] = field(default_factory=list)

    @property
    def flavor(self) -> str:
        return self.setting.flavor

    def basis(self, k: int) -> CochainBasis:
        if k not in self.bases:
            raise InputError(f"degree {k} is outside the complex ({self.k_min}..{self.k_max})", field="k")
        return self.bases[k]

    def operator_matrix(self, k: int) -> Matrix:
        """D_k from degree-k basis coordinates to degree-(k+1) frame coordinates."""
        if k == 0 and self.degree_zero is not None:
            return self.degree_zero.matrix
        if k not in self.matrices:
            self.matrices[k] = _coboundary_matrix(self.setting, self.basis(k))
        return self.matrices[k]


def _coboundary_matrix(setting: CoboundarySetting, basis: CochainBasis) -> Matrix:
    target = setting.frame(basis.arity + 1)
    columns = [target.to_vector(setting.apply(f)) for f in basis.members]
    return Matrix.from_columns(columns, target.size) if columns else Matrix.zeros(target.size, 0)


def _check_square_zero(c: CochainComplex) -> None:
    setting = c.setting
    for k in range(max(c.k_min, 1), c.k_max):
        if setting.family == FLAVOR_SYMMETRIC:
            for f in c.basis(k).members:
                if not setting.apply(setting.apply(f)).is_zero():
                    raise RuntimeError(f"D∘D is non-zero in degree {k}")
            continue
        upper = c.basis(k + 1)
        for f in c.basis(k).members:
            image = setting.apply(f)
            coords = upper.coordinates(image)
            if coords is None:
                raise RuntimeError(f"coboundary of a degree-{k} cochain left the cochain subspace")
            if not c.operator_matrix(k + 1).apply(coords) == la.zero_vector(c.operator_matrix(k + 1).rows):
                raise RuntimeError(f"D∘D is non-zero in degree {k}")


def _degree_zero(rep: RepresentationData, setting: CoboundarySetting, r: int) -> DegreeZero:
    layout = rep.layout
    shift = Matrix.from_rows([
        [rep.V.twist.matrix.entries[i][j] - (1 if i == j else 0) for j in range(layout.n_v)]
        for i in range(layout.n_v)
    ])
    invariant = la.kernel_basis(shift)
    frame = setting.frame(1)
    columns = [frame.to_vector(degree_zero_operator(rep, v, r)) for v in invariant.basis]
    matrix = Matrix.from_columns(columns, frame.size) if columns else Matrix.zeros(frame.size, 0)
    return DegreeZero(invariant, matrix, r)


def complex_build(source, k_max: int, flavor: Optional[str] = None, with_degree_zero: bool = False,
                  r: int = 1) -> CochainComplex:
    """Bases and coboundary matrices for degrees up to ``k_max``.

    ``source`` is a HomAlgebra (adjoint flavors) or a RepresentationData.
    Unverified structures are refused with ``VerificationFailure``.
    """
    if k_max < 1:
        raise InputError("k_max must be at least 1", field="k_max")
    if isinstance(source, RepresentationData):
        _require_representation(source)
        setting = representation_setting(source)
    else:
        setting = adjoint_setting(source, flavor)
        _require_structure(source, setting.kind)
    c = CochainComplex(setting, 1, k_max)
    for k in range(1, k_max + 1):
        c.bases[k] = setting.basis(k)
    if with_degree_zero and isinstance(source, RepresentationData):
        zero = _degree_zero(source, setting, r)
        composite_ok = all(
            setting.apply(degree_zero_operator(source, v, r)).is_zero() for v in zero.basis.basis
        )
        if composite_ok:
            c.degree_zero = zero
            c.k_min = 0
        else:
            note = f"degree-0 operator with r={r} does not compose to zero with D¹; degree 0 omitted"
            logger.warning(note)
            c.notes.append(note)
    _check_square_zero(c)
    logger.info("built %s complex: degrees %d..%d, dims %s", setting.flavor, c.k_min, k_max,
                [c.bases[k].dim for k in range(1, k_max + 1)])
    return c


# ─── Cohomology ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class DegreeDims:
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def cohomology(self) -> int:
        return self.cocycles - self.coboundaries


@dataclass(frozen=True)
class CohomologyReport:
    flavor: str
    dims: Dict[int, DegreeDims]
    notes: Tuple[str, ...] = ()

    def triple(self, k: int) -> Tuple[int, int, int]:
        d = self.dims[k]
        return d.cocycles, d.coboundaries, d.cohomology


def _image(c: CochainComplex, k: int) -> Subspace:
    """Im D_{k-1} in degree-k frame coordinates."""
    m = c.operator_matrix(k - 1)
    return la.span_basis(m.columns(), m.rows)


def coboundary_subspace(c: CochainComplex, k: int) -> Subspace:
    if k == c.k_min:
        return Subspace(c.setting.frame(k).size, ())
    return la.intersection(_image(c, k), c.basis(k).subspace())


def cocycle_subspace(c: CochainComplex, k: int) -> Subspace:
    basis = c.basis(k)
    kernel = la.kernel_basis(c.operator_matrix(k))
    return la.span_basis([basis.frame.to_vector(basis.combine(v)) for v in kernel.basis], basis.frame.size)


def _dims(c: CochainComplex, k: int) -> DegreeDims:
    if k == 0:
        m = c.degree_zero.matrix
        return DegreeDims(m.cols, m.cols - la.rank(m), 0)
    cochains = c.basis(k).dim
    cocycles = cochains - la.rank(c.operator_matrix(k))
    if k == c.k_min:
        return DegreeDims(cochains, cocycles, 0)
    if c.setting.family == FLAVOR_SYMMETRIC:
        coboundaries = la.intersection_dim(_image(c, k), c.basis(k).subspace())
    else:
        coboundaries = la.rank(c.operator_matrix(k - 1))
    return DegreeDims(cochains, cocycles, coboundaries)


def cohomology_dims(c: CochainComplex, k_max: Optional[int] = None) -> CohomologyReport:
    top = min(k_max or c.k_max, c.k_max)
    dims = {k: _dims(c, k) for k in range(c.k_min, top + 1)}
    for k, d in dims.items():
        logger.debug("%s H^%d: Z=%d B=%d H=%d", c.flavor, k, d.cocycles, d.coboundaries, d.cohomology)
    return CohomologyReport(c.flavor, dims, tuple(c.notes))


def class_representatives(c: CochainComplex, k: int) -> List[Cochain]:
    """Cocycles whose classes form a basis of H^k."""
    if k == 0:
        raise InputError("degree-0 classes are the cocycles themselves", field="k")
    z = cocycle_subspace(c, k)
    b = coboundary_subspace(c, k)
    frame = c.basis(k).frame
    return [frame.from_vector(v) for v in la.complement_basis(b, z).basis]


def _check_member(c: CochainComplex, f: Cochain) -> int:
    k = f.arity
    c.basis(k)
    problem = c.setting.violation(f)
    if problem:
        raise InputError(f"cochain is outside the {c.flavor} subspace: {problem}", field="f")
    return k


def is_cocycle(c: CochainComplex, f: Cochain) -> bool:
    _check_member(c, f)
    return c.setting.apply(f).is_zero()


def coboundary_preimage(c: CochainComplex, f: Cochain) -> Optional[Union[Cochain, Vector]]:
    """Some g with D(g) = f, or None.

    When f has degree 1 in a representation complex that keeps degree 0,
    the preimage is an invariant vector of V.
    """
    k = _check_member(c, f)
    target = c.setting.frame(k).to_vector(f)
    if k == c.k_min:
        return Cochain.zero(c.setting.space, k) if f.is_zero() else None
    x = la.solve_linear(c.operator_matrix(k - 1), target)
    if x is None:
        return None
    if k == 1:
        return c.degree_zero.basis.matrix().apply(x)
    return c.basis(k - 1).combine(x)


def is_coboundary(c: CochainComplex, f: Cochain) -> bool:
    return coboundary_preimage(c, f) is not None
