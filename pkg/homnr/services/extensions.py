"""
Extensions 0 → V → M → L → 0 in standard split form on M = L ⊕ V.

An extension is carried as a representation plus a 2-cocycle θ; the total
product is d = δ + λ_l + λ_r + μ + θ with twist α ⊕ α_V. Arbitrary
(M, i, π) data is normalised through a section s and the retraction k
with k∘i = id_V, k∘s = 0.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from homnr.errors import InputError, VerificationFailure
from homnr.services import linear as la
from homnr.services import nr_bracket as nr
from homnr.services.cochains import BasedSpace, Cochain, TwistMap, evaluate
from homnr.services.cohomology import cohomology_dims, complex_build
from homnr.services.linear import Matrix, Vector
from homnr.services.representations import (
    L_BLOCK, PATTERNS, V_BLOCK,
    RepresentationData, SplitLayout, flip_witnesses, six_conditions, verify_representation,
)
from homnr.services.structures import (
    HOM_LIE, KIND_BRACKET, RIGHT_LEIBNIZ, SYMMETRIC_LEIBNIZ,
    HomAlgebra, VerificationReport, Witness, alternation_witnesses, identity_defect,
    is_morphism, verify_structure,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtensionAlgebra:
    rep: RepresentationData
    theta: Cochain
    total: HomAlgebra

    @property
    def layout(self) -> SplitLayout:
        return self.rep.layout

    @property
    def inclusion(self) -> Matrix:
        return self.layout.inclusion()

    @property
    def projection(self) -> Matrix:
        return self.layout.projection()

    @property
    def kind(self) -> str:
        return self.rep.kind


@dataclass(frozen=True)
class Decomposition:
    rep: RepresentationData
    theta: Cochain
    section: Matrix
    retraction: Matrix
    isomorphism: Matrix          # Φ(x + v) = s(x) + i(v), standard form → given algebra


# ─── Cocycles ────────────────────────────────────────────────────────────────

def _identity_for(kind: str) -> str:
    return {RIGHT_LEIBNIZ: "right", HOM_LIE: "jacobi"}.get(kind, "left")


def verify_cocycle(rep: RepresentationData, theta: Cochain) -> VerificationReport:
    """θ⋆α = α_V∘θ and [δ+λ_l+λ_r, θ] = 0, with the expanded identity as oracle."""
    th = rep.lift_theta(theta)
    conditions = six_conditions(rep, th)
    witnesses = list(conditions["L3"].failing_witnesses) + list(conditions["L5"].failing_witnesses)
    skew: List[Witness] = []
    if rep.kind == HOM_LIE:
        skew = alternation_witnesses(th)
        witnesses += skew
        skew = skew + flip_witnesses(rep) + alternation_witnesses(rep.delta)
    # oracle: the classical identity of the total product on L-triples, read in V
    total = HomAlgebra(rep.space, rep.total_product(th), rep.twist)
    identity = _identity_for(rep.kind)
    layout = rep.layout
    oracle = []
    for key in product(layout.l_indices, repeat=3):
        defect = identity_defect(total, identity, key)
        v_part = tuple(defect[i] for i in layout.v_indices)
        if not la.is_zero_vector(v_part):
            oracle.append(key)
    if not skew and bool(oracle) != bool(conditions["L5"].failing_witnesses):
        raise RuntimeError("cocycle condition disagrees with its expanded identity")
    return VerificationReport.from_witnesses(witnesses, "bracket")


# ─── Building ────────────────────────────────────────────────────────────────

def build_extension(rep: RepresentationData, theta: Optional[Cochain] = None) -> ExtensionAlgebra:
    report = verify_representation(rep)
    if not report.holds:
        raise VerificationFailure("representation conditions fail", report)
    th = rep.lift_theta(theta) if theta is not None else rep.zero_cochain()
    cocycle = verify_cocycle(rep, th)
    if not cocycle.holds:
        raise VerificationFailure("θ is not a 2-cocycle", cocycle)
    total = HomAlgebra(rep.space, rep.total_product(th), rep.twist, rep.kind,
                       name=f"{rep.L.name or 'L'}⊕{rep.V.name or 'V'}")
    check = verify_structure(total)
    if not check.holds:
        if rep.kind == SYMMETRIC_LEIBNIZ:
            # the insertion conditions on θ are not part of the cocycle list
            raise VerificationFailure("assembled algebra is not symmetric Hom-Leibniz", check)
        raise RuntimeError("six conditions hold but the assembled algebra fails verification")
    logger.info("built %s extension of dim %d", rep.kind, total.dim)
    return ExtensionAlgebra(rep, th, total)


def direct_sum(L: HomAlgebra, V: HomAlgebra) -> ExtensionAlgebra:
    space = SplitLayout(L.space, V.space).ambient
    zero = Cochain.zero(space, 2)
    return build_extension(RepresentationData(L, V, zero, zero))


# ─── Decomposition ───────────────────────────────────────────────────────────

def _quotient_twist(total: HomAlgebra, inclusion: Matrix, projection: Matrix) -> Matrix:
    """α_L with π∘α_M = α_L∘π."""
    alpha = total.twist.matrix
    if not projection.matmul(alpha).matmul(inclusion).is_zero():
        raise InputError("the twist does not preserve ker π", field="projection")
    right = _right_inverse(projection)
    alpha_l = projection.matmul(alpha).matmul(right)
    if alpha_l.matmul(projection) != projection.matmul(alpha):
        raise InputError("π does not intertwine the twists", field="projection")
    return alpha_l


def _right_inverse(projection: Matrix) -> Matrix:
    cols = []
    for j in range(projection.rows):
        x = la.solve_linear(projection, la.unit_vector(projection.rows, j))
        if x is None:
            raise InputError("π is not surjective", field="projection")
        cols.append(x)
    return Matrix.from_columns(cols, projection.cols)


def _check_exact(total: HomAlgebra, inclusion: Matrix, projection: Matrix) -> None:
    n = total.dim
    if inclusion.rows != n or projection.cols != n:
        raise InputError("inclusion and projection do not match the total dimension", field="inclusion")
    if inclusion.cols + projection.rows != n:
        raise InputError("dim V + dim L must equal dim M", field="inclusion")
    if la.rank(inclusion) != inclusion.cols:
        raise InputError("inclusion is not injective", field="inclusion")
    if la.rank(projection) != projection.rows:
        raise InputError("π is not surjective", field="projection")
    if not projection.matmul(inclusion).is_zero():
        raise InputError("π∘i is not zero", field="projection")


def _ideal_witnesses(total: HomAlgebra, inclusion: Matrix, projection: Matrix) -> List[Tuple[int, int]]:
    n = total.dim
    e = [la.unit_vector(n, i) for i in range(n)]
    bad = []
    for v, m in product(range(inclusion.cols), range(n)):
        iv = inclusion.column(v)
        if not la.is_zero_vector(projection.apply(total.mul(iv, e[m]))):
            bad.append((v, m))
        elif not la.is_zero_vector(projection.apply(total.mul(e[m], iv))):
            bad.append((m, v))
    return bad


def find_section(total: HomAlgebra, inclusion: Matrix, projection: Matrix) -> Optional[Matrix]:
    """s with π∘s = id_L and s∘α_L = α_M∘s, or None (non-split)."""
    _check_exact(total, inclusion, projection)
    alpha_l = _quotient_twist(total, inclusion, projection)
    alpha = total.twist.matrix
    n, n_l = total.dim, projection.rows

    def unpack(x: Vector) -> Matrix:
        return Matrix.from_rows([x[r * n_l:(r + 1) * n_l] for r in range(n)], n_l)

    def residual(x: Vector) -> List[Fraction]:
        s = unpack(x)
        out = [a - b for a, b in zip(_flat(projection.matmul(s)), _flat(Matrix.identity(n_l)))]
        out += [a - b for a, b in zip(_flat(s.matmul(alpha_l)), _flat(alpha.matmul(s)))]
        return out

    x = la.solve_affine(residual, n * n_l)
    return None if x is None else unpack(x)


def _flat(m: Matrix) -> List[Fraction]:
    return [x for row in m.entries for x in row]


def decompose(total: HomAlgebra, inclusion: Matrix, projection: Matrix,
              section: Optional[Matrix] = None,
              l_space: Optional[BasedSpace] = None,
              v_space: Optional[BasedSpace] = None) -> Decomposition:
    """Components δ, λ_l, λ_r, μ, θ of an extension read through a section."""
    _check_exact(total, inclusion, projection)
    alpha_l = _quotient_twist(total, inclusion, projection)
    alpha = total.twist.matrix
    n_l, n_v = projection.rows, inclusion.cols
    bad = _ideal_witnesses(total, inclusion, projection)
    if bad:
        raise InputError(f"ker π is not an ideal: product at {bad[0]} leaves it", field="projection")
    if section is None:
        section = find_section(total, inclusion, projection)
        if section is None:
            raise VerificationFailure("the extension is not split: no twist-compatible section")
    if section.rows != total.dim or section.cols != n_l:
        raise InputError("section must map L into M", field="section")
    if projection.matmul(section) != Matrix.identity(n_l):
        raise InputError("π∘s is not the identity", field="section")
    if section.matmul(alpha_l) != alpha.matmul(section):
        raise InputError("s does not intertwine the twists", field="section")

    phi = section.hstack(inclusion)
    inverse = la.inverse(phi)
    if inverse is None:
        raise InputError("section and inclusion do not span M", field="section")
    retraction = Matrix.from_rows(inverse.entries[n_l:], total.dim)
    alpha_v = retraction.matmul(alpha).matmul(inclusion)

    L_space = l_space or BasedSpace.standard(n_l, "e")
    V_space = v_space or BasedSpace.standard(n_v, "f")
    s_cols, i_cols = section.columns(), inclusion.columns()

    def component(first: List[Vector], second: List[Vector], reader: Matrix,
                  domain: BasedSpace, codomain: BasedSpace) -> Cochain:
        return Cochain.from_function(
            domain, 2, lambda key: reader.apply(total.mul(first[key[0]], second[key[1]])), codomain=codomain,
            tuples=list(product(range(len(first)), range(len(second)))),
        )

    delta = component(s_cols, s_cols, projection, L_space, L_space)
    mu = component(i_cols, i_cols, retraction, V_space, V_space)
    L = HomAlgebra(L_space, delta, TwistMap(alpha_l), total.kind, name="L")
    V = HomAlgebra(V_space, mu, TwistMap(alpha_v), total.kind, name="V")
    layout = SplitLayout(L_space, V_space)
    ambient = layout.ambient
    e = [la.unit_vector(total.dim, i) for i in range(total.dim)]

    def read(slots: Tuple[str, str]) -> Cochain:
        cols = {L_BLOCK: s_cols, V_BLOCK: i_cols}
        coeffs = {}
        for a, b in product(range(len(cols[slots[0]])), range(len(cols[slots[1]]))):
            value = total.mul(cols[slots[0]][a], cols[slots[1]][b])
            coeffs[(layout.to_ambient(slots[0], a), layout.to_ambient(slots[1], b))] = \
                layout.embed(V_BLOCK, retraction.apply(value))
        return Cochain(ambient, ambient, 2, coeffs)

    lam_l = read(PATTERNS["lambda_l"][0])
    lam_r = read(PATTERNS["lambda_r"][0])
    theta = read(PATTERNS["theta"][0])
    rep = RepresentationData(L, V, lam_l, lam_r)

    # Φ maps the standard form onto the given algebra
    standard = rep.total_product(theta)
    for a, b in product(range(total.dim), repeat=2):
        lhs = phi.apply(standard.value((a, b)))
        rhs = total.mul(phi.apply(e[a]), phi.apply(e[b]))
        if lhs != rhs:
            raise RuntimeError(f"decomposition does not reassemble at {(a, b)}")
    if phi.matmul(rep.twist.matrix) != alpha.matmul(phi):
        raise RuntimeError("decomposition does not reassemble the twist")
    return Decomposition(rep, theta, section, retraction, phi)


def decompose_extension(ext: ExtensionAlgebra, section: Optional[Matrix] = None) -> Decomposition:
    s = section if section is not None else ext.layout.l_inclusion()
    return decompose(ext.total, ext.inclusion, ext.projection, s, ext.rep.L.space, ext.rep.V.space)


# ─── Classification ──────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Classification:
    trivial: bool
    trivial_ideal: bool
    trivial_agree: bool
    central: bool
    central_direct: bool
    abelian: bool
    semidirect: bool

    def flags(self) -> Dict[str, bool]:
        return {"trivial": self.trivial, "central": self.central,
                "abelian": self.abelian, "semidirect": self.semidirect}


def complementary_ideal(ext: ExtensionAlgebra) -> Optional[Matrix]:
    """h: L→V whose graph {x + h(x)} is a twist-stable ideal complementary to V."""
    rep, layout = ext.rep, ext.layout
    n_l, n_v = layout.n_l, layout.n_v
    d = ext.total.product
    twist = rep.twist
    e = [la.unit_vector(rep.space.dim, i) for i in range(rep.space.dim)]
    v_of = lambda vec: [vec[i] for i in layout.v_indices]
    l_of = lambda vec: [vec[i] for i in layout.l_indices]

    def unpack(x: Vector) -> Matrix:
        return Matrix.from_rows([x[r * n_l:(r + 1) * n_l] for r in range(n_v)], n_l)

    def graph(h: Matrix, vec: Sequence[Fraction]) -> Vector:
        return la.add_vectors(layout.embed(L_BLOCK, l_of(vec)), layout.embed(V_BLOCK, h.apply(l_of(vec))))

    def residual(x: Vector) -> List[Fraction]:
        h = unpack(x)
        out: List[Fraction] = []
        for a in layout.l_indices:
            sx = graph(h, e[a])
            for m in range(rep.space.dim):
                for value in (evaluate(d, [sx, e[m]]), evaluate(d, [e[m], sx])):
                    # V-part must be h of the L-part
                    out += [p - q for p, q in zip(v_of(value), h.apply(l_of(value)))]
            out += [p - q for p, q in zip(v_of(twist.apply(sx)), h.apply(l_of(twist.apply(sx))))]
        return out

    x = la.solve_affine(residual, n_v * n_l)
    return None if x is None else unpack(x)


def classify(ext: ExtensionAlgebra) -> Classification:
    rep = ext.rep
    lam_zero = rep.lambda_l.is_zero() and rep.lambda_r.is_zero()
    mu_zero = rep.V.product.is_zero()
    theta_zero = ext.theta.is_zero()
    trivial = lam_zero and theta_zero
    trivial_ideal = complementary_ideal(ext) is not None
    if trivial != trivial_ideal:
        logger.warning("trivial by components=%s but complementary ideal exists=%s", trivial, trivial_ideal)
    central = lam_zero and mu_zero
    n = ext.total.dim
    e = [la.unit_vector(n, i) for i in range(n)]
    central_direct = all(
        la.is_zero_vector(ext.total.mul(e[v], e[m])) and la.is_zero_vector(ext.total.mul(e[m], e[v]))
        for v in ext.layout.v_indices for m in range(n)
    )
    if central != central_direct:
        raise RuntimeError("central flag disagrees with the direct annihilator test")
    return Classification(trivial, trivial_ideal, trivial == trivial_ideal, central, central_direct,
                          mu_zero, theta_zero)


# ─── Equivalences ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Perturbation:
    extension: ExtensionAlgebra
    isomorphism: Matrix
    holds: bool
    witnesses: Tuple[Tuple[int, int], ...] = ()


def _ambient_map(layout: SplitLayout, h: Matrix) -> Cochain:
    """x + v ↦ h(x) as an arity-1 ambient cochain."""
    return Cochain(layout.ambient, layout.ambient, 1,
                   {(x,): layout.embed(V_BLOCK, h.column(x)) for x in layout.l_indices})


def _check_h(ext: ExtensionAlgebra, h: Matrix) -> None:
    layout = ext.layout
    if h.rows != layout.n_v or h.cols != layout.n_l:
        raise InputError(f"h must be a {layout.n_v}x{layout.n_l} matrix", field="h")
    if h.matmul(ext.rep.L.twist.matrix) != ext.rep.V.twist.matrix.matmul(h):
        raise InputError("h does not intertwine α and α_V", field="h")


def coboundary_perturb(ext: ExtensionAlgebra, h: Matrix) -> Perturbation:
    """d′ = d + [d, h] together with Φ(x + v) = x + h(x) + v."""
    _check_h(ext, h)
    layout = ext.layout
    n = ext.total.dim
    hc = _ambient_map(layout, h)
    d = ext.total.product
    d_new = d + nr.bracket(d, hc, ext.rep.twist, KIND_BRACKET[ext.kind])
    phi = la.add_matrices(Matrix.identity(n), hc.as_matrix())
    e = [la.unit_vector(n, i) for i in range(n)]
    witnesses = []
    for a, b in product(range(n), repeat=2):
        if phi.apply(d_new.value((a, b))) != evaluate(d, [phi.apply(e[a]), phi.apply(e[b])]):
            witnesses.append((a, b))
    diagram = phi.matmul(ext.inclusion) == ext.inclusion and ext.projection.matmul(phi) == ext.projection
    total = HomAlgebra(ext.total.space, d_new, ext.total.twist, ext.kind, name=ext.total.name)
    parts = decompose(total, ext.inclusion, ext.projection, layout.l_inclusion(),
                      ext.rep.L.space, ext.rep.V.space)
    perturbed = ExtensionAlgebra(parts.rep, parts.theta, total)
    holds = not witnesses and diagram and is_morphism(phi, total, ext.total)
    if not holds:
        logger.info("Φ fails to intertwine the products at %d pairs", len(witnesses))
    return Perturbation(perturbed, phi, holds, tuple(witnesses))


def _check_abelian(ext: ExtensionAlgebra, name: str) -> None:
    if not ext.rep.V.product.is_zero():
        raise InputError("equivalence of extensions is decided for abelian extensions only", field=name)


def equivalent_abelian(e1: ExtensionAlgebra, e2: ExtensionAlgebra,
                       psi: Optional[Matrix] = None, phi: Optional[Matrix] = None) -> Optional[Matrix]:
    """h: L→V′ making Φ(x + v) = ψ(x) + h(x) + φ(v) an isomorphism M → M′, or None."""
    _check_abelian(e1, "e1")
    _check_abelian(e2, "e2")
    l1, l2 = e1.layout, e2.layout
    psi = psi if psi is not None else Matrix.identity(l1.n_l)
    phi = phi if phi is not None else Matrix.identity(l1.n_v)
    if (psi.rows, psi.cols) != (l2.n_l, l1.n_l) or (phi.rows, phi.cols) != (l2.n_v, l1.n_v):
        raise InputError("ψ or φ has the wrong shape", field="psi")
    if la.inverse(psi) is None or la.inverse(phi) is None:
        raise InputError("ψ and φ must be invertible", field="psi")
    if not is_morphism(psi, e1.rep.L, e2.rep.L):
        raise InputError("ψ is not a morphism of the quotient algebras", field="psi")
    if phi.matmul(e1.rep.V.twist.matrix) != e2.rep.V.twist.matrix.matmul(phi):
        raise InputError("φ does not intertwine the module twists", field="phi")
    n1, n2 = e1.total.dim, e2.total.dim
    n_l, n_v2 = l1.n_l, l2.n_v

    def unpack(x: Vector) -> Matrix:
        return Matrix.from_rows([x[r * n_l:(r + 1) * n_l] for r in range(n_v2)], n_l)

    def big_phi(h: Matrix) -> Matrix:
        cols = []
        for x in range(n_l):
            cols.append(la.add_vectors(l2.embed(L_BLOCK, psi.column(x)), l2.embed(V_BLOCK, h.column(x))))
        for v in range(l1.n_v):
            cols.append(l2.embed(V_BLOCK, phi.column(v)))
        return Matrix.from_columns(cols, n2)

    e = [la.unit_vector(n1, i) for i in range(n1)]

    def residual(x: Vector) -> List[Fraction]:
        m = big_phi(unpack(x))
        out: List[Fraction] = []
        for a, b in product(range(n1), repeat=2):
            lhs = m.apply(e1.total.mul(e[a], e[b]))
            rhs = e2.total.mul(m.apply(e[a]), m.apply(e[b]))
            out += [p - q for p, q in zip(lhs, rhs)]
        out += [p - q for p, q in zip(_flat(m.matmul(e1.total.twist.matrix)), _flat(e2.total.twist.matrix.matmul(m)))]
        return out

    x = la.solve_affine(residual, n_v2 * n_l)
    if x is None:
        logger.info("no h makes the extensions equivalent")
        return None
    return unpack(x)


def ext_group_dims(rep: RepresentationData) -> Tuple[int, int, int]:
    c = complex_build(rep, 2)
    return cohomology_dims(c).triple(2)


# ─── Quasiderivations and semidirect sums ────────────────────────────────────

def is_quasiderivation(V: HomAlgebra, d: Matrix, k: int = 0) -> Optional[Matrix]:
    """d′ with μ(d v, β^k w) + μ(β^k v, d w) = d′(μ(v, w)), or None."""
    n = V.dim
    if (d.rows, d.cols) != (n, n):
        raise InputError(f"d must be a {n}x{n} matrix", field="d")
    if k < 0:
        raise InputError("k must be non-negative", field="k")
    bk = V.twist.power(k).matrix
    e = [la.unit_vector(n, i) for i in range(n)]

    def unpack(x: Vector) -> Matrix:
        return Matrix.from_rows([x[r * n:(r + 1) * n] for r in range(n)], n)

    def residual(x: Vector) -> List[Fraction]:
        dp = unpack(x)
        out: List[Fraction] = []
        for v, w in product(range(n), repeat=2):
            lhs = la.add_vectors(V.mul(d.apply(e[v]), bk.apply(e[w])), V.mul(bk.apply(e[v]), d.apply(e[w])))
            out += [p - q for p, q in zip(lhs, dp.apply(V.mul(e[v], e[w])))]
        return out

    x = la.solve_affine(residual, n * n)
    return None if x is None else unpack(x)


def semidirect_lie(L: HomAlgebra, V: HomAlgebra, action: Sequence[Matrix], k: int = 1) -> ExtensionAlgebra:
    """d(x+v, y+w) = δ(x,y) + λ(x)w − λ(y)v + μ(v,w)."""
    if L.kind != HOM_LIE or V.kind != HOM_LIE:
        raise InputError("semidirect sums are built for Hom-Lie algebras", field="kind")
    if len(action) != L.dim:
        raise InputError(f"{len(action)} action matrices for L of dim {L.dim}", field="lambda")
    for x, m in enumerate(action):
        if is_quasiderivation(V, m, k) is None:
            raise VerificationFailure(f"λ({L.space.labels[x]}) is not a quasiderivation of V")
    layout = SplitLayout(L.space, V.space)
    lam_l, lam_r = {}, {}
    for x, m in enumerate(action):
        for w in range(V.dim):
            value = layout.embed(V_BLOCK, m.column(w))
            lam_l[(layout.to_ambient(L_BLOCK, x), layout.to_ambient(V_BLOCK, w))] = value
            lam_r[(layout.to_ambient(V_BLOCK, w), layout.to_ambient(L_BLOCK, x))] = la.scale_vector(Fraction(-1), value)
    ambient = layout.ambient
    rep = RepresentationData(L, V, Cochain(ambient, ambient, 2, lam_l), Cochain(ambient, ambient, 2, lam_r))
    report = verify_representation(rep)
    if not report.holds:
        first = report.failing_witnesses[0].condition
        raise VerificationFailure(f"the action violates {first}", report)
    return build_extension(rep)
