"""Builders and hypothesis strategies shared by the test modules."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Optional, Sequence

from hypothesis import strategies as st

from homnr.codec.io import parse_algebra
from homnr.codec.models import FIXTURES
from homnr.services.cochains import (
    BasedSpace, Cochain, CochainBasis, TwistMap, alternating_basis, beta_cochain_basis, postcompose,
    precompose,
)
from homnr.services import linear as la
from homnr.services.linear import Matrix
from homnr.services.representations import (
    PATTERNS, RepresentationData, SplitLayout, adjoint_representation, trivial_representation,
)
from homnr.services.structures import HomAlgebra

F = Fraction


def fixture(name: str, kind: Optional[str] = None) -> HomAlgebra:
    return parse_algebra(FIXTURES[name], name, kind)


def algebra(dim: int, table: Dict[tuple, Sequence], kind: str = "left-leibniz",
            beta: Optional[Sequence] = None, prefix: str = "e", name: str = "") -> HomAlgebra:
    """Algebra from 0-based structure constants {(i, j): output vector}."""
    space = BasedSpace.standard(dim, prefix)
    twist = TwistMap.diagonal(beta) if beta is not None else TwistMap.identity(dim)
    return HomAlgebra(space, Cochain(space, space, 2, table), twist, kind, name=name)


def abelian(dim: int, kind: str = "left-leibniz", prefix: str = "f") -> HomAlgebra:
    return algebra(dim, {}, kind, prefix=prefix)


def lz2_over_q() -> RepresentationData:
    """L = FIX-LZ2, V = ℚ with zero actions."""
    return trivial_representation(fixture("FIX-LZ2"), abelian(1))


def l_to_v(rep: RepresentationData, table: Dict[tuple, Sequence]) -> Cochain:
    return Cochain(rep.L.space, rep.V.space, 2, table)


def scalar_actions(kind: str, left: Sequence, right: Sequence,
                   beta: Optional[Sequence] = None) -> RepresentationData:
    """[e2, e2] = e1 acting on ℚ by λ_l(e_i, f) = left[i]·f and λ_r(f, e_i) = right[i]·f."""
    L = algebra(2, {(1, 1): (1, 0)}, kind, beta=beta)
    V = abelian(1, kind)
    layout = SplitLayout(L.space, V.space)
    lam_l = Cochain(L.space, V.space, 2, {(i, 0): (c,) for i, c in enumerate(left)})
    lam_r = Cochain(L.space, V.space, 2, {(0, i): (c,) for i, c in enumerate(right)})
    return RepresentationData(L, V, layout.lift(lam_l, *PATTERNS["lambda_l"]),
                              layout.lift(lam_r, *PATTERNS["lambda_r"]))


def lz2_character(s, opposite: bool) -> RepresentationData:
    """The left representations of FIX-LZ2 on ℚ: e2 acts by s on the left and by -s or 0 on the right."""
    return scalar_actions("left-leibniz", [0, s], [0, -s if opposite else 0])


def change_of_basis(a: HomAlgebra, p: Matrix) -> HomAlgebra:
    """The algebra read in the basis p: d′(x, y) = p⁻¹ d(px, py), β′ = p⁻¹βp."""
    inv = la.inverse(p)
    product = postcompose(inv, precompose(a.product, [p, p], a.space))
    return HomAlgebra(a.space, product, TwistMap(inv.matmul(a.twist.matrix).matmul(p)), a.kind, name=a.name)


# ─── Strategies ──────────────────────────────────────────────────────────────

small = st.integers(min_value=-2, max_value=2).map(Fraction)


@st.composite
def cochains(draw, dim: int = 2, arity: int = 2) -> Cochain:
    space = BasedSpace.standard(dim)
    coeffs = {key: tuple(draw(small) for _ in range(dim)) for key in product(range(dim), repeat=arity)}
    return Cochain(space, space, arity, coeffs)


@st.composite
def algebras(draw, dim: int = 2, kind: str = "left-leibniz", twisted: bool = False,
             singular: bool = False) -> HomAlgebra:
    d = draw(cochains(dim, 2))
    values = [1, 2, -1, 0] if singular else [1, 2, -1]
    beta = [draw(st.sampled_from(values)) for _ in range(dim)] if twisted else None
    return HomAlgebra(d.domain, d, TwistMap.diagonal(beta) if beta else TwistMap.identity(dim), kind)


@st.composite
def twists(draw, dim: int = 2) -> TwistMap:
    rows = [[draw(small) for _ in range(dim)] for _ in range(dim)]
    return TwistMap(Matrix.from_rows(rows, dim))


@lru_cache(maxsize=None)
def beta_basis(beta: tuple, arity: int) -> CochainBasis:
    return beta_cochain_basis(BasedSpace.standard(len(beta)), TwistMap.diagonal(beta), arity)


@lru_cache(maxsize=None)
def fixture_alternating_basis(name: str, arity: int) -> CochainBasis:
    a = fixture(name)
    return alternating_basis(a.space, a.twist, arity)


@st.composite
def combinations(draw, basis: CochainBasis) -> Cochain:
    return basis.combine([draw(small) for _ in range(basis.dim)])


def beta_cochains(beta: Sequence = (1, 2), arity: int = 2):
    """Random members of C_β^arity for a diagonal β."""
    return combinations(beta_basis(tuple(beta), arity))


@st.composite
def base_changes(draw, dim: int) -> Matrix:
    """Invertible integer matrices: a permutation times unit-lower times upper-triangular."""
    perm = draw(st.permutations(range(dim)))
    swap = [[1 if perm[i] == j else 0 for j in range(dim)] for i in range(dim)]
    lower = [[1 if i == j else (draw(small) if j < i else 0) for j in range(dim)] for i in range(dim)]
    upper = [[draw(st.sampled_from([1, 2, -1])) if i == j else (draw(small) if j > i else 0)
              for j in range(dim)] for i in range(dim)]
    return Matrix.from_rows(swap, dim).matmul(Matrix.from_rows(lower, dim)).matmul(Matrix.from_rows(upper, dim))


@st.composite
def transported(draw, names: Sequence[str]) -> HomAlgebra:
    a = fixture(draw(st.sampled_from(list(names))))
    return change_of_basis(a, draw(base_changes(a.dim)))


@st.composite
def representations(draw) -> RepresentationData:
    """Verified representations: characters of FIX-LZ2 and adjoint modules of transported fixtures."""
    source = draw(st.sampled_from(["character", "FIX-LZ2", "FIX-DIAG-BETA", "FIX-HEIS"]))
    if source == "character":
        return lz2_character(draw(small), draw(st.booleans()))
    return adjoint_representation(draw(transported([source])))
