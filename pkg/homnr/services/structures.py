"""
Hom-algebras and their structure checks.

``verify_structure`` decides a kind through the bracket (½[d,d] = 0 plus
the kind's symmetry constraint); ``verify_identity_direct`` evaluates the
classical identity on basis triples and serves as its oracle.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
from typing import List, Optional, Tuple

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services import nr_bracket as nr
from homnr.services.cochains import (
    BasedSpace, Cochain, Key, TwistMap, evaluate, is_beta_cochain, pair_defects,
)
from homnr.services.linear import Matrix, Vector

logger = logging.getLogger(__name__)

PLAIN             = "plain"
LEFT_LEIBNIZ      = "left-leibniz"
RIGHT_LEIBNIZ     = "right-leibniz"
SYMMETRIC_LEIBNIZ = "symmetric-leibniz"
HOM_LIE           = "hom-lie"

STRUCTURE_KINDS = (PLAIN, LEFT_LEIBNIZ, RIGHT_LEIBNIZ, SYMMETRIC_LEIBNIZ, HOM_LIE)

# bracket realising each kind's structure equation
KIND_BRACKET = {
    PLAIN:             nr.LEFT,
    LEFT_LEIBNIZ:      nr.LEFT,
    RIGHT_LEIBNIZ:     nr.RIGHT,
    SYMMETRIC_LEIBNIZ: nr.LEFT,
    HOM_LIE:           nr.LIE,
}


def check_kind(kind: str) -> str:
    if kind not in STRUCTURE_KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(STRUCTURE_KINDS)}", field="kind")
    return kind


@dataclass(frozen=True)
class HomAlgebra:
    space: BasedSpace
    product: Cochain
    twist: TwistMap
    kind: str = PLAIN
    name: str = ""

    def __post_init__(self) -> None:
        check_kind(self.kind)
        if self.product.arity != 2:
            raise InputError(f"product must have arity 2, got {self.product.arity}", field="product")
        if self.product.domain != self.space or self.product.codomain != self.space:
            raise InputError("product must map the algebra's space to itself", field="product")
        if self.twist.dim != self.space.dim:
            raise InputError(f"twist of dim {self.twist.dim} for an algebra of dim {self.space.dim}", field="beta")

    @property
    def dim(self) -> int:
        return self.space.dim

    def with_kind(self, kind: str) -> "HomAlgebra":
        return replace(self, kind=check_kind(kind))

    def mul(self, x: Vector, y: Vector) -> Vector:
        return evaluate(self.product, [x, y])


@dataclass(frozen=True)
class Witness:
    condition: str
    args: Tuple
    defect: Vector


@dataclass(frozen=True)
class VerificationReport:
    holds: bool
    failing_witnesses: Tuple[Witness, ...] = ()
    check: str = ""
    multiplicative: Optional[bool] = None

    @classmethod
    def from_witnesses(cls, witnesses: List[Witness], check: str,
                       multiplicative: Optional[bool] = None) -> "VerificationReport":
        ordered = tuple(sorted(witnesses, key=lambda w: (w.condition, repr(w.args))))
        return cls(not ordered, ordered, check, multiplicative)

    def witness_args(self, condition: Optional[str] = None) -> List[Tuple]:
        return [w.args for w in self.failing_witnesses if condition is None or w.condition == condition]


def cochain_witnesses(c: Cochain, condition: str) -> List[Witness]:
    return [Witness(condition, key, value) for key, value in c.coeffs.items()]


def alternation_witnesses(d: Cochain) -> List[Witness]:
    out = []
    for i, j in product(range(d.domain.dim), repeat=2):
        if i <= j:
            total = la.add_vectors(d.value((i, j)), d.value((j, i)))
            if not la.is_zero_vector(total):
                out.append(Witness("skew-symmetry", (i, j), total))
    return out


# ─── Verification ────────────────────────────────────────────────────────────

def verify_structure(a: HomAlgebra) -> VerificationReport:
    d, beta = a.product, a.twist
    multiplicative = is_multiplicative(a)
    witnesses: List[Witness] = []
    if a.kind == LEFT_LEIBNIZ:
        witnesses += cochain_witnesses(nr.square_half(d, beta, nr.LEFT), "left-leibniz")
    elif a.kind == RIGHT_LEIBNIZ:
        witnesses += cochain_witnesses(nr.square_half(d, beta, nr.RIGHT), "right-leibniz")
    elif a.kind == SYMMETRIC_LEIBNIZ:
        witnesses += [Witness("pair", where, total) for where, total in pair_defects(d, d, twist=beta)]
        witnesses += cochain_witnesses(nr.square_half(d, beta, nr.LEFT), "left-leibniz")
    elif a.kind == HOM_LIE:
        witnesses += alternation_witnesses(d)
        witnesses += cochain_witnesses(nr.square_half(d, beta, nr.LEFT), "left-leibniz")
    report = VerificationReport.from_witnesses(witnesses, "bracket", multiplicative)
    logger.debug("verify_structure %s (%s): holds=%s", a.name or "algebra", a.kind, report.holds)
    return report


def identity_defect(a: HomAlgebra, identity: str, key: Key) -> Vector:
    """Right-hand side minus left-hand side of a classical identity at a basis triple."""
    n = a.dim
    e = [la.unit_vector(n, i) for i in range(n)]
    b = a.twist.image_of_basis(1)
    x, y, z = key
    m = a.mul
    neg = lambda v: la.scale_vector(Fraction(-1), v)
    if identity == "left":
        # [αx,[y,z]] = [[x,y],αz] + [αy,[x,z]]
        return la.add_vectors(la.add_vectors(m(m(e[x], e[y]), b[z]), m(b[y], m(e[x], e[z]))),
                              neg(m(b[x], m(e[y], e[z]))))
    if identity == "right":
        # [αx,[y,z]] = [[x,y],αz] − [[x,z],αy]
        return la.add_vectors(la.add_vectors(m(m(e[x], e[y]), b[z]), neg(m(m(e[x], e[z]), b[y]))),
                              neg(m(b[x], m(e[y], e[z]))))
    if identity == "jacobi":
        return la.add_vectors(la.add_vectors(m(b[x], m(e[y], e[z])), m(b[y], m(e[z], e[x]))),
                              m(b[z], m(e[x], e[y])))
    raise InputError(f"unknown identity {identity!r}")


def verify_identity_direct(a: HomAlgebra) -> VerificationReport:
    if a.kind == PLAIN:
        raise InputError("a plain Hom-algebra has no identity to check", field="kind")
    identities = {
        LEFT_LEIBNIZ:      ["left"],
        RIGHT_LEIBNIZ:     ["right"],
        SYMMETRIC_LEIBNIZ: ["left", "right"],
        HOM_LIE:           ["jacobi"],
    }[a.kind]
    witnesses: List[Witness] = []
    if a.kind == HOM_LIE:
        witnesses += alternation_witnesses(a.product)
    for key in product(range(a.dim), repeat=3):
        for identity in identities:
            defect = identity_defect(a, identity, key)
            if not la.is_zero_vector(defect):
                witnesses.append(Witness(f"{identity}-identity", key, defect))
    return VerificationReport.from_witnesses(witnesses, "identity", is_multiplicative(a))


def detect_kinds(a: HomAlgebra) -> List[str]:
    """Every non-plain kind the algebra satisfies."""
    return [k for k in STRUCTURE_KINDS[1:] if verify_structure(a.with_kind(k)).holds]


def is_multiplicative(a: HomAlgebra) -> bool:
    return is_beta_cochain(a.product, a.twist)


def is_morphism(f: Matrix, a: HomAlgebra, b: HomAlgebra) -> bool:
    """f∘α = α'∘f and f([x,y]) = [f(x),f(y)]' on basis elements."""
    if f.rows != b.dim or f.cols != a.dim:
        raise InputError(f"{f.rows}x{f.cols} matrix cannot map dim {a.dim} to dim {b.dim}", field="morphism")
    if f.matmul(a.twist.matrix) != b.twist.matrix.matmul(f):
        return False
    images = f.columns()
    for i, j in product(range(a.dim), repeat=2):
        if f.apply(a.product.value((i, j))) != b.mul(images[i], images[j]):
            return False
    return True
