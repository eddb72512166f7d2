"""
Multilinear maps on based vector spaces.

A ``Cochain`` stores the structure constants of a k-linear map as a sparse
table {input index tuple: output vector}; indices are 0-based here and
1-based on the wire. Dense coordinates list input tuples in lexicographic
order and, inside each tuple, the output coordinate.

The subspaces C_β^k, Alt_β^k and Alt'_β^k are computed as kernels of
linear constraint systems over a ``CochainFrame`` (the set of coordinate
cells a family of cochains may occupy).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services.linear import Matrix, Subspace, Vector

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]

FLAVOR_BETA      = "beta-equivariant"
FLAVOR_ALT       = "alternating"
FLAVOR_SYMMETRIC = "symmetric-leibniz"


# ─── Spaces and twists ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class BasedSpace:
    dim: int
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise InputError(f"dimension must be at least 1, got {self.dim}", field="dim")
        if len(self.labels) != self.dim:
            raise InputError(f"{len(self.labels)} labels for dimension {self.dim}", field="labels")
        if len(set(self.labels)) != self.dim:
            raise InputError("labels must be distinct", field="labels")

    @classmethod
    def standard(cls, n: int, prefix: str = "e") -> "BasedSpace":
        return cls(n, tuple(f"{prefix}{i + 1}" for i in range(n)))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown basis label {label!r}", field="labels") from None

    def direct_sum(self, other: "BasedSpace") -> "BasedSpace":
        return BasedSpace(self.dim + other.dim, self.labels + other.labels)


@lru_cache(maxsize=256)
def _power(m: Matrix, k: int) -> Matrix:
    return m.power(k)


@dataclass(frozen=True)
class TwistMap:
    matrix: Matrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square():
            raise InputError(
                f"twist map must be square, got {self.matrix.rows}x{self.matrix.cols}", field="beta"
            )

    @classmethod
    def identity(cls, n: int) -> "TwistMap":
        return cls(Matrix.identity(n))

    @classmethod
    def diagonal(cls, values: Sequence) -> "TwistMap":
        return cls(Matrix.diagonal(values))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def power(self, k: int) -> "TwistMap":
        return TwistMap(_power(self.matrix, k))

    def image_of_basis(self, k: int = 1) -> Tuple[Vector, ...]:
        """Columns of β^k: the images of the basis vectors."""
        return tuple(_power(self.matrix, k).columns())

    def direct_sum(self, other: "TwistMap") -> "TwistMap":
        n, m = self.dim, other.dim
        rows = [list(r) + [la.ZERO] * m for r in self.matrix.entries]
        rows += [[la.ZERO] * n + list(r) for r in other.matrix.entries]
        return TwistMap(Matrix.from_rows(rows, n + m))


# ─── Cochains ────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Cochain:
    domain: BasedSpace
    codomain: BasedSpace
    arity: int
    coeffs: Mapping[Key, Vector] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise InputError(f"arity must be at least 1, got {self.arity}", field="arity")
        clean: Dict[Key, Vector] = {}
        for key, value in self.coeffs.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.arity or any(not 0 <= i < self.domain.dim for i in key):
                raise InputError(f"bad input index tuple {key} for arity {self.arity}", field="in")
            value = la.vector(value)
            if len(value) != self.codomain.dim:
                raise InputError(f"output of length {len(value)} for codomain dim {self.codomain.dim}", field="out")
            if not la.is_zero_vector(value):
                clean[key] = value
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    # construction
    @classmethod
    def zero(cls, space: BasedSpace, arity: int, codomain: Optional[BasedSpace] = None) -> "Cochain":
        return cls(space, codomain or space, arity, {})

    @classmethod
    def from_function(cls, space: BasedSpace, arity: int,
                      fn: Callable[[Key], Sequence[Fraction]],
                      codomain: Optional[BasedSpace] = None,
                      tuples: Optional[Iterable[Key]] = None) -> "Cochain":
        keys = tuples if tuples is not None else product(range(space.dim), repeat=arity)
        return cls(space, codomain or space, arity, {k: fn(k) for k in keys})

    @classmethod
    def linear_map(cls, m: Matrix, domain: BasedSpace, codomain: Optional[BasedSpace] = None) -> "Cochain":
        """Arity-1 cochain whose value on e_j is column j of m."""
        codomain = codomain or domain
        if m.rows != codomain.dim or m.cols != domain.dim:
            raise InputError(f"{m.rows}x{m.cols} matrix for map {domain.dim} -> {codomain.dim}")
        return cls(domain, codomain, 1, {(j,): m.column(j) for j in range(domain.dim)})

    # queries
    @property
    def is_endo(self) -> bool:
        return self.domain == self.codomain

    def value(self, key: Key) -> Vector:
        return self.coeffs.get(key, la.zero_vector(self.codomain.dim))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> List[Key]:
        return list(self.coeffs)

    def as_matrix(self) -> Matrix:
        """Matrix of an arity-1 cochain (columns are images of basis vectors)."""
        if self.arity != 1:
            raise InputError(f"cochain of arity {self.arity} is not a linear map")
        return Matrix.from_columns([self.value((j,)) for j in range(self.domain.dim)], self.codomain.dim)

    # arithmetic
    def _check_same_shape(self, other: "Cochain") -> None:
        if (self.domain, self.codomain, self.arity) != (other.domain, other.codomain, other.arity):
            raise InputError("cochains live in different spaces or have different arities")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_same_shape(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = la.add_vectors(out[k], v) if k in out else v
        return Cochain(self.domain, self.codomain, self.arity, out)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        return Cochain(self.domain, self.codomain, self.arity,
                       {k: la.scale_vector(c, v) for k, v in self.coeffs.items()})

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __call__(self, *args: Sequence[Fraction]) -> Vector:
        return evaluate(self, list(args))


def evaluate(f: Cochain, args: Sequence[Sequence[Fraction]]) -> Vector:
    """Multilinear extension of the stored structure constants."""
    if len(args) != f.arity:
        raise InputError(f"{len(args)} arguments for a cochain of arity {f.arity}")
    if any(len(a) != f.domain.dim for a in args):
        raise InputError(f"argument dimension does not match domain dim {f.domain.dim}")
    out = [la.ZERO] * f.codomain.dim
    if not f.coeffs:
        return tuple(out)
    supports = [[(i, c) for i, c in enumerate(a) if c] for a in args]
    size = 1
    for s in supports:
        size *= len(s)
    if size == 0:
        return tuple(out)
    if size <= len(f.coeffs):
        for combo in product(*supports):
            value = f.coeffs.get(tuple(i for i, _ in combo))
            if value is None:
                continue
            c = la.ONE
            for _, x in combo:
                c *= x
            for o, y in enumerate(value):
                if y:
                    out[o] += c * y
    else:
        for key, value in f.coeffs.items():
            c = la.ONE
            for slot, i in enumerate(key):
                c *= args[slot][i]
                if not c:
                    break
            if not c:
                continue
            for o, y in enumerate(value):
                if y:
                    out[o] += c * y
    return tuple(out)


def precompose(f: Cochain, maps: Sequence[Matrix], domain: BasedSpace) -> Cochain:
    """(a_1, …, a_k) ↦ f(A_1 a_1, …, A_k a_k) for matrices A_i: domain → f.domain."""
    if len(maps) != f.arity:
        raise InputError(f"{len(maps)} maps for a cochain of arity {f.arity}")
    cols = [m.columns() for m in maps]
    return Cochain.from_function(
        domain, f.arity,
        lambda key: evaluate(f, [cols[s][i] for s, i in enumerate(key)]),
        codomain=f.codomain,
    )


def postcompose(m: Matrix, f: Cochain, codomain: Optional[BasedSpace] = None) -> Cochain:
    """A∘f for a matrix A: f.codomain → codomain."""
    codomain = codomain or f.codomain
    if m.cols != f.codomain.dim or m.rows != codomain.dim:
        raise InputError(f"{m.rows}x{m.cols} matrix cannot follow a cochain into dim {f.codomain.dim}")
    return Cochain(f.domain, codomain, f.arity, {k: m.apply(v) for k, v in f.coeffs.items()})


def twist_compose(f: Cochain, beta: TwistMap) -> Cochain:
    """f⋆β: β applied to every argument."""
    if beta.dim != f.domain.dim:
        raise InputError(f"twist of dim {beta.dim} on a space of dim {f.domain.dim}", field="beta")
    return precompose(f, [beta.matrix] * f.arity, f.domain)


def is_beta_cochain(f: Cochain, beta: TwistMap, codomain_beta: Optional[TwistMap] = None) -> bool:
    """f⋆β = β∘f."""
    post = codomain_beta or beta
    return twist_compose(f, beta) == postcompose(post.matrix, f)


def is_alternating(f: Cochain) -> bool:
    n = f.domain.dim
    for key in product(range(n), repeat=f.arity):
        for s in range(f.arity - 1):
            swapped = key[:s] + (key[s + 1], key[s]) + key[s + 2:]
            if key <= swapped and la.add_vectors(f.value(key), f.value(swapped)) != la.zero_vector(f.codomain.dim):
                return False
    return True


def _insert(others: Sequence, slot: int, value) -> List:
    return list(others[:slot]) + [value] + list(others[slot:])


def pair_defects(f: Cochain, g: Cochain, inputs: Optional[Sequence[int]] = None,
                 twist: Optional[TwistMap] = None) -> List[Tuple[Tuple, Vector]]:
    """Witnesses where inserting g's value at slot i and at slot j of f fails to flip sign.

    The remaining arguments are twisted by β^(n-1), n the arity of g.
    """
    n = f.domain.dim
    idx = list(inputs) if inputs is not None else list(range(n))
    twisted = (twist.image_of_basis(g.arity - 1) if twist is not None
               else tuple(la.unit_vector(n, i) for i in range(n)))
    g_values = la.span_basis(
        [v for v in (g.value(k) for k in product(range(g.domain.dim), repeat=g.arity)) if not la.is_zero_vector(v)],
        n,
    ).basis
    m = f.arity
    found: List[Tuple[Tuple, Vector]] = []
    for others in product(idx, repeat=m - 1):
        args = [twisted[i] for i in others]
        for gv_index, gv in enumerate(g_values):
            for i in range(m):
                for j in range(i + 1, m):
                    left  = evaluate(f, _insert(args, i, gv))
                    right = evaluate(f, _insert(args, j, gv))
                    total = la.add_vectors(left, right)
                    if not la.is_zero_vector(total):
                        found.append(((others, gv_index, i, j), total))
    return found


def is_pair_cochain(f: Cochain, g: Cochain, beta: Optional[TwistMap] = None) -> bool:
    """The (m,n)-β-cochain condition on (f, g); β = id when omitted."""
    return not pair_defects(f, g, twist=beta)


# ─── Frames and bases ────────────────────────────────────────────────────────

@dataclass(frozen=True)
class CochainFrame:
    """Coordinate cells (input tuple, output index) a family of cochains may occupy."""
    space: BasedSpace
    arity: int
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]

    @classmethod
    def full(cls, space: BasedSpace, arity: int) -> "CochainFrame":
        r = tuple(range(space.dim))
        return cls(space, arity, r, r)

    def tuples(self) -> List[Key]:
        return list(product(self.inputs, repeat=self.arity))

    def cells(self) -> List[Tuple[Key, int]]:
        return [(t, o) for t in self.tuples() for o in self.outputs]

    @property
    def size(self) -> int:
        return len(self.inputs) ** self.arity * len(self.outputs)

    def contains(self, f: Cochain) -> bool:
        ins, outs = set(self.inputs), set(self.outputs)
        return all(
            all(i in ins for i in key) and all(o in outs for o, y in enumerate(v) if y)
            for key, v in f.coeffs.items()
        )

    def to_vector(self, f: Cochain) -> Vector:
        if f.arity != self.arity or f.domain != self.space:
            raise InputError(f"cochain of arity {f.arity} does not fit a frame of arity {self.arity}")
        if not self.contains(f):
            raise InputError("cochain has coefficients outside the admissible cells")
        return tuple(f.value(t)[o] for t, o in self.cells())

    def from_vector(self, vec: Sequence[Fraction]) -> Cochain:
        coeffs: Dict[Key, List[Fraction]] = {}
        for (t, o), c in zip(self.cells(), vec):
            if c:
                coeffs.setdefault(t, [la.ZERO] * self.space.dim)[o] = Fraction(c)
        return Cochain(self.space, self.space, self.arity, coeffs)

    def elementary(self) -> List[Cochain]:
        out = []
        for t, o in self.cells():
            out.append(Cochain(self.space, self.space, self.arity, {t: la.unit_vector(self.space.dim, o)}))
        return out


def full_space_dim(space: BasedSpace, k: int) -> int:
    return space.dim ** (k + 1)


@dataclass(frozen=True)
class CochainBasis:
    arity: int
    members: Tuple[Cochain, ...]
    flavor: str
    frame: CochainFrame

    @property
    def dim(self) -> int:
        return len(self.members)

    def subspace(self) -> Subspace:
        return Subspace(self.frame.size, tuple(self.frame.to_vector(c) for c in self.members))

    def contains(self, f: Cochain) -> bool:
        return self.frame.contains(f) and la.subspace_membership(self.frame.to_vector(f), self.subspace())

    def coordinates(self, f: Cochain) -> Optional[Vector]:
        if not self.frame.contains(f):
            return None
        return la.coordinates(self.frame.to_vector(f), self.subspace())

    def combine(self, coefficients: Sequence[Fraction]) -> Cochain:
        total = Cochain.zero(self.frame.space, self.arity)
        for c, member in zip(coefficients, self.members):
            if c:
                total = total + member.scale(c)
        return total


Condition = Callable[[Cochain], Dict[Hashable, Fraction]]


def constrained_basis(frame: CochainFrame, conditions: Sequence[Condition], flavor: str) -> CochainBasis:
    """Kernel of the linear conditions over the frame's coordinates."""
    columns: List[Dict[Hashable, Fraction]] = []
    for e in frame.elementary():
        residual: Dict[Hashable, Fraction] = {}
        for n, cond in enumerate(conditions):
            for k, v in cond(e).items():
                if v:
                    residual[(n, k)] = v
        columns.append(residual)
    row_keys = sorted({k for col in columns for k in col}, key=repr)
    index = {k: i for i, k in enumerate(row_keys)}
    grid = [[la.ZERO] * frame.size for _ in row_keys]
    for j, col in enumerate(columns):
        for k, v in col.items():
            grid[index[k]][j] = v
    kernel = la.kernel_basis(la.stack_rows(grid, frame.size))
    members = tuple(frame.from_vector(v) for v in kernel.basis)
    logger.debug("%s basis arity %d: %d of %d cells", flavor, frame.arity, len(members), frame.size)
    return CochainBasis(frame.arity, members, flavor, frame)


def _cochain_residual(c: Cochain) -> Dict[Hashable, Fraction]:
    return {(k, o): y for k, v in c.coeffs.items() for o, y in enumerate(v) if y}


def beta_condition(beta: TwistMap) -> Condition:
    return lambda f: _cochain_residual(postcompose(beta.matrix, f) - twist_compose(f, beta))


def alternation_condition(inputs: Sequence[int]) -> Condition:
    def cond(f: Cochain) -> Dict[Hashable, Fraction]:
        out: Dict[Hashable, Fraction] = {}
        for key in product(inputs, repeat=f.arity):
            for s in range(f.arity - 1):
                swapped = key[:s] + (key[s + 1], key[s]) + key[s + 2:]
                if key <= swapped:
                    for o, y in enumerate(la.add_vectors(f.value(key), f.value(swapped))):
                        if y:
                            out[(key, s, o)] = y
        return out
    return cond


def pair_condition(g: Cochain, inputs: Sequence[int], twist: TwistMap) -> Condition:
    def cond(f: Cochain) -> Dict[Hashable, Fraction]:
        out: Dict[Hashable, Fraction] = {}
        for where, total in pair_defects(f, g, inputs, twist):
            for o, y in enumerate(total):
                if y:
                    out[(where, o)] = y
        return out
    return cond


def beta_cochain_basis(space: BasedSpace, beta: TwistMap, k: int,
                       frame: Optional[CochainFrame] = None) -> CochainBasis:
    """Basis of C_β^k: kernel of f ↦ β∘f − f⋆β."""
    if k < 1:
        raise InputError(f"cochain arity must be at least 1, got {k}", field="k")
    frame = frame or CochainFrame.full(space, k)
    return constrained_basis(frame, [beta_condition(beta)], FLAVOR_BETA)


def alternating_basis(space: BasedSpace, beta: TwistMap, k: int,
                      frame: Optional[CochainFrame] = None) -> CochainBasis:
    if k < 1:
        raise InputError(f"cochain arity must be at least 1, got {k}", field="k")
    frame = frame or CochainFrame.full(space, k)
    return constrained_basis(
        frame, [beta_condition(beta), alternation_condition(frame.inputs)], FLAVOR_ALT
    )


def symmetric_leibniz_basis(space: BasedSpace, beta: TwistMap, k: int, d: Cochain,
                            frame: Optional[CochainFrame] = None) -> CochainBasis:
    """Basis of Alt'_β^k: f ∈ C_β^k such that (f, d) is a (k,2)-β-cochain."""
    if d.arity != 2:
        raise InputError(f"symmetric cochains are taken relative to a product, got arity {d.arity}")
    if k < 1:
        raise InputError(f"cochain arity must be at least 1, got {k}", field="k")
    frame = frame or CochainFrame.full(space, k)
    conditions = [beta_condition(beta)]
    if k >= 2:
        conditions.append(pair_condition(d, frame.inputs, beta))
    return constrained_basis(frame, conditions, FLAVOR_SYMMETRIC)
