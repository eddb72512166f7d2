"""
Shuffle engine and the β-Nijenhuis-Richardson circle products and brackets.

For f of arity m and g of arity n the circle product sums over the
(n, m−1)-unshuffles σ: g eats the arguments σ(1..n), the remaining ones
go to f through β^(n−1), and g sits in slot i of f with sign
(−1)^(i−1)·ε(σ):

  left   i = position where σ(n) would merge into the increasing tail
  right  i = position where σ(1) would merge into the increasing tail
  lie    i = 1, sign ε(σ)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, List, Optional, Tuple

from homnr.errors import InputError
from homnr.services import linear as la
from homnr.services.cochains import BasedSpace, Cochain, Key, TwistMap, evaluate

logger = logging.getLogger(__name__)

LEFT  = "left"
RIGHT = "right"
LIE   = "lie"
KINDS = (LEFT, RIGHT, LIE)


@dataclass(frozen=True)
class Shuffle:
    perm: Tuple[int, ...]   # 1-based images σ(1), …, σ(p+q)
    p: int
    sign: int

    @property
    def head(self) -> Tuple[int, ...]:
        return self.perm[:self.p]

    @property
    def tail(self) -> Tuple[int, ...]:
        return self.perm[self.p:]


@dataclass(frozen=True)
class GradedCochain:
    cochain: Cochain

    @property
    def degree(self) -> int:
        return self.cochain.arity - 1


@lru_cache(maxsize=128)
def shuffles(p: int, q: int) -> Tuple[Shuffle, ...]:
    """All (p,q)-unshuffles in lexicographic order of their head, with parity sign."""
    if p < 0 or q < 0:
        raise InputError(f"shuffle sizes must be non-negative, got ({p},{q})")
    everything = range(1, p + q + 1)
    out: List[Shuffle] = []
    for head in combinations(everything, p):
        chosen = set(head)
        tail = tuple(x for x in everything if x not in chosen)
        inversions = sum(1 for s in head for t in tail if t < s)
        out.append(Shuffle(head + tail, p, -1 if inversions % 2 else 1))
    return tuple(out)


def insertion_rank(sigma: Shuffle, p: int, kind: str) -> int:
    """Slot (1-based) of f that receives g's value."""
    tail = sigma.perm[p:]
    if kind == LEFT:
        pivot = sigma.perm[p - 1]
    elif kind == RIGHT:
        pivot = sigma.perm[0]
    else:
        raise InputError(f"insertion rank is not defined for kind {kind!r}", field="kind")
    return 1 + sum(1 for t in tail if t < pivot)


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InputError(f"unknown bracket kind {kind!r}; expected one of {', '.join(KINDS)}", field="kind")


def _check_pair(f: Cochain, g: Cochain, beta: TwistMap) -> BasedSpace:
    if not (f.is_endo and g.is_endo) or f.domain != g.domain:
        raise InputError("bracket operands must be endomorphism cochains on a shared space")
    if beta.dim != f.domain.dim:
        raise InputError(f"twist of dim {beta.dim} on a space of dim {f.domain.dim}", field="beta")
    return f.domain


def _terms(m: int, n: int, kind: str) -> List[Tuple[Shuffle, int, int]]:
    terms = []
    for sigma in shuffles(n, m - 1):
        if kind == LIE:
            terms.append((sigma, 1, sigma.sign))
        else:
            i = insertion_rank(sigma, n, kind)
            terms.append((sigma, i, sigma.sign * (-1 if (i - 1) % 2 else 1)))
    return terms


def circle(f: Cochain, g: Cochain, beta: TwistMap, kind: str,
           tuples: Optional[Iterable[Key]] = None) -> Cochain:
    """f ∘ g of arity m+n−1, evaluated on every basis tuple (or only on ``tuples``)."""
    _check_kind(kind)
    space = _check_pair(f, g, beta)
    m, n = f.arity, g.arity
    arity = m + n - 1
    if f.is_zero() or g.is_zero():
        return Cochain.zero(space, arity)
    twisted = beta.image_of_basis(n - 1)
    terms = _terms(m, n, kind)
    keys = tuples if tuples is not None else product(range(space.dim), repeat=arity)
    coeffs = {}
    for key in keys:
        total = [la.ZERO] * space.dim
        for sigma, slot, sign in terms:
            g_value = g.value(tuple(key[a - 1] for a in sigma.head))
            if la.is_zero_vector(g_value):
                continue
            args = [twisted[key[a - 1]] for a in sigma.tail]
            args.insert(slot - 1, g_value)
            for o, y in enumerate(evaluate(f, args)):
                if y:
                    total[o] += sign * y
        coeffs[key] = total
    return Cochain(space, space, arity, coeffs)


def bracket(f: Cochain, g: Cochain, beta: TwistMap, kind: str,
            tuples: Optional[Iterable[Key]] = None) -> Cochain:
    """[f,g] = f∘g − (−1)^((m−1)(n−1)) g∘f."""
    keys = list(tuples) if tuples is not None else None
    fg = circle(f, g, beta, kind, keys)
    gf = circle(g, f, beta, kind, keys)
    if (GradedCochain(f).degree * GradedCochain(g).degree) % 2:
        return fg + gf
    return fg - gf


def square_half(d: Cochain, beta: TwistMap, kind: str) -> Cochain:
    """½[d,d] for a product d, checked against its three-term expansion."""
    if d.arity != 2:
        raise InputError(f"square_half needs an arity-2 product, got arity {d.arity}", field="arity")
    engine = circle(d, d, beta, kind)
    if kind in (LEFT, RIGHT):
        direct = square_half_direct(d, beta, kind)
        if engine != direct:
            raise RuntimeError(f"{kind} circle product disagrees with its three-term expansion")
    return engine


def square_half_direct(d: Cochain, beta: TwistMap, kind: str) -> Cochain:
    """The displayed ½[d,d] formulas, term by term."""
    space = d.domain
    b = beta.image_of_basis(1)
    e = [la.unit_vector(space.dim, i) for i in range(space.dim)]

    def left(key: Key) -> la.Vector:
        x, y, z = key
        return la.add_vectors(
            la.add_vectors(evaluate(d, [d(e[x], e[y]), b[z]]), evaluate(d, [b[y], d(e[x], e[z])])),
            la.scale_vector(Fraction(-1), evaluate(d, [b[x], d(e[y], e[z])])),
        )

    def right(key: Key) -> la.Vector:
        x, y, z = key
        return la.add_vectors(
            la.add_vectors(evaluate(d, [d(e[x], e[y]), b[z]]),
                           la.scale_vector(Fraction(-1), evaluate(d, [d(e[x], e[z]), b[y]]))),
            la.scale_vector(Fraction(-1), evaluate(d, [b[x], d(e[y], e[z])])),
        )

    return Cochain.from_function(space, 3, left if kind == LEFT else right)
