"""Exact automorphism/endomorphism enumeration and the endomorphism builders.

Counts are exact arbitrary-precision integers and ratios exact fractions;
nothing here approximates.  The endomorphism search walks a fixed linear
extension, restricting each element's images to the intersection of the
principal up-sets of its lower covers' images.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .core import GradedInfo, Poset, Window
from .errors import (
    BudgetExceeded,
    NotCentral,
    NotOlderSibling,
    NotOrderPreserving,
    NotUpSingle,
    SizeLimit,
    SizeMismatch,
    WrongCase,
)
from .analysis import CASE_LADDER, PairClassification

AUTOMORPHISM = "automorphism"
ENDOMORPHISM = "endomorphism"

DEFAULT_BUDGET = 10**9
BRUTE_FORCE_LIMIT = 7


@dataclass(frozen=True)
class Morphism:
    """A total order-preserving self-map, tagged by bijectivity."""

    image: tuple[int, ...]
    kind: str

    def is_bijective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]


class CompositionStats(NamedTuple):
    distinct: int
    max_multiplicity: int


@dataclass(frozen=True)
class CountResult:
    """Exact morphism counts and their exact ratio."""

    aut_count: int
    end_count: int
    ratio: Fraction


def _kind_of(image) -> str:
    return AUTOMORPHISM if len(set(image)) == len(image) else ENDOMORPHISM


def make_morphism(image) -> Morphism:
    """Tag an image vector; the caller vouches for order preservation."""
    img = tuple(image)
    return Morphism(img, _kind_of(img))


def identity_morphism(n: int) -> Morphism:
    return Morphism(tuple(range(n)), AUTOMORPHISM)


def is_order_preserving(p: Poset, image) -> bool:
    """True iff every cover maps to a comparable-or-equal pair.

    Covers generate the order, so checking them suffices for totality.
    """
    if len(image) != p.n:
        raise SizeMismatch(f"image has {len(image)} entries for n={p.n}")
    up = p.up_set_masks()
    for u in range(p.n):
        iu = image[u]
        for v in p.up_covers[u]:
            if not (up[iu] >> image[v]) & 1:
                return False
    return True


def enumerate_automorphisms(
    p: Poset, g: GradedInfo, max_level: int = 10
) -> list[Morphism]:
    """All order automorphisms, sorted by image vector.

    Automorphisms of a graded poset preserve rank, so the search assigns one
    level at a time, checking the cover pattern against the previous level.
    """
    levels = g.levels()
    for level in levels:
        if len(level) > max_level:
            raise SizeLimit(
                f"level of {len(level)} elements exceeds the permutation budget"
            )
    down_sets = [frozenset(p.down_covers[x]) for x in range(p.n)]
    degree = [
        (len(p.down_covers[x]), len(p.up_covers[x])) for x in range(p.n)
    ]
    image = [0] * p.n
    found: list[tuple[int, ...]] = []

    def assign_level(i: int) -> None:
        if i == len(levels):
            found.append(tuple(image))
            return
        level = levels[i]
        for perm in itertools.permutations(level):
            ok = True
            for x, target in zip(level, perm):
                if degree[x] != degree[target]:
                    ok = False
                    break
                if {image[d] for d in down_sets[x]} != down_sets[target]:
                    ok = False
                    break
            if ok:
                for x, target in zip(level, perm):
                    image[x] = target
                assign_level(i + 1)

    assign_level(0)
    found.sort()
    return [Morphism(img, AUTOMORPHISM) for img in found]


def _boundaries(p: Poset, order) -> list[tuple[int, ...]]:
    """For each prefix of the extension, the assigned elements still
    constraining the suffix (those with an upper cover not yet placed)."""
    pos = {e: i for i, e in enumerate(order)}
    out = []
    for i in range(len(order)):
        boundary = [
            e
            for e in order[:i]
            if any(pos[c] >= i for c in p.up_covers[e])
        ]
        out.append(tuple(boundary))
    return out


def count_endomorphisms(
    p: Poset, budget: int = DEFAULT_BUDGET, memo: bool = False
) -> int:
    """Exact number of order-preserving self-maps.

    Backtracks over a fixed linear extension; each element's candidates are
    the intersection of the principal up-sets of the images of its lower
    covers.  With ``memo`` the suffix counts are cached per boundary image,
    which collapses tower-shaped posets to near-linear work.  Exceeding
    ``budget`` raises; a truncated count is never returned.
    """
    if p.n == 0:
        return 1
    order = p.topo_order()
    up = p.up_set_masks()
    full = (1 << p.n) - 1
    down = p.down_covers
    boundaries = _boundaries(p, order) if memo else None
    table: dict = {}
    image = [0] * p.n
    nodes = 0

    def count_from(i: int) -> int:
        nonlocal nodes
        if i == p.n:
            return 1
        key = None
        if memo:
            key = (i, tuple(image[b] for b in boundaries[i]))
            hit = table.get(key)
            if hit is not None:
                return hit
        e = order[i]
        mask = full
        for d in down[e]:
            mask &= up[image[d]]
        total = 0
        m = mask
        while m:
            low = m & -m
            m ^= low
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"endomorphism search passed {budget} nodes")
            image[e] = low.bit_length() - 1
            total += count_from(i + 1)
        if memo:
            table[key] = total
        return total

    return count_from(0)


def brute_force_endomorphisms(p: Poset, limit: int = BRUTE_FORCE_LIMIT) -> list[Morphism]:
    """Every order-preserving self-map by n^n enumeration; the oracle path."""
    if p.n > limit:
        raise SizeLimit(f"n={p.n} exceeds the n^n enumeration limit {limit}")
    covers = p.covers()
    up = p.up_set_masks()
    out = []
    for image in itertools.product(range(p.n), repeat=p.n):
        if all((up[image[u]] >> image[v]) & 1 for u, v in covers):
            out.append(make_morphism(image))
    return out


def collapse_up_single(p: Poset, x: int) -> Morphism:
    """Send an element with a unique upper cover onto that cover, fix the rest."""
    if len(p.up_covers[x]) != 1:
        raise NotUpSingle(
            f"element {x} has {len(p.up_covers[x])} upper covers, needs exactly 1"
        )
    y = p.up_covers[x][0]
    image = list(range(p.n))
    image[x] = y
    return Morphism(tuple(image), ENDOMORPHISM)


def fold_onto_sibling(p: Poset, a: int, b: int) -> Morphism:
    """Send a onto an equal-rank element whose covers contain a's, fix the rest."""
    d = p.depths()
    if (
        a == b
        or d[a] != d[b]
        or not set(p.down_covers[a]) <= set(p.down_covers[b])
        or not set(p.up_covers[a]) <= set(p.up_covers[b])
    ):
        raise NotOlderSibling(f"{b} does not absorb the covers of {a}")
    image = list(range(p.n))
    image[a] = b
    return Morphism(tuple(image), ENDOMORPHISM)


def contract_window_interior(p: Poset, w: Window, x: int) -> Morphism:
    """Contract a window's interior onto one interior element, fix the rest.

    Requires x to lie strictly between the window's extreme ranks and to be
    comparable with every element at both extremes.
    """
    if x not in w.elements:
        raise NotCentral(f"element {x} is not in the window")
    local = {e: i for i, e in enumerate(w.elements)}
    rel_rank = next(
        r for r, level in enumerate(w.levels) if local[x] in level
    )
    if rel_rank == 0 or rel_rank == w.span:
        raise NotCentral(f"element {x} sits at an extreme rank of the window")
    for i in w.levels[0]:
        if not p.lt(w.elements[i], x):
            raise NotCentral(
                f"bottom element {w.elements[i]} is not below {x}"
            )
    for i in w.levels[-1]:
        if not p.lt(x, w.elements[i]):
            raise NotCentral(f"top element {w.elements[i]} is not above {x}")
    image = list(range(p.n))
    interior = [
        w.elements[i]
        for level in w.levels[1:-1]
        for i in level
    ]
    for e in interior:
        image[e] = x
    return make_morphism(image)


def swap_ladder_pair(p: Poset, cls: PairClassification) -> Morphism:
    """Fold one rail of a classified ladder onto the other.

    Sends upper_1 to upper_2 and rail_1 to rail_2, fixing everything else.
    The result is re-checked for order preservation; a failure means the
    classification witnesses are wrong.
    """
    if cls.case != CASE_LADDER:
        raise WrongCase(f"classification is {cls.case}, not {CASE_LADDER}")
    wit = cls.witnesses
    image = list(range(p.n))
    image[wit["upper_1"]] = wit["upper_2"]
    image[wit["rail_1"]] = wit["rail_2"]
    if not is_order_preserving(p, image):
        raise NotOrderPreserving("ladder witnesses do not support the rail fold")
    return Morphism(tuple(image), ENDOMORPHISM)


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer after inner: the composite sends z to outer(inner(z))."""
    if len(outer.image) != len(inner.image):
        raise SizeMismatch(
            f"composing maps of sizes {len(outer.image)} and {len(inner.image)}"
        )
    return make_morphism(outer.image[i] for i in inner.image)


def distinct_compositions(
    p: Poset, constructors, auts
) -> CompositionStats:
    """Distinct maps and peak multiplicity in {c after a : c, a given}."""
    counts: dict[tuple[int, ...], int] = {}
    for c in constructors:
        if len(c.image) != p.n:
            raise SizeMismatch("constructor does not live on this poset")
        for a in auts:
            img = compose(c, a).image
            counts[img] = counts.get(img, 0) + 1
    if not counts:
        return CompositionStats(0, 0)
    return CompositionStats(len(counts), max(counts.values()))


def count_result(
    p: Poset,
    g: GradedInfo,
    budget: int = DEFAULT_BUDGET,
    memo: bool = False,
) -> CountResult:
    """Exact |Aut|, |End|, and their exact ratio."""
    aut = len(enumerate_automorphisms(p, g))
    end = count_endomorphisms(p, budget=budget, memo=memo)
    return CountResult(aut, end, Fraction(aut, end))
