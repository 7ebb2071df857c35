"""Finite posets as Hasse diagrams: grading, rank selection, windows, canonical keys.

Elements are dense integer indices 0..n-1.  A :class:`Poset` stores only its
cover relation; the full order is derived on demand as reachability bitmasks.
All types are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    CycleDetected,
    DuplicateCover,
    EmptySelection,
    IndexOutOfRange,
    NotGradedError,
    RankOutOfRange,
    RedundantCover,
    SizeLimit,
)

# Largest level a canonical-key or isomorphism search will permute (8! orders).
MAX_LEVEL_SEARCH = 8


@dataclass(frozen=True)
class Poset:
    """Finite poset over elements 0..n-1, stored as its cover (Hasse) relation.

    ``up_covers[x]`` lists the elements covering x and ``down_covers[x]`` the
    elements covered by x; both are sorted ascending and mutually transposed.
    The cover digraph is acyclic and equals its own transitive reduction.
    """

    n: int
    up_covers: tuple[tuple[int, ...], ...]
    down_covers: tuple[tuple[int, ...], ...]
    _derived: dict = field(default_factory=dict, repr=False, compare=False)

    def covers(self) -> tuple[tuple[int, int], ...]:
        """All cover pairs (lower, upper) in lexicographic order."""
        return tuple((u, v) for u in range(self.n) for v in self.up_covers[u])

    def num_covers(self) -> int:
        return sum(len(ups) for ups in self.up_covers)

    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self.down_covers[x])

    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self.up_covers[x])

    def depths(self) -> tuple[int, ...]:
        """Longest cover-path distance from the minimal elements."""
        cached = self._derived.get("depths")
        if cached is None:
            indeg = [len(self.down_covers[x]) for x in range(self.n)]
            stack = [x for x in range(self.n) if indeg[x] == 0]
            depth = [0] * self.n
            while stack:
                x = stack.pop()
                for c in self.up_covers[x]:
                    if depth[x] + 1 > depth[c]:
                        depth[c] = depth[x] + 1
                    indeg[c] -= 1
                    if indeg[c] == 0:
                        stack.append(c)
            cached = tuple(depth)
            self._derived["depths"] = cached
        return cached

    def topo_order(self) -> tuple[int, ...]:
        """Linear extension ordered by (depth, index)."""
        cached = self._derived.get("topo")
        if cached is None:
            d = self.depths()
            cached = tuple(sorted(range(self.n), key=lambda x: (d[x], x)))
            self._derived["topo"] = cached
        return cached

    def up_set_masks(self) -> tuple[int, ...]:
        """Per element, the bitmask of its reflexive up-set {y : x <= y}."""
        cached = self._derived.get("up_masks")
        if cached is None:
            d = self.depths()
            masks = [0] * self.n
            for x in sorted(range(self.n), key=lambda i: -d[i]):
                m = 1 << x
                for c in self.up_covers[x]:
                    m |= masks[c]
                masks[x] = m
            cached = tuple(masks)
            self._derived["up_masks"] = cached
        return cached

    def down_set_masks(self) -> tuple[int, ...]:
        """Per element, the bitmask of its reflexive down-set {y : y <= x}."""
        cached = self._derived.get("down_masks")
        if cached is None:
            d = self.depths()
            masks = [0] * self.n
            for x in sorted(range(self.n), key=lambda i: d[i]):
                m = 1 << x
                for c in self.down_covers[x]:
                    m |= masks[c]
                masks[x] = m
            cached = tuple(masks)
            self._derived["down_masks"] = cached
        return cached

    def leq(self, u: int, v: int) -> bool:
        return bool((self.up_set_masks()[u] >> v) & 1)

    def lt(self, u: int, v: int) -> bool:
        return u != v and self.leq(u, v)


@dataclass(frozen=True)
class GradedInfo:
    """Rank data of a graded poset: ranks, level sizes, largest level, top rank."""

    ranks: tuple[int, ...]
    whitney: tuple[int, ...]
    whidth: int
    top_rank: int

    def levels(self) -> tuple[tuple[int, ...], ...]:
        """Elements grouped by rank, each group sorted ascending."""
        out: list[list[int]] = [[] for _ in range(self.top_rank + 1)]
        for x, r in enumerate(self.ranks):
            out[r].append(x)
        return tuple(tuple(level) for level in out)


@dataclass(frozen=True)
class NotGraded:
    """Witness that a poset is not graded: two maximal chains of unequal length."""

    chain_long: tuple[int, ...]
    chain_short: tuple[int, ...]


@dataclass(frozen=True)
class Window:
    """Induced subposet on a consecutive rank interval [lo, lo+span].

    ``elements`` are the source indices in ascending order; ``induced`` uses
    local indices (positions in ``elements``); ``levels`` groups local indices
    by rank relative to ``lo``.  ``canonical_key`` identifies the
    rank-preserving isomorphism class.
    """

    lo: int
    span: int
    elements: tuple[int, ...]
    induced: Poset
    levels: tuple[tuple[int, ...], ...]
    canonical_key: bytes

    @property
    def hi(self) -> int:
        return self.lo + self.span


@dataclass(frozen=True)
class IsoMap:
    """Rank-preserving cover isomorphism between two windows.

    ``forward`` maps source element ids of the first window to source element
    ids of the second; ranks shift uniformly by ``rank_shift``.
    """

    forward: tuple[tuple[int, int], ...]
    rank_shift: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.forward)


def from_cover_list(n: int, covers) -> Poset:
    """Build a poset from explicit cover pairs, validating every invariant.

    The pairs must form an acyclic digraph that is already transitively
    reduced; redundant pairs are rejected rather than silently dropped so that
    input files stay canonical.
    """
    pairs = [tuple(c) for c in covers]
    seen = set()
    up: list[list[int]] = [[] for _ in range(n)]
    down: list[list[int]] = [[] for _ in range(n)]
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"cover ({a},{b}) outside 0..{n - 1}")
        if a == b:
            raise CycleDetected(f"self-loop at element {a}")
        if (a, b) in seen:
            raise DuplicateCover(f"cover ({a},{b}) listed twice")
        seen.add((a, b))
        up[a].append(b)
        down[b].append(a)

    # Kahn toposort; leftovers mean a directed cycle.
    indeg = [len(down[x]) for x in range(n)]
    stack = [x for x in range(n) if indeg[x] == 0]
    order = []
    while stack:
        x = stack.pop()
        order.append(x)
        for c in up[x]:
            indeg[c] -= 1
            if indeg[c] == 0:
                stack.append(c)
    if len(order) < n:
        cyclic = sorted(x for x in range(n) if indeg[x] > 0)
        raise CycleDetected(f"cover pairs induce a cycle through {cyclic}")

    # Strict descendants per element, used for the reduction check.
    desc = [0] * n
    for x in reversed(order):
        m = 0
        for c in up[x]:
            m |= (1 << c) | desc[c]
        desc[x] = m
    for a, b in pairs:
        for w in up[a]:
            if w != b and (desc[w] >> b) & 1:
                raise RedundantCover(
                    f"cover ({a},{b}) is implied by the path through {w}"
                )

    return Poset(
        n,
        tuple(tuple(sorted(u)) for u in up),
        tuple(tuple(sorted(d)) for d in down),
    )


def _chain_down_to(p: Poset, x: int) -> list[int]:
    """A longest chain from some minimal element up to x, inclusive."""
    d = p.depths()
    chain = [x]
    while p.down_covers[chain[-1]]:
        cur = chain[-1]
        nxt = max(p.down_covers[cur], key=lambda c: d[c])
        chain.append(nxt)
    chain.reverse()
    return chain


def _chain_up_from(p: Poset, x: int) -> list[int]:
    """Any maximal extension upward from x, excluding x itself."""
    chain = []
    cur = x
    while p.up_covers[cur]:
        cur = p.up_covers[cur][0]
        chain.append(cur)
    return chain


def compute_grading(p: Poset) -> GradedInfo | NotGraded:
    """Rank a poset, or exhibit two maximal chains of unequal length.

    Ranks are longest-path distances from the minimal elements; the poset is
    graded iff every cover raises rank by exactly one and all maximal elements
    share the top rank.
    """
    if p.n == 0:
        raise ValueError("cannot grade an empty poset")
    ranks = p.depths()
    top = max(ranks)

    for u in range(p.n):
        for v in p.up_covers[u]:
            if ranks[v] != ranks[u] + 1:
                # Two maximal chains through (u,v) that share the upward tail.
                tail = _chain_up_from(p, v)
                long_chain = tuple(_chain_down_to(p, v) + tail)
                short_chain = tuple(_chain_down_to(p, u) + [v] + tail)
                return NotGraded(long_chain, short_chain)
    for m in range(p.n):
        if not p.up_covers[m] and ranks[m] != top:
            top_elt = max(range(p.n), key=lambda x: ranks[x])
            return NotGraded(
                tuple(_chain_down_to(p, top_elt)), tuple(_chain_down_to(p, m))
            )

    whitney = [0] * (top + 1)
    for r in ranks:
        whitney[r] += 1
    return GradedInfo(ranks, tuple(whitney), max(whitney), top)


def require_grading(p: Poset) -> GradedInfo:
    """compute_grading, raising :class:`NotGradedError` on failure."""
    g = compute_grading(p)
    if isinstance(g, NotGraded):
        raise NotGradedError(
            f"maximal chains of lengths {len(g.chain_long)} and "
            f"{len(g.chain_short)} differ",
            witness=g,
        )
    return g


def width(p: Poset) -> int:
    """Size of a maximum antichain.

    Computed as n minus a maximum matching of the strict comparability
    relation (minimum chain cover), so it stays exact at any size this
    package handles.
    """
    up = p.up_set_masks()
    succ = [
        [v for v in range(p.n) if v != u and (up[u] >> v) & 1] for u in range(p.n)
    ]
    match_right = [-1] * p.n

    def augment(u: int, visited: list[bool]) -> bool:
        for v in succ[u]:
            if not visited[v]:
                visited[v] = True
                if match_right[v] == -1 or augment(match_right[v], visited):
                    match_right[v] = u
                    return True
        return False

    matched = 0
    for u in range(p.n):
        if augment(u, [False] * p.n):
            matched += 1
    return p.n - matched


def induced_subposet(p: Poset, elements) -> Poset:
    """Restriction of the full order to ``elements``, re-reduced to covers.

    Local indices follow the order of ``elements``.
    """
    elts = list(elements)
    k = len(elts)
    up = p.up_set_masks()
    lt = [0] * k
    for i, e in enumerate(elts):
        m = 0
        for j, f in enumerate(elts):
            if e != f and (up[e] >> f) & 1:
                m |= 1 << j
        lt[i] = m
    up_local: list[list[int]] = [[] for _ in range(k)]
    down_local: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if (lt[i] >> j) & 1:
                # Cover iff nothing sits strictly between i and j.
                between = lt[i] & ~(1 << j)
                if all(not (lt[w] >> j) & 1 for w in _bits(between)):
                    up_local[i].append(j)
                    down_local[j].append(i)
    return Poset(
        k,
        tuple(tuple(sorted(u)) for u in up_local),
        tuple(tuple(sorted(d)) for d in down_local),
    )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rank_selected(p: Poset, g: GradedInfo, ranks_wanted) -> Poset:
    """Induced subposet on the elements whose rank lies in ``ranks_wanted``."""
    wanted = set(ranks_wanted)
    for r in wanted:
        if not 0 <= r <= g.top_rank:
            raise RankOutOfRange(f"rank {r} outside 0..{g.top_rank}")
    elements = [x for x in range(p.n) if g.ranks[x] in wanted]
    if not elements:
        raise EmptySelection("no elements in the selected ranks")
    return induced_subposet(p, elements)


def window(p: Poset, g: GradedInfo, lo: int, span: int) -> Window:
    """The rank-selected subposet on the consecutive interval [lo, lo+span].

    For consecutive ranks the induced covers are exactly the source covers
    with both endpoints inside the interval, so no re-reduction is needed.
    """
    if span < 0 or lo < 0 or lo + span > g.top_rank:
        raise RankOutOfRange(
            f"interval [{lo},{lo + span}] outside 0..{g.top_rank}"
        )
    hi = lo + span
    elements = tuple(x for x in range(p.n) if lo <= g.ranks[x] <= hi)
    index = {e: i for i, e in enumerate(elements)}
    k = len(elements)
    up_local: list[list[int]] = [[] for _ in range(k)]
    down_local: list[list[int]] = [[] for _ in range(k)]
    for e in elements:
        if g.ranks[e] < hi:
            for c in p.up_covers[e]:
                up_local[index[e]].append(index[c])
                down_local[index[c]].append(index[e])
    induced = Poset(
        k,
        tuple(tuple(sorted(u)) for u in up_local),
        tuple(tuple(sorted(d)) for d in down_local),
    )
    levels: list[list[int]] = [[] for _ in range(span + 1)]
    for e in elements:
        levels[g.ranks[e] - lo].append(index[e])
    level_tuple = tuple(tuple(level) for level in levels)
    key = _canonical_key(induced, level_tuple)
    return Window(lo, span, elements, induced, level_tuple, key)


def connected_components(p: Poset) -> tuple[tuple[int, ...], ...]:
    """Components of the Hasse diagram viewed as an undirected graph."""
    parent = list(range(p.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(p.n):
        for v in p.up_covers[u]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[rv] = ru
    groups: dict[int, list[int]] = {}
    for x in range(p.n):
        groups.setdefault(find(x), []).append(x)
    return tuple(tuple(g) for g in sorted(groups.values(), key=lambda g: g[0]))


def _level_orderings(induced: Poset, level: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All orderings of one level that list degree cells in a fixed order.

    Elements are partitioned by (down-degree, up-degree) inside the window;
    the cells appear in sorted invariant order and only within-cell order
    varies.  The partition is isomorphism-invariant, so restricting the
    search this way cannot change the minimal encoding.
    """
    if len(level) > MAX_LEVEL_SEARCH:
        raise SizeLimit(f"level of size {len(level)} too large to canonicalize")
    cells: dict[tuple[int, int], list[int]] = {}
    for x in level:
        inv = (len(induced.down_covers[x]), len(induced.up_covers[x]))
        cells.setdefault(inv, []).append(x)
    ordered_cells = [cells[k] for k in sorted(cells)]
    out = []
    for combo in itertools.product(
        *(itertools.permutations(cell) for cell in ordered_cells)
    ):
        out.append(tuple(itertools.chain.from_iterable(combo)))
    return out


def _biadjacency_bytes(
    induced: Poset, lower: tuple[int, ...], upper: tuple[int, ...]
) -> bytes:
    up = induced.up_covers
    return bytes(
        1 if u in up[low] else 0 for low in lower for u in upper
    )


def _canonical_key(induced: Poset, levels: tuple[tuple[int, ...], ...]) -> bytes:
    """Lexicographically minimal level-by-level cover-matrix encoding.

    Minimizes over all per-level orderings.  The suffix minimum from level i
    depends only on the chosen ordering of level i, which keeps the search
    linear in the number of admissible orderings per level.
    """
    orderings = [_level_orderings(induced, level) for level in levels]
    memo: dict[tuple[int, tuple[int, ...]], bytes] = {}

    def suffix(i: int, order_i: tuple[int, ...]) -> bytes:
        if i == len(levels) - 1:
            return b""
        key = (i, order_i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = None
        for order_next in orderings[i + 1]:
            cand = _biadjacency_bytes(induced, order_i, order_next) + suffix(
                i + 1, order_next
            )
            if best is None or cand < best:
                best = cand
        memo[key] = best
        return best

    body = min(suffix(0, order0) for order0 in orderings[0])
    header = bytes([len(levels)]) + bytes(len(level) for level in levels)
    return header + body


def canonical_form(w: Window) -> bytes:
    """Canonical key of a window's rank-preserving isomorphism class."""
    return w.canonical_key


def is_isomorphic_rank_preserving(a: Window, b: Window) -> IsoMap | None:
    """Search for a level-by-level cover isomorphism between two windows.

    Independent of the canonical key: a direct backtracking search over
    per-level bijections, used to cross-validate key equality.
    """
    sizes_a = [len(level) for level in a.levels]
    sizes_b = [len(level) for level in b.levels]
    if sizes_a != sizes_b:
        return None
    if any(s > MAX_LEVEL_SEARCH for s in sizes_a):
        raise SizeLimit("window level too large for isomorphism search")

    pa, pb = a.induced, b.induced
    assign: dict[int, int] = {}

    def match_level(i: int) -> bool:
        if i == len(a.levels):
            return True
        la, lb = a.levels[i], b.levels[i]
        for perm in itertools.permutations(lb):
            ok = True
            for x, y in zip(la, perm):
                if len(pa.down_covers[x]) != len(pb.down_covers[y]) or len(
                    pa.up_covers[x]
                ) != len(pb.up_covers[y]):
                    ok = False
                    break
                if {assign[d] for d in pa.down_covers[x]} != set(pb.down_covers[y]):
                    ok = False
                    break
            if not ok:
                continue
            for x, y in zip(la, perm):
                assign[x] = y
            if match_level(i + 1):
                return True
            for x in la:
                del assign[x]
        return False

    if not match_level(0):
        return None
    forward = tuple(
        sorted((a.elements[x], b.elements[y]) for x, y in assign.items())
    )
    return IsoMap(forward, b.lo - a.lo)
