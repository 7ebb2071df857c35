"""Structural detectors: singles, siblings, twins, central elements,
repeating windows, and the equal-rank pair classifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import GradedInfo, Poset, Window, window
from .errors import RankOutOfRange

CASE_S4 = "S4"
CASE_S3 = "S3"
CASE_LADDER = "S2-ladder"
CASE_INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class StructureReport:
    """Aggregated gadget inventory of one graded poset."""

    up_singles: tuple[int, ...]
    down_singles: tuple[int, ...]
    older_sibling_pairs: tuple[tuple[int, int], ...]
    twin_pairs: tuple[tuple[int, int], ...]
    central_witnesses: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class RepeatReport:
    """Windows of one span grouped by canonical key.

    ``occurrences`` maps each key to its sorted start ranks.  Two windows of
    span m count as disjoint when their starts differ by at least m, i.e.
    they may share the single boundary rank of a stacked tower but nothing
    more.  ``c`` is the best such disjoint count and ``best_key`` the
    lexicographically least key attaining it.
    """

    span: int
    occurrences: dict[bytes, tuple[int, ...]] = field(default_factory=dict)
    c: int = 0
    best_key: bytes = b""

    def disjoint_count(self, key: bytes) -> int:
        return _greedy_disjoint(self.occurrences.get(key, ()), self.span)


@dataclass(frozen=True)
class PairClassification:
    """Outcome of classifying an equal-rank pair by its joint upper covers.

    ``above`` is the set of next-rank elements covering x or y.  ``case`` is
    "S4" (four distinct covers), "S3" (one shared cover), "S2-ladder" (both
    covers shared and the two-rail ladder structure present), or
    "inapplicable" with ``reason`` set.  ``witnesses`` names the structural
    elements found, keyed by role:

    - S4: x_cover_1, x_cover_2, y_cover_1, y_cover_2
    - S3: only_x, only_y, shared
    - S2-ladder: shared_1, shared_2 (covers of both x and y), rail_1, rail_2
      (the other two elements one rank up), upper_1, upper_2 (the two
      elements two ranks up; upper_1 covers rail_1, upper_2 covers rail_2),
      base_1, base_2 (the common lower covers of the rails).
    """

    x: int
    y: int
    rank: int
    above: tuple[int, ...]
    case: str
    reason: str | None = None
    witnesses: dict = field(default_factory=dict)


def find_singles(p: Poset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Elements with exactly one upper cover, and with exactly one lower cover."""
    ups = tuple(x for x in range(p.n) if len(p.up_covers[x]) == 1)
    downs = tuple(x for x in range(p.n) if len(p.down_covers[x]) == 1)
    return ups, downs


def older_siblings(p: Poset, g: GradedInfo) -> tuple[tuple[int, int], ...]:
    """All ordered pairs (a, b) of equal rank where b absorbs a's covers.

    b must cover everything a covers and be covered by everything covering a;
    pairs present in both orders are twins.
    """
    pairs = []
    for level in g.levels():
        for a in level:
            da, ua = set(p.down_covers[a]), set(p.up_covers[a])
            for b in level:
                if a == b:
                    continue
                if da <= set(p.down_covers[b]) and ua <= set(p.up_covers[b]):
                    pairs.append((a, b))
    return tuple(sorted(pairs))


def twin_pairs_of(pairs) -> tuple[tuple[int, int], ...]:
    """Unordered pairs present in both orientations of a sibling list."""
    pair_set = set(pairs)
    return tuple(
        sorted((a, b) for a, b in pair_set if a < b and (b, a) in pair_set)
    )


def central_elements(p: Poset, g: GradedInfo, r1: int, r2: int) -> tuple[int, ...]:
    """Elements above everything r1 ranks below and below everything r2 above."""
    levels = g.levels()
    out = []
    for x in range(p.n):
        r = g.ranks[x]
        if r < r1 or r + r2 > g.top_rank:
            continue
        if all(p.lt(a, x) for a in levels[r - r1]) and all(
            p.lt(x, b) for b in levels[r + r2]
        ):
            out.append(x)
    return tuple(out)


def _greedy_disjoint(starts, span: int) -> int:
    """Maximum pairwise-disjoint count among equal-length windows.

    Starts are sorted; earliest-start selection is optimal for equal
    lengths.  Windows may share one boundary rank (starts m apart count as
    disjoint), so stacked towers of span-m blocks report one copy per block.
    """
    step = max(span, 1)
    count = 0
    next_free = None
    for lo in starts:
        if next_free is None or lo >= next_free:
            count += 1
            next_free = lo + step
    return count


def find_repeating_windows(p: Poset, g: GradedInfo, span: int) -> RepeatReport:
    """Group all span-m windows by canonical key and count disjoint copies."""
    if span > g.top_rank:
        raise RankOutOfRange(f"span {span} exceeds top rank {g.top_rank}")
    occurrences: dict[bytes, list[int]] = {}
    for lo in range(g.top_rank - span + 1):
        w = window(p, g, lo, span)
        occurrences.setdefault(w.canonical_key, []).append(lo)
    frozen = {k: tuple(v) for k, v in sorted(occurrences.items())}
    best_key, best_c = b"", 0
    for key, starts in frozen.items():
        c = _greedy_disjoint(starts, span)
        if c > best_c:
            best_key, best_c = key, c
    return RepeatReport(span=span, occurrences=frozen, c=best_c, best_key=best_key)


def _inapplicable(x, y, rank, above, reason) -> PairClassification:
    return PairClassification(
        x=x, y=y, rank=rank, above=tuple(sorted(above)),
        case=CASE_INAPPLICABLE, reason=reason,
    )


def classify_pair(p: Poset, g: GradedInfo, x: int, y: int) -> PairClassification:
    """Classify an equal-rank pair by the set of elements covering either one.

    Requires each of x and y to sit below exactly two next-rank elements;
    anything else is reported as inapplicable rather than raised, so sweeps
    can tally coverage of the case split.
    """
    if g.whidth > 4:
        return _inapplicable(x, y, -1, (), "whidth exceeds 4")
    if x == y:
        return _inapplicable(x, y, g.ranks[x], (), "x and y must differ")
    if g.ranks[x] != g.ranks[y]:
        return _inapplicable(x, y, -1, (), "x and y have different ranks")
    rank = g.ranks[x]
    ux, uy = set(p.up_covers[x]), set(p.up_covers[y])
    above = ux | uy
    if len(ux) != 2 or len(uy) != 2:
        return _inapplicable(
            x, y, rank, above, "each element needs exactly two upper covers"
        )

    if len(above) == 4:
        cx, cy = sorted(ux), sorted(uy)
        return PairClassification(
            x=x, y=y, rank=rank, above=tuple(sorted(above)), case=CASE_S4,
            witnesses={
                "x_cover_1": cx[0], "x_cover_2": cx[1],
                "y_cover_1": cy[0], "y_cover_2": cy[1],
            },
        )
    if len(above) == 3:
        shared = (ux & uy).pop()
        return PairClassification(
            x=x, y=y, rank=rank, above=tuple(sorted(above)), case=CASE_S3,
            witnesses={
                "only_x": (ux - uy).pop(),
                "only_y": (uy - ux).pop(),
                "shared": shared,
            },
        )

    # Shared cover pair; check for the two-rail ladder above it.
    shared_1, shared_2 = sorted(above)
    level_above = g.levels()[rank + 1]
    rails = [e for e in level_above if e not in above]
    if len(rails) != 2:
        return _inapplicable(
            x, y, rank, above,
            "ladder needs exactly two further elements one rank up",
        )
    upper_x = set(p.up_covers[shared_1])
    if upper_x != set(p.up_covers[shared_2]) or len(upper_x) != 2:
        return _inapplicable(
            x, y, rank, above,
            "shared covers must have the same two upper covers",
        )
    upper_1, upper_2 = sorted(upper_x)
    extras_1 = set(p.down_covers[upper_1]) - above
    extras_2 = set(p.down_covers[upper_2]) - above
    if (
        set(p.down_covers[upper_1]) - extras_1 != above
        or set(p.down_covers[upper_2]) - extras_2 != above
        or len(extras_1) != 1
        or len(extras_2) != 1
        or extras_1 == extras_2
        or extras_1 | extras_2 != set(rails)
    ):
        return _inapplicable(
            x, y, rank, above,
            "each upper element must cover both shared covers and one rail",
        )
    rail_1 = extras_1.pop()
    rail_2 = extras_2.pop()
    base = set(p.down_covers[rail_1])
    if (
        base != set(p.down_covers[rail_2])
        or len(base) != 2
        or base & {x, y}
    ):
        return _inapplicable(
            x, y, rank, above,
            "rails must share two lower covers distinct from the pair",
        )
    if set(p.up_covers[upper_1]) != set(p.up_covers[upper_2]):
        return _inapplicable(
            x, y, rank, above, "upper elements must share their upper covers"
        )
    if set(p.up_covers[rail_1]) - {upper_1} != set(p.up_covers[rail_2]) - {upper_2}:
        return _inapplicable(
            x, y, rank, above, "rails must share their remaining upper covers"
        )
    base_1, base_2 = sorted(base)
    return PairClassification(
        x=x, y=y, rank=rank, above=tuple(sorted(above)), case=CASE_LADDER,
        witnesses={
            "shared_1": shared_1, "shared_2": shared_2,
            "rail_1": rail_1, "rail_2": rail_2,
            "upper_1": upper_1, "upper_2": upper_2,
            "base_1": base_1, "base_2": base_2,
        },
    )


def structure_report(p: Poset, g: GradedInfo) -> StructureReport:
    """Run every detector with central spans r1, r2 in {1, 2} and aggregate."""
    ups, downs = find_singles(p)
    pairs = older_siblings(p, g)
    central = []
    for r1 in (1, 2):
        for r2 in (1, 2):
            for x in central_elements(p, g, r1, r2):
                central.append((x, r1, r2))
    central.sort(key=lambda t: (t[1], t[2], t[0]))
    return StructureReport(
        up_singles=ups,
        down_singles=downs,
        older_sibling_pairs=pairs,
        twin_pairs=twin_pairs_of(pairs),
        central_witnesses=tuple(central),
    )
