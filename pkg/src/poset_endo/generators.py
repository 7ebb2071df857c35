"""Deterministic and seeded poset families, named fixtures, and exhaustive
enumerators for small shapes.

Every generator is pure given its arguments; the same seed always produces
bit-identical cover lists.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .core import Poset, Window, require_grading, window
from .errors import (
    GlueMismatch,
    ParseError,
    RetryExhausted,
    SizeLimit,
)

FIXTURE_NAMES = ("LADDER", "S4", "S3", "SIB", "K333", "K333x5")


def _poset_from_up(n: int, up_lists) -> Poset:
    down: list[list[int]] = [[] for _ in range(n)]
    for u, ups in enumerate(up_lists):
        for v in ups:
            down[v].append(u)
    return Poset(
        n,
        tuple(tuple(sorted(u)) for u in up_lists),
        tuple(tuple(sorted(d)) for d in down),
    )


def _poset_from_levels(sizes, edges) -> Poset:
    """Build a tower poset from level sizes and (level, lower_pos, upper_pos)
    cover triples."""
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    up: list[list[int]] = [[] for _ in range(n)]
    for lvl, lo_pos, hi_pos in edges:
        up[starts[lvl] + lo_pos].append(starts[lvl + 1] + hi_pos)
    return _poset_from_up(n, up)


def gen_chain(length: int) -> Poset:
    """Total order on ``length`` elements."""
    if length < 1:
        raise ValueError("chain needs at least one element")
    up = [[i + 1] for i in range(length - 1)] + [[]]
    return _poset_from_up(length, up)


def gen_antichain(size: int) -> Poset:
    """No relations at all; every self-map is order-preserving."""
    return _poset_from_up(size, [[] for _ in range(size)])


def gen_diamond_tower(k: int) -> Poset:
    """k diamonds stacked so each top point is the next bottom point.

    Ranks run 0..2k with level sizes alternating 1, 2, 1, ..., 1; the two
    elements of every odd rank are twins.
    """
    if k < 1:
        raise ValueError("tower needs at least one block")
    n = 3 * k + 1
    up: list[list[int]] = [[] for _ in range(n)]
    for i in range(k):
        base = 3 * i
        up[base] = [base + 1, base + 2]
        up[base + 1] = [base + 3]
        up[base + 2] = [base + 3]
    return _poset_from_up(n, up)


def gen_complete_tower(levels: int, per_level: int) -> Poset:
    """Tower of equal levels with every consecutive pair completely connected."""
    edges = [
        (lvl, i, j)
        for lvl in range(levels - 1)
        for i in range(per_level)
        for j in range(per_level)
    ]
    return _poset_from_levels([per_level] * levels, edges)


def gen_stacked(block: Window, k: int, glue: dict[int, int] | None = None) -> Poset:
    """Tower of k copies of a block, each top level identified with the next
    copy's bottom level.

    ``glue`` maps the block's top-level local ids onto its bottom-level local
    ids; by default levels are matched positionally.  The identification must
    be a bijection, so the block's boundary levels must have equal size.
    """
    if k < 1:
        raise ValueError("tower needs at least one copy")
    m = block.span
    if m < 1:
        raise GlueMismatch("block must span at least one rank")
    bottom, top = block.levels[0], block.levels[-1]
    if glue is None:
        if len(top) != len(bottom):
            raise GlueMismatch(
                f"boundary levels have sizes {len(top)} and {len(bottom)}"
            )
        glue = {t: b for t, b in zip(top, bottom)}
    if sorted(glue) != sorted(top) or sorted(glue.values()) != sorted(bottom):
        raise GlueMismatch("glue is not a bijection from top level to bottom level")
    glue_inv = {b: t for t, b in glue.items()}

    sizes = [len(level) for level in block.levels]
    global_sizes = [
        sizes[g % m] if g % m else sizes[0] for g in range(k * m + 1)
    ]
    starts = [0]
    for s in global_sizes:
        starts.append(starts[-1] + s)
    pos_in_level = [
        {e: i for i, e in enumerate(level)} for level in block.levels
    ]

    def global_id(copy: int, rel_level: int, local: int) -> int:
        if rel_level == 0 and copy > 0:
            # Shared level: ids were laid out by the previous copy's top.
            return starts[copy * m] + pos_in_level[m][glue_inv[local]]
        return starts[copy * m + rel_level] + pos_in_level[rel_level][local]

    level_of = {}
    for rel, level in enumerate(block.levels):
        for e in level:
            level_of[e] = rel
    n = sum(global_sizes)
    up: list[list[int]] = [[] for _ in range(n)]
    for copy in range(k):
        for u in range(block.induced.n):
            rel = level_of[u]
            for v in block.induced.up_covers[u]:
                up[global_id(copy, rel, u)].append(global_id(copy, rel + 1, v))
    return _poset_from_up(n, up)


def gen_random_tower(
    seed: int,
    num_levels: int,
    max_level_size: int,
    density: float,
    min_cover_degree: int = 1,
    min_level_size: int = 1,
    max_retries: int = 1000,
) -> Poset:
    """Seeded random graded tower with covers only between adjacent levels.

    After density sampling, covers are added until every element meets
    ``min_cover_degree`` in both applicable directions, which guarantees
    gradedness by construction.  Disconnected samples are rejected and
    retried; the seed fully determines the output.
    """
    if not 1 <= max_level_size <= 4:
        raise ValueError("max_level_size must be between 1 and 4")
    if not 1 <= min_level_size <= max_level_size:
        raise ValueError("min_level_size must be between 1 and max_level_size")
    if min_cover_degree > min_level_size:
        raise ValueError("min_cover_degree cannot exceed min_level_size")
    if num_levels < 1:
        raise ValueError("need at least one level")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must be in (0, 1]")
    rng = random.Random(seed)

    for _ in range(max_retries):
        sizes = [
            rng.randint(min_level_size, max_level_size) for _ in range(num_levels)
        ]
        edges: set[tuple[int, int, int]] = set()
        for lvl in range(num_levels - 1):
            for i in range(sizes[lvl]):
                for j in range(sizes[lvl + 1]):
                    if rng.random() < density:
                        edges.add((lvl, i, j))
            for i in range(sizes[lvl]):
                have = [j for j in range(sizes[lvl + 1]) if (lvl, i, j) in edges]
                missing = [j for j in range(sizes[lvl + 1]) if j not in have]
                while len(have) < min_cover_degree and missing:
                    j = missing.pop(rng.randrange(len(missing)))
                    edges.add((lvl, i, j))
                    have.append(j)
            for j in range(sizes[lvl + 1]):
                have = [i for i in range(sizes[lvl]) if (lvl, i, j) in edges]
                missing = [i for i in range(sizes[lvl]) if i not in have]
                while len(have) < min_cover_degree and missing:
                    i = missing.pop(rng.randrange(len(missing)))
                    edges.add((lvl, i, j))
                    have.append(i)
        p = _poset_from_levels(sizes, sorted(edges))
        if num_levels == 1 and sizes[0] > 1:
            # A single level is connected only when it has one element.
            if sizes[0] == 1:
                return p
            continue
        if _is_connected(p):
            return p
    raise RetryExhausted(f"no connected tower after {max_retries} attempts")


def _is_connected(p: Poset) -> bool:
    if p.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in itertools.chain(p.up_covers[x], p.down_covers[x]):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == p.n


def gen_random_poset(seed: int, n: int, density: float) -> Poset:
    """Seeded random poset, not necessarily graded.

    Samples relations below the index order, closes transitively, and
    reduces to covers.
    """
    if n < 1:
        raise ValueError("need at least one element")
    rng = random.Random(seed)
    lt = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                lt[i] |= 1 << j
    for i in range(n - 1, -1, -1):
        m = lt[i]
        while m:
            low = m & -m
            m ^= low
            lt[i] |= lt[low.bit_length() - 1]
    up: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        m = lt[i]
        while m:
            low = m & -m
            m ^= low
            j = low.bit_length() - 1
            if not any((lt[w] >> j) & 1 for w in _mask_bits(lt[i] & ~low)):
                up[i].append(j)
    return _poset_from_up(n, up)


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_FIXTURE_COVERS = {
    # Rank 0 holds the classified pair 0, 1 plus the rail bases 2, 3; the
    # rails 6, 7 lead to the asymmetric top 8, 9, 10.
    "LADDER": (
        11,
        [
            (0, 4), (0, 5), (1, 4), (1, 5),
            (2, 6), (2, 7), (3, 6), (3, 7),
            (4, 8), (4, 9), (5, 8), (5, 9),
            (6, 8), (6, 10), (7, 9), (7, 10),
        ],
    ),
    # Pair 0, 1 with disjoint upper-cover pairs {2,3} and {4,5}.
    "S4": (
        7,
        [(0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (3, 6), (4, 6), (5, 6)],
    ),
    # Pair 0, 1 sharing exactly one upper cover (3).
    "S3": (
        6,
        [(0, 2), (0, 3), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
    ),
    # 3 absorbs the covers of 2 without the converse.
    "SIB": (
        5,
        [(0, 2), (0, 3), (1, 3), (2, 4), (3, 4)],
    ),
}


def fixture(name: str) -> Poset:
    """Named test posets used throughout the verification suites.

    LADDER, S4, and S3 carry their designated pair at elements 0 and 1.
    K333 is the complete three-level tower of threes; K333x5 its five-level
    extension.
    """
    key = name.upper() if name.upper() != "K333X5" else "K333x5"
    if key == "K333":
        return gen_complete_tower(3, 3)
    if key == "K333x5":
        return gen_complete_tower(5, 3)
    if key in _FIXTURE_COVERS:
        n, covers = _FIXTURE_COVERS[key]
        up: list[list[int]] = [[] for _ in range(n)]
        for a, b in covers:
            up[a].append(b)
        return _poset_from_up(n, up)
    raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")


def _nonempty_matrices(rows: int, cols: int) -> list[tuple[int, ...]]:
    """All 0/1 matrices (as row bitmasks) with no zero row and no zero column."""
    out = []
    for combo in itertools.product(range(1, 1 << cols), repeat=rows):
        union = 0
        for row in combo:
            union |= row
        if union == (1 << cols) - 1:
            out.append(combo)
    return out


def enumerate_all_graded(
    rank: int,
    max_level: int,
    dedup: bool = False,
    max_posets: int = 2_000_000,
):
    """Stream all graded towers with the given rank and level sizes <= max_level.

    Every element outside the extreme levels keeps at least one cover in each
    direction, which makes the level index the rank function.  With ``dedup``
    only one representative per rank-preserving isomorphism class is yielded.
    """
    if not 1 <= max_level <= 4:
        raise SizeLimit("level sizes above 4 are out of scope")
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    matrices: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for a in range(1, max_level + 1):
        for b in range(1, max_level + 1):
            matrices[(a, b)] = _nonempty_matrices(a, b)

    total = 0
    for sizes in itertools.product(range(1, max_level + 1), repeat=rank + 1):
        prod = 1
        for a, b in zip(sizes, sizes[1:]):
            prod *= len(matrices[(a, b)])
        total += prod
    if total > max_posets:
        raise SizeLimit(f"{total} posets exceed the cap of {max_posets}")

    seen: set[bytes] = set()
    for sizes in itertools.product(range(1, max_level + 1), repeat=rank + 1):
        pair_choices = [matrices[(a, b)] for a, b in zip(sizes, sizes[1:])]
        for choice in itertools.product(*pair_choices):
            edges = [
                (lvl, i, j)
                for lvl, mat in enumerate(choice)
                for i, row in enumerate(mat)
                for j in range(sizes[lvl + 1])
                if (row >> j) & 1
            ]
            p = _poset_from_levels(sizes, edges)
            if dedup:
                g = require_grading(p)
                key = window(p, g, 0, g.top_rank).canonical_key
                if key in seen:
                    continue
                seen.add(key)
            yield p


def canonical_poset_key(p: Poset, limit: int = 7) -> tuple:
    """Isomorphism-class key for a small poset: the minimal relabeled cover list."""
    if p.n > limit:
        raise SizeLimit(f"n={p.n} exceeds the relabeling search limit {limit}")
    covers = p.covers()
    best = None
    for perm in itertools.permutations(range(p.n)):
        cand = tuple(sorted((perm[u], perm[v]) for u, v in covers))
        if best is None or cand < best:
            best = cand
    return (p.n, best)


def enumerate_all_posets(n: int, dedup: bool = False):
    """Stream all labeled posets on n elements as transitive reductions.

    Each unordered pair is incomparable or oriented one of two ways; the
    3^C(n,2) assignments are filtered for transitivity and reduced.  With
    ``dedup`` one representative per isomorphism class is yielded.
    """
    if n > 5:
        raise SizeLimit("labeled enumeration is capped at n = 5")
    if n < 1:
        raise ValueError("need at least one element")
    pairs = list(itertools.combinations(range(n), 2))
    seen: set[tuple] = set()
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        lt = [0] * n
        for (i, j), s in zip(pairs, states):
            if s == 1:
                lt[i] |= 1 << j
            elif s == 2:
                lt[j] |= 1 << i
        if not all(
            (lt[a] | lt[b]) == lt[a]
            for a in range(n)
            for b in _mask_bits(lt[a])
        ):
            continue
        up: list[list[int]] = [[] for _ in range(n)]
        for a in range(n):
            m = lt[a]
            while m:
                low = m & -m
                m ^= low
                b = low.bit_length() - 1
                if not any((lt[w] >> b) & 1 for w in _mask_bits(lt[a] & ~low)):
                    up[a].append(b)
        p = _poset_from_up(n, up)
        if dedup:
            key = canonical_poset_key(p)
            if key in seen:
                continue
            seen.add(key)
        yield p


def named_block(name: str) -> Window:
    """Stackable building blocks addressed by name in family specs."""
    builders = {
        "diamond": lambda: gen_diamond_tower(1),
        "k333": lambda: gen_complete_tower(3, 3),
        "bowtie": lambda: _poset_from_levels(
            [2, 1, 2], [(0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
        ),
        "fan": lambda: _poset_from_levels(
            [1, 3, 1],
            [(0, 0, 0), (0, 0, 1), (0, 0, 2), (1, 0, 0), (1, 1, 0), (1, 2, 0)],
        ),
    }
    if name not in builders:
        raise ParseError(
            f"unknown block {name!r}; choose from {sorted(builders)}"
        )
    p = builders[name]()
    g = require_grading(p)
    return window(p, g, 0, g.top_rank)


_FAMILY_PARAMS = {
    "chain": {"len"},
    "diamond_tower": {"k"},
    "stacked_block": {"block", "k"},
    "random_tower": {
        "seed", "num_levels", "max_level_size", "density",
        "min_cover_degree", "min_level_size",
    },
    "ladder": set(),
    "s4_fixture": set(),
    "k333": {"levels"},
    "fixture": {"name"},
    "enumerate_all": {"rank", "max_level", "dedup"},
}


@dataclass(frozen=True)
class FamilySpec:
    """One family entry of a sweep: a generator kind plus its parameters."""

    kind: str
    params: tuple[tuple[str, object], ...]

    @classmethod
    def from_json(cls, obj) -> "FamilySpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ParseError("family spec must be an object with a 'kind' key")
        kind = obj["kind"]
        if kind not in _FAMILY_PARAMS:
            raise ParseError(
                f"unknown family kind {kind!r}; choose from {sorted(_FAMILY_PARAMS)}"
            )
        params = {k: v for k, v in obj.items() if k != "kind"}
        unknown = set(params) - _FAMILY_PARAMS[kind]
        if unknown:
            raise ParseError(
                f"unknown parameters {sorted(unknown)} for kind {kind!r}"
            )
        return cls(kind, tuple(sorted(params.items())))

    def to_json(self) -> dict:
        return {"kind": self.kind, **dict(self.params)}

    def instances(self):
        """Yield (identifier, poset) pairs for this family entry."""
        params = dict(self.params)
        try:
            if self.kind == "chain":
                length = int(params["len"])
                yield f"chain_len{length}", gen_chain(length)
            elif self.kind == "diamond_tower":
                k = int(params["k"])
                yield f"diamond_tower_k{k}", gen_diamond_tower(k)
            elif self.kind == "stacked_block":
                k = int(params["k"])
                name = params["block"]
                yield f"stacked_{name}_k{k}", gen_stacked(named_block(name), k)
            elif self.kind == "random_tower":
                yield (
                    "random_tower_seed{}".format(params.get("seed", 0)),
                    gen_random_tower(
                        seed=int(params.get("seed", 0)),
                        num_levels=int(params["num_levels"]),
                        max_level_size=int(params["max_level_size"]),
                        density=float(params["density"]),
                        min_cover_degree=int(params.get("min_cover_degree", 1)),
                        min_level_size=int(params.get("min_level_size", 1)),
                    ),
                )
            elif self.kind == "ladder":
                yield "ladder", fixture("LADDER")
            elif self.kind == "s4_fixture":
                yield "s4_fixture", fixture("S4")
            elif self.kind == "k333":
                levels = int(params.get("levels", 3))
                if levels == 3:
                    yield "k333", fixture("K333")
                elif levels == 5:
                    yield "k333x5", fixture("K333x5")
                else:
                    raise ParseError("k333 supports levels 3 or 5")
            elif self.kind == "fixture":
                name = params["name"]
                yield name.lower(), fixture(name)
            elif self.kind == "enumerate_all":
                rank = int(params["rank"])
                max_level = int(params["max_level"])
                dedup = bool(params.get("dedup", False))
                stream = enumerate_all_graded(rank, max_level, dedup=dedup)
                for i, p in enumerate(stream):
                    yield f"graded_r{rank}_w{max_level}_{i}", p
        except KeyError as exc:
            raise ParseError(
                f"family kind {self.kind!r} is missing parameter {exc}"
            ) from exc
