"""Named verification suites behind the CLI.

Each suite runs a battery of exact checks and returns a JSON-friendly
report; nothing here is sampled statistically, every inequality is evaluated
with exact integers and fractions.
"""

from __future__ import annotations

from fractions import Fraction

from .analysis import (
    CASE_LADDER,
    CASE_S3,
    CASE_S4,
    classify_pair,
    find_singles,
    older_siblings,
    structure_report,
    twin_pairs_of,
)
from .core import NotGraded, Poset, compute_grading, require_grading, window
from .errors import UnknownSuite, WrongCase
from .generators import (
    FIXTURE_NAMES,
    enumerate_all_graded,
    enumerate_all_posets,
    fixture,
    gen_antichain,
    gen_chain,
    gen_diamond_tower,
    gen_random_poset,
    gen_random_tower,
    gen_stacked,
    named_block,
)
from .morphisms import (
    brute_force_endomorphisms,
    collapse_up_single,
    compose,
    contract_window_interior,
    count_endomorphisms,
    distinct_compositions,
    enumerate_automorphisms,
    fold_onto_sibling,
    is_order_preserving,
    swap_ladder_pair,
)
from .sweep import central_window_count

DEFAULT_SEED = 94041


class _Report:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: list[dict] = []

    def check(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    def result(self) -> dict:
        return {
            "suite": self.suite,
            "passed": all(c["passed"] for c in self.checks),
            "checks": self.checks,
        }


def _small_tower_params(i: int) -> dict:
    """Cycle through tower shapes whose element count stays at most 6."""
    if i % 2 == 0:
        return {"num_levels": 2, "max_level_size": 3}
    return {"num_levels": 3, "max_level_size": 2}


def suite_oracle(seed: int = DEFAULT_SEED, samples: int = 200) -> dict:
    """Counting and enumeration agree with exhaustive n^n search everywhere."""
    rep = _Report("oracle")
    battery: list[tuple[str, Poset]] = [
        (name.lower(), fixture(name)) for name in FIXTURE_NAMES
    ]
    battery += [
        ("diamond", gen_diamond_tower(1)),
        ("chain2", gen_chain(2)),
        ("chain3", gen_chain(3)),
        ("chain4", gen_chain(4)),
        ("antichain3", gen_antichain(3)),
    ]
    densities = (0.3, 0.5, 0.7, 0.9)
    for i in range(samples):
        params = _small_tower_params(i)
        battery.append(
            (
                f"tower{i}",
                gen_random_tower(
                    seed=seed + i, density=densities[i % 4], **params
                ),
            )
        )
    for i in range(50):
        battery.append(
            (f"poset{i}", gen_random_poset(seed + 10_000 + i, 2 + i % 5, 0.45))
        )

    count_ok = memo_ok = aut_ok = True
    detail = ""
    for ident, p in battery:
        if p.n > 7:
            continue
        brute = brute_force_endomorphisms(p)
        plain = count_endomorphisms(p)
        memo = count_endomorphisms(p, memo=True)
        if plain != len(brute):
            count_ok, detail = False, f"{ident}: {plain} != {len(brute)}"
            break
        if memo != plain:
            memo_ok, detail = False, f"{ident}: memo {memo} != {plain}"
            break
        g = compute_grading(p)
        if isinstance(g, NotGraded):
            continue
        bijective = sorted(m.image for m in brute if m.is_bijective())
        auts = [m.image for m in enumerate_automorphisms(p, g)]
        if auts != bijective:
            aut_ok, detail = False, f"{ident}: automorphism lists differ"
            break
    rep.check(
        "count_matches_brute_force", count_ok,
        detail or f"{len(battery)} posets checked",
    )
    rep.check("memoized_count_matches", memo_ok, detail)
    rep.check("automorphisms_match_bijective_subset", aut_ok, detail)
    return rep.result()


def _singles_battery(seed: int) -> list[tuple[str, Poset]]:
    battery = [(f"diamond_tower_k{k}", gen_diamond_tower(k)) for k in (1, 2, 3, 4)]
    battery += [(f"chain{m}", gen_chain(m)) for m in (3, 4, 5, 6)]
    battery.append(("sib", fixture("SIB")))
    for i in range(12):
        battery.append(
            (
                f"tower{i}",
                gen_random_tower(
                    seed=seed + i, num_levels=3 + i % 3, max_level_size=3,
                    density=0.35,
                ),
            )
        )
    return battery


def suite_singles(seed: int = DEFAULT_SEED) -> dict:
    """Collapsing each one-cover element gives u * |Aut| distinct maps."""
    rep = _Report("singles")
    applicable = 0
    injective_ok = ratio_ok = True
    detail = ""
    for ident, p in _singles_battery(seed):
        g = require_grading(p)
        ups, _ = find_singles(p)
        if not ups:
            continue
        applicable += 1
        auts = enumerate_automorphisms(p, g)
        constructors = [collapse_up_single(p, x) for x in ups]
        stats = distinct_compositions(p, constructors, auts)
        if stats.distinct != len(ups) * len(auts) or stats.max_multiplicity != 1:
            injective_ok = False
            detail = f"{ident}: {stats} for u={len(ups)}, aut={len(auts)}"
            break
        end = count_endomorphisms(p, memo=True)
        if Fraction(len(auts), end) > Fraction(1, len(ups)):
            ratio_ok = False
            detail = f"{ident}: ratio above 1/{len(ups)}"
            break
    rep.check(
        "distinct_collapse_compositions", injective_ok,
        detail or f"{applicable} posets with one-cover elements",
    )
    rep.check("ratio_at_most_one_over_u", ratio_ok, detail)
    rep.check("battery_nonempty", applicable >= 10, f"{applicable} applicable")
    return rep.result()


def suite_siblings(seed: int = DEFAULT_SEED) -> dict:
    """Folding onto older siblings doubles up only on twin pairs."""
    rep = _Report("siblings")
    applicable = 0
    combined_ok = per_pair_ok = True
    detail = ""
    battery = [(f"diamond_tower_k{k}", gen_diamond_tower(k)) for k in (1, 2, 3)]
    battery.append(("sib", fixture("SIB")))
    battery.append(("ladder", fixture("LADDER")))
    for i in range(12):
        battery.append(
            (
                f"tower{i}",
                gen_random_tower(
                    seed=seed + 500 + i, num_levels=3 + i % 2,
                    max_level_size=3, density=0.8,
                ),
            )
        )
    for ident, p in battery:
        g = require_grading(p)
        pairs = older_siblings(p, g)
        if not pairs:
            continue
        applicable += 1
        twins = set(twin_pairs_of(pairs))
        auts = enumerate_automorphisms(p, g)
        chosen: dict[int, int] = {}
        for a, b in pairs:
            if a not in chosen:
                chosen[a] = b
        constructors = [fold_onto_sibling(p, a, b) for a, b in chosen.items()]
        stats = distinct_compositions(p, constructors, auts)
        if stats.max_multiplicity > 2:
            combined_ok = False
            detail = f"{ident}: multiplicity {stats.max_multiplicity}"
            break
        for a, b in chosen.items():
            single = distinct_compositions(p, [fold_onto_sibling(p, a, b)], auts)
            is_twin = tuple(sorted((a, b))) in twins
            want = 2 if is_twin else 1
            if single.max_multiplicity != want:
                per_pair_ok = False
                detail = (
                    f"{ident}: pair ({a},{b}) multiplicity "
                    f"{single.max_multiplicity}, twin={is_twin}"
                )
                break
        if not per_pair_ok:
            break
    rep.check(
        "multiplicity_at_most_two", combined_ok,
        detail or f"{applicable} posets with sibling pairs",
    )
    rep.check("doubling_exactly_on_twins", per_pair_ok, detail)
    rep.check("battery_nonempty", applicable >= 8, f"{applicable} applicable")
    return rep.result()


def suite_whidth2(max_k: int = 6) -> dict:
    """Diamond towers: exact strictly-decreasing ratios anchored at 1/18."""
    rep = _Report("whidth2")
    ratios = []
    twin_ok = True
    for k in range(1, max_k + 1):
        p = gen_diamond_tower(k)
        g = require_grading(p)
        aut = len(enumerate_automorphisms(p, g))
        end = count_endomorphisms(p, memo=True)
        ratios.append(Fraction(aut, end))
        twins = set(structure_report(p, g).twin_pairs)
        levels = g.levels()
        for r in range(1, g.top_rank, 2):
            pair = tuple(sorted(levels[r]))
            if len(levels[r]) != 2 or pair not in twins:
                twin_ok = False
    rep.check(
        "anchor_ratio_1_18", ratios[0] == Fraction(1, 18), f"k=1 ratio {ratios[0]}"
    )
    rep.check(
        "strictly_decreasing",
        all(b < a for a, b in zip(ratios, ratios[1:])),
        " > ".join(str(r) for r in ratios),
    )
    rep.check("twins_on_every_odd_rank", twin_ok)
    return rep.result()


def _max_aut_rank2(max_level: int = 3):
    """Exhaustive |Aut| maximum over all graded towers of rank 2."""
    best = 0
    best_keys: set[bytes] = set()
    for p in enumerate_all_graded(2, max_level):
        g = require_grading(p)
        aut = len(enumerate_automorphisms(p, g))
        if aut > best:
            best = aut
            best_keys = set()
        if aut == best:
            best_keys.add(window(p, g, 0, 2).canonical_key)
    return best, best_keys


def suite_whidth3(seed: int = DEFAULT_SEED, towers: int = 500) -> dict:
    """Rank-two automorphism cap, gap comparability, and contraction bounds."""
    rep = _Report("whidth3")

    best, best_keys = _max_aut_rank2(3)
    k333 = fixture("K333")
    gk = require_grading(k333)
    k333_key = window(k333, gk, 0, 2).canonical_key
    rep.check("max_rank2_automorphisms_216", best == 216, f"max={best}")
    rep.check(
        "cap_attained_only_by_complete_tower",
        best_keys == {k333_key},
        f"{len(best_keys)} attaining class(es)",
    )

    gap_ok = contract_ok = True
    detail = ""
    densities = (0.3, 0.45, 0.6, 0.75, 0.9)
    for i in range(towers):
        p = gen_random_tower(
            seed=seed + 2_000 + i,
            num_levels=5 + i % 4,
            max_level_size=3,
            density=densities[i % 5],
            min_cover_degree=2,
            min_level_size=2,
        )
        g = require_grading(p)
        ups, downs = find_singles(p)
        if ups or downs:
            gap_ok, detail = False, f"tower {i} has single-cover elements"
            break
        for s in range(p.n):
            rs = g.ranks[s]
            if rs < 1 or rs + 2 > g.top_rank - 1:
                continue
            for t in g.levels()[rs + 2]:
                if not p.lt(s, t):
                    gap_ok, detail = False, f"tower {i}: {s} !< {t}"
                    break
            if not gap_ok:
                break
        if not gap_ok:
            break
        for lo in range(g.top_rank - 4 + 1):
            w = window(p, g, lo, 4)
            for local in w.levels[2]:
                f = contract_window_interior(p, w, w.elements[local])
                if not is_order_preserving(p, f.image):
                    contract_ok = False
                    detail = f"tower {i}: contraction not order-preserving"
                    break
            if not contract_ok:
                break
        if not contract_ok:
            break
    rep.check(
        "two_rank_gap_comparability", gap_ok,
        detail or f"{towers} towers checked",
    )
    rep.check("contraction_succeeds_at_every_middle", contract_ok, detail)

    bound_ok = lower_bound_ok = True
    detail = ""
    stacked = [("k333", k) for k in (2, 3)] + [("fan", k) for k in (2, 3, 4, 5)]
    for block_name, k in stacked:
        p = gen_stacked(named_block(block_name), k)
        g = require_grading(p)
        auts = enumerate_automorphisms(p, g)
        end = count_endomorphisms(p, memo=True)
        ratio = Fraction(len(auts), end)
        c = central_window_count(p, g)
        if c < 1 or ratio > Fraction(216, c):
            bound_ok = False
            detail = f"{block_name} k={k}: ratio {ratio}, c={c}"
            break
        constructors = []
        next_free = 0
        for lo in range(g.top_rank - 4 + 1):
            if lo < next_free:
                continue
            w = window(p, g, lo, 4)
            mids = [
                w.elements[local]
                for local in w.levels[2]
                if all(p.lt(w.elements[a], w.elements[local]) for a in w.levels[0])
                and all(p.lt(w.elements[local], w.elements[b]) for b in w.levels[-1])
            ]
            if mids:
                constructors.append(contract_window_interior(p, w, mids[0]))
                next_free = lo + 4
        stats = distinct_compositions(p, constructors, auts)
        if stats.distinct * 216 < c * len(auts):
            lower_bound_ok = False
            detail = f"{block_name} k={k}: {stats.distinct} distinct"
            break
    rep.check(
        "stacked_ratio_bounded_by_216_over_c", bound_ok,
        detail or f"{len(stacked)} stacked towers",
    )
    rep.check("contraction_compositions_reach_bound", lower_bound_ok, detail)
    return rep.result()


def suite_whidth4_cases() -> dict:
    """The pair classifier and the ladder rail fold on their fixtures."""
    rep = _Report("whidth4-cases")

    ladder = fixture("LADDER")
    gl = require_grading(ladder)
    cls = classify_pair(ladder, gl, 0, 1)
    rep.check("ladder_classified", cls.case == CASE_LADDER, cls.reason or "")
    expected = {
        "shared_1": 4, "shared_2": 5, "rail_1": 6, "rail_2": 7,
        "upper_1": 8, "upper_2": 9, "base_1": 2, "base_2": 3,
    }
    rep.check(
        "ladder_witnesses", cls.witnesses == expected, str(cls.witnesses)
    )

    s4 = fixture("S4")
    cls4 = classify_pair(s4, require_grading(s4), 0, 1)
    rep.check("s4_classified", cls4.case == CASE_S4, cls4.reason or "")
    s3 = fixture("S3")
    cls3 = classify_pair(s3, require_grading(s3), 0, 1)
    rep.check("s3_classified", cls3.case == CASE_S3, cls3.reason or "")
    k333 = fixture("K333")
    cls_k = classify_pair(k333, require_grading(k333), 3, 4)
    rep.check(
        "k333_pair_inapplicable", cls_k.case == "inapplicable",
        cls_k.reason or "",
    )

    fold = swap_ladder_pair(ladder, cls)
    wanted = list(range(11))
    wanted[8], wanted[6] = 9, 7
    rep.check("rail_fold_image", fold.image == tuple(wanted), str(fold.image))
    rep.check(
        "rail_fold_is_endomorphism",
        is_order_preserving(ladder, fold.image) and not fold.is_bijective(),
    )
    rep.check("rail_fold_idempotent", compose(fold, fold) == fold)
    try:
        swap_ladder_pair(s4, cls4)
        rep.check("wrong_case_rejected", False)
    except WrongCase:
        rep.check("wrong_case_rejected", True)

    auts = enumerate_automorphisms(ladder, gl)
    stats = distinct_compositions(ladder, [fold], auts)
    rep.check(
        "fold_compositions_at_least_half_aut",
        2 * stats.distinct >= len(auts),
        f"{stats.distinct} distinct from {len(auts)} automorphisms",
    )
    return rep.result()


def suite_zero_posets() -> dict:
    """Ratio caps for posets owning a minimum element, exhaustively to n=5."""
    rep = _Report("zero-posets")
    max_ratio = Fraction(0)
    witness = None
    cap_third_ok = cap_half_ok = True
    counted = 0
    for n in range(2, 6):
        full = (1 << n) - 1
        for p in enumerate_all_posets(n, dedup=True):
            has_zero = any(p.up_set_masks()[z] == full for z in range(n))
            if not has_zero:
                continue
            counted += 1
            maps = brute_force_endomorphisms(p)
            aut = sum(1 for m in maps if m.is_bijective())
            ratio = Fraction(aut, len(maps))
            if ratio > Fraction(1, 2):
                cap_half_ok = False
            if n >= 3 and ratio > Fraction(1, 3):
                cap_third_ok = False
            if n >= 3 and ratio > max_ratio:
                max_ratio = ratio
                witness = p.covers()
    rep.check(
        "ratio_at_most_third_from_three_elements", cap_third_ok,
        f"max ratio {max_ratio} at covers {witness}",
    )
    rep.check("ratio_at_most_half_from_two_elements", cap_half_ok)
    rep.check("swept_enough_posets", counted >= 20, f"{counted} zero-posets")
    return rep.result()


SUITES = {
    "oracle": suite_oracle,
    "singles": suite_singles,
    "siblings": suite_siblings,
    "whidth2": suite_whidth2,
    "whidth3": suite_whidth3,
    "whidth4-cases": suite_whidth4_cases,
    "zero-posets": suite_zero_posets,
}


def run_suite(name: str, **overrides) -> dict:
    if name not in SUITES:
        raise UnknownSuite(
            f"unknown suite {name!r}; choose from {sorted(SUITES)}"
        )
    return SUITES[name](**overrides)
