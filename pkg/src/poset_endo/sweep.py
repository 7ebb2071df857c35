"""Sweep harness: per-poset records of exact counts, detected structure,
and self-checked ratio bounds, rendered as byte-stable CSV."""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

from .analysis import (
    _greedy_disjoint,
    central_elements,
    find_repeating_windows,
    structure_report,
)
from .core import GradedInfo, NotGraded, Poset, compute_grading
from .errors import BudgetExceeded
from .morphisms import DEFAULT_BUDGET, count_result

CSV_COLUMNS = (
    "id,n,whidth,aut,end,ratio_num,ratio_den,ratio_dec,up_singles,"
    "sibling_pairs,twins,central,c_best,bounds_passed,status"
)


@dataclass(frozen=True)
class BoundCheck:
    """One self-check: a named inequality with its outcome."""

    name: str
    inequality: str
    passed: bool


@dataclass(frozen=True)
class SweepRecord:
    """Everything measured for one poset of a sweep."""

    ident: str
    n: int
    whitney: tuple[int, ...] | None
    whidth: int | None
    aut: int | None
    end: int | None
    ratio: Fraction | None
    up_singles: int | None
    sibling_pairs: int | None
    twins: int | None
    central: int | None
    c_best: int | None
    bounds: tuple[BoundCheck, ...]
    status: str


def central_window_count(p: Poset, g: GradedInfo, span: int = 4) -> int:
    """Disjoint count of span-4 windows owning a central middle element.

    A window qualifies when some element two ranks above its base is above
    every base element and below every top element; the count feeds the
    interior-contraction ratio bound.
    """
    if g.top_rank < span:
        return 0
    central_mid = set(central_elements(p, g, span // 2, span - span // 2))
    levels = g.levels()
    starts = [
        lo
        for lo in range(g.top_rank - span + 1)
        if any(x in central_mid for x in levels[lo + span // 2])
    ]
    return _greedy_disjoint(starts, span)


def _bounds_for(
    ratio: Fraction,
    whidth: int,
    up_singles: int,
    sibling_pairs: int,
    contraction_windows: int,
) -> tuple[BoundCheck, ...]:
    checks = []
    if up_singles >= 1:
        bound = Fraction(1, up_singles)
        checks.append(
            BoundCheck("singles", f"ratio<=1/{up_singles}", ratio <= bound)
        )
    if sibling_pairs >= 1 and whidth >= 2:
        bound = Fraction(2 * (whidth - 1), sibling_pairs)
        checks.append(
            BoundCheck(
                "siblings",
                f"ratio<={2 * (whidth - 1)}/{sibling_pairs}",
                ratio <= bound,
            )
        )
    if whidth <= 3 and contraction_windows >= 1:
        bound = Fraction(216, contraction_windows)
        checks.append(
            BoundCheck(
                "central216",
                f"ratio<=216/{contraction_windows}",
                ratio <= bound,
            )
        )
    return tuple(checks)


def build_record(
    ident: str,
    p: Poset,
    budget: int = DEFAULT_BUDGET,
    memo: bool = True,
) -> SweepRecord:
    g = compute_grading(p)
    if isinstance(g, NotGraded):
        return SweepRecord(
            ident, p.n, None, None, None, None, None, None, None, None,
            None, None, (), "not_graded",
        )
    report = structure_report(p, g)
    c_best = 0
    for span in range(2, min(4, g.top_rank) + 1):
        c_best = max(c_best, find_repeating_windows(p, g, span).c)
    try:
        counts = count_result(p, g, budget=budget, memo=memo)
    except BudgetExceeded:
        return SweepRecord(
            ident, p.n, g.whitney, g.whidth, None, None, None,
            len(report.up_singles), len(report.older_sibling_pairs),
            len(report.twin_pairs), len(report.central_witnesses),
            c_best, (), "budget",
        )
    bounds = _bounds_for(
        counts.ratio,
        g.whidth,
        len(report.up_singles),
        len(report.older_sibling_pairs),
        central_window_count(p, g),
    )
    return SweepRecord(
        ident=ident,
        n=p.n,
        whitney=g.whitney,
        whidth=g.whidth,
        aut=counts.aut_count,
        end=counts.end_count,
        ratio=counts.ratio,
        up_singles=len(report.up_singles),
        sibling_pairs=len(report.older_sibling_pairs),
        twins=len(report.twin_pairs),
        central=len(report.central_witnesses),
        c_best=c_best,
        bounds=bounds,
        status="ok",
    )


def _worker(item) -> SweepRecord:
    ident, poset, budget, memo = item
    return build_record(ident, poset, budget=budget, memo=memo)


def run_sweep(
    members,
    budget: int = DEFAULT_BUDGET,
    memo: bool = True,
    jobs: int = 1,
) -> list[SweepRecord]:
    """Build one record per (id, poset), preserving input order."""
    items = [(ident, poset, budget, memo) for ident, poset in members]
    if jobs > 1 and len(items) > 1:
        with multiprocessing.Pool(jobs) as pool:
            return pool.map(_worker, items)
    return [_worker(item) for item in items]


def _bounds_cell(bounds) -> str:
    if not bounds:
        return ""
    return ";".join(
        f"{b.name}:{b.inequality}:{'pass' if b.passed else 'fail'}"
        for b in bounds
    )


def render_csv(records) -> str:
    """Fixed header, one row per record, then a ratio-trend summary line."""
    lines = [CSV_COLUMNS]
    ratios = []
    for r in records:
        if r.status == "ok":
            ratios.append(r.ratio)
            cells = [
                r.ident, str(r.n), str(r.whidth), str(r.aut), str(r.end),
                str(r.ratio.numerator), str(r.ratio.denominator),
                f"{float(r.ratio):.6g}", str(r.up_singles),
                str(r.sibling_pairs), str(r.twins), str(r.central),
                str(r.c_best), _bounds_cell(r.bounds), r.status,
            ]
        else:
            cells = [
                r.ident, str(r.n),
                "" if r.whidth is None else str(r.whidth),
                "", "", "", "", "",
                "" if r.up_singles is None else str(r.up_singles),
                "" if r.sibling_pairs is None else str(r.sibling_pairs),
                "" if r.twins is None else str(r.twins),
                "" if r.central is None else str(r.central),
                "" if r.c_best is None else str(r.c_best),
                _bounds_cell(r.bounds), r.status,
            ]
        lines.append(",".join(cells))
    non_increasing = all(b <= a for a, b in zip(ratios, ratios[1:]))
    final = (
        f"{ratios[-1].numerator}/{ratios[-1].denominator}" if ratios else "na"
    )
    lines.append(
        f"# summary rows={len(records)} "
        f"ratio_non_increasing={'true' if non_increasing else 'false'} "
        f"final_ratio={final}"
    )
    return "\n".join(lines) + "\n"
