"""Command-line entry points.

Exit codes: 0 success, 1 check failure, 2 usage or parse error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .analysis import find_repeating_windows, structure_report
from .core import NotGraded, compute_grading, width
from .core import connected_components as components_of
from .errors import BudgetExceeded, ParseError, PosetError, UnknownSuite
from .files import PosetFile, export_dot
from .generators import FamilySpec
from .morphisms import DEFAULT_BUDGET, count_result
from .sweep import render_csv, run_sweep
from .verify import run_suite


def _load_spec_json(arg: str):
    """Accept an inline JSON object/array or a path to a JSON file."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read spec {arg!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ratio_fields(ratio: Fraction) -> dict:
    return {
        "ratio": f"{ratio.numerator}/{ratio.denominator}",
        "ratio_decimal": f"{float(ratio):.6g}",
    }


def cmd_analyze(args) -> int:
    pf = PosetFile.load(args.path)
    p = pf.to_poset()
    out: dict = {"n": p.n, "covers": len(p.covers())}
    g = compute_grading(p)
    if isinstance(g, NotGraded):
        out["graded"] = False
        out["witness_chains"] = [list(g.chain_long), list(g.chain_short)]
    else:
        out["graded"] = True
        out["whitney"] = list(g.whitney)
        out["whidth"] = g.whidth
        out["top_rank"] = g.top_rank
    out["width"] = width(p)
    out["components"] = [list(c) for c in components_of(p)]
    if out["graded"]:
        report = structure_report(p, g)
        out["up_singles"] = list(report.up_singles)
        out["down_singles"] = list(report.down_singles)
        out["older_sibling_pairs"] = [list(t) for t in report.older_sibling_pairs]
        out["twin_pairs"] = [list(t) for t in report.twin_pairs]
        out["central_witnesses"] = [list(t) for t in report.central_witnesses]
        repeats = {}
        for span in range(2, min(4, g.top_rank) + 1):
            rr = find_repeating_windows(p, g, span)
            repeats[str(span)] = {
                "distinct_keys": len(rr.occurrences),
                "best_disjoint_count": rr.c,
                "best_key": rr.best_key.hex(),
            }
        out["repeating_windows"] = repeats
        if args.count:
            counts = count_result(p, g, budget=args.budget, memo=args.memo)
            out["aut"] = counts.aut_count
            out["end"] = counts.end_count
            out.update(_ratio_fields(counts.ratio))
    if args.format == "json":
        _emit(json.dumps(out, indent=2) + "\n", args.out)
    else:
        lines = []
        for key, value in out.items():
            lines.append(f"{key}: {value}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_count(args) -> int:
    p = PosetFile.load(args.path).to_poset()
    g = compute_grading(p)
    if isinstance(g, NotGraded):
        raise ParseError("poset is not graded; automorphism count undefined")
    counts = count_result(p, g, budget=args.budget, memo=args.memo)
    out = {
        "aut": counts.aut_count,
        "end": counts.end_count,
        **_ratio_fields(counts.ratio),
    }
    _emit(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def cmd_generate(args) -> int:
    spec = FamilySpec.from_json(_load_spec_json(args.spec))
    instances = list(spec.instances())
    if len(instances) != 1:
        raise ParseError(
            f"generate needs a single-poset family, got {len(instances)} instances"
        )
    _ident, p = instances[0]
    text = PosetFile.from_poset(p).render()
    _emit(text, args.out)
    return 0


def _family_specs(obj, base_seed: int) -> list[FamilySpec]:
    if isinstance(obj, dict) and "families" in obj:
        obj = obj["families"]
    if not isinstance(obj, list):
        raise ParseError("sweep spec must be a list or {'families': [...]}")
    specs = []
    for i, entry in enumerate(obj):
        if (
            isinstance(entry, dict)
            and entry.get("kind") == "random_tower"
            and "seed" not in entry
        ):
            entry = {**entry, "seed": base_seed + i}
        specs.append(FamilySpec.from_json(entry))
    return specs


def cmd_sweep(args) -> int:
    specs = _family_specs(_load_spec_json(args.spec), args.seed)
    members = [pair for spec in specs for pair in spec.instances()]
    records = run_sweep(
        members, budget=args.budget, memo=args.memo, jobs=args.jobs
    )
    _emit(render_csv(records), args.csv)
    if args.strict and any(r.status != "ok" for r in records):
        return 3
    if any(not b.passed for r in records for b in r.bounds):
        return 1
    return 0


def cmd_verify(args) -> int:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    try:
        report = run_suite(args.suite, **overrides)
    except TypeError:
        # Suite without a seed parameter.
        report = run_suite(args.suite)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        lines = [f"suite {report['suite']}"]
        for check in report["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            detail = f"  ({check['detail']})" if check["detail"] else ""
            lines.append(f"  {status} {check['name']}{detail}")
        lines.append("passed" if report["passed"] else "FAILED")
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report["passed"] else 1


def cmd_export_dot(args) -> int:
    pf = PosetFile.load(args.path)
    _emit(export_dot(pf.to_poset(), names=pf.names), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poset-endo",
        description=(
            "Structure analysis, exact morphism counting, and verification "
            "suites for finite graded posets."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, budget=False, memo=False, out=True, fmt=False):
        if budget:
            sp.add_argument(
                "--budget", type=int, default=DEFAULT_BUDGET,
                help="search-node budget for endomorphism counting",
            )
        if memo:
            sp.add_argument(
                "--memo", action="store_true",
                help="cache suffix counts keyed by search boundary",
            )
        if out:
            sp.add_argument("--out", default=None, help="output path (default stdout)")
        if fmt:
            sp.add_argument(
                "--format", choices=("text", "json"), default="text",
            )

    sp = sub.add_parser("analyze", help="report structure of a poset file")
    sp.add_argument("path")
    sp.add_argument(
        "--count", action="store_true", help="also count morphisms exactly"
    )
    add_common(sp, budget=True, memo=True, fmt=True)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("count", help="exact |Aut|, |End|, and their ratio")
    sp.add_argument("path")
    add_common(sp, budget=True, memo=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("generate", help="write one generated poset as a file")
    sp.add_argument("spec", help="family spec: inline JSON or a path")
    add_common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("sweep", help="CSV of counts and bounds over families")
    sp.add_argument("spec", help="family list: inline JSON or a path")
    sp.add_argument("--csv", default=None, help="CSV path (default stdout)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument(
        "--strict", action="store_true",
        help="exit 3 when any row failed its budget",
    )
    sp.add_argument(
        "--no-memo", dest="memo", action="store_false",
        help="disable boundary-keyed count caching",
    )
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_sweep, memo=True)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite")
    sp.add_argument("--seed", type=int, default=None)
    add_common(sp, fmt=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export-dot", help="Hasse diagram as DOT")
    sp.add_argument("path")
    add_common(sp)
    sp.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, UnknownSuite) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PosetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
