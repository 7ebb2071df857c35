"""Exact structure analysis and morphism counting for finite graded posets."""

from .analysis import (
    CASE_INAPPLICABLE,
    CASE_LADDER,
    CASE_S3,
    CASE_S4,
    PairClassification,
    RepeatReport,
    StructureReport,
    central_elements,
    classify_pair,
    find_repeating_windows,
    find_singles,
    older_siblings,
    structure_report,
    twin_pairs_of,
)
from .core import (
    GradedInfo,
    IsoMap,
    NotGraded,
    Poset,
    Window,
    canonical_form,
    compute_grading,
    connected_components,
    from_cover_list,
    induced_subposet,
    is_isomorphic_rank_preserving,
    rank_selected,
    require_grading,
    width,
    window,
)
from .files import PosetFile, export_dot, read_poset, write_poset
from .generators import (
    FIXTURE_NAMES,
    FamilySpec,
    canonical_poset_key,
    enumerate_all_graded,
    enumerate_all_posets,
    fixture,
    gen_antichain,
    gen_chain,
    gen_complete_tower,
    gen_diamond_tower,
    gen_random_poset,
    gen_random_tower,
    gen_stacked,
    named_block,
)
from .morphisms import (
    AUTOMORPHISM,
    ENDOMORPHISM,
    CompositionStats,
    CountResult,
    Morphism,
    brute_force_endomorphisms,
    collapse_up_single,
    compose,
    contract_window_interior,
    count_endomorphisms,
    count_result,
    distinct_compositions,
    enumerate_automorphisms,
    fold_onto_sibling,
    identity_morphism,
    is_order_preserving,
    make_morphism,
    swap_ladder_pair,
)
from .sweep import SweepRecord, build_record, central_window_count, render_csv, run_sweep
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "AUTOMORPHISM",
    "CASE_INAPPLICABLE",
    "CASE_LADDER",
    "CASE_S3",
    "CASE_S4",
    "CompositionStats",
    "CountResult",
    "ENDOMORPHISM",
    "FIXTURE_NAMES",
    "FamilySpec",
    "GradedInfo",
    "IsoMap",
    "Morphism",
    "NotGraded",
    "PairClassification",
    "Poset",
    "PosetFile",
    "RepeatReport",
    "SUITES",
    "StructureReport",
    "SweepRecord",
    "Window",
    "brute_force_endomorphisms",
    "build_record",
    "canonical_form",
    "canonical_poset_key",
    "central_elements",
    "central_window_count",
    "classify_pair",
    "collapse_up_single",
    "compose",
    "compute_grading",
    "connected_components",
    "contract_window_interior",
    "count_endomorphisms",
    "count_result",
    "distinct_compositions",
    "enumerate_all_graded",
    "enumerate_all_posets",
    "enumerate_automorphisms",
    "export_dot",
    "find_repeating_windows",
    "find_singles",
    "fixture",
    "fold_onto_sibling",
    "from_cover_list",
    "gen_antichain",
    "gen_chain",
    "gen_complete_tower",
    "gen_diamond_tower",
    "gen_random_poset",
    "gen_random_tower",
    "gen_stacked",
    "identity_morphism",
    "induced_subposet",
    "is_isomorphic_rank_preserving",
    "is_order_preserving",
    "make_morphism",
    "named_block",
    "older_siblings",
    "rank_selected",
    "read_poset",
    "render_csv",
    "require_grading",
    "run_suite",
    "run_sweep",
    "structure_report",
    "swap_ladder_pair",
    "twin_pairs_of",
    "width",
    "window",
    "write_poset",
]
