"""Deterministic weighted automata under partial (interval) observation."""
from .core import (
    BINARY,
    Dwa,
    ObservationScheme,
    Podwa,
    Violation,
    canonical_form,
    evaluate,
    is_isomorphic,
    make_dwa,
    observe,
    reachable_states,
    run,
    validate,
)
from .engine import (
    EngineConfig,
    EngineVerdict,
    ThresholdQuery,
    Verdict,
    Witness,
    brute_force_witness,
    build_product,
    equivalent,
    max_walk_value,
    threshold_queries,
    witness_search,
)
from .errors import PodwaError
from .fitting import Sample, check_sample, fit_prefix_tree, fit_single_state
from .formats import parse, parse_sample, serialize, serialize_sample
from .kernel import two_gen_feasibility
from .omin import MergeSearchConfig, enumerate_congruences, omin_by_merging, omin_decision
from .transforms import MergeMap, complement, exact_equivalent, minimize_exact, quotient, scale

__all__ = [
    "BINARY", "Dwa", "ObservationScheme", "Podwa", "Violation", "canonical_form", "evaluate",
    "is_isomorphic", "make_dwa", "observe", "reachable_states", "run", "validate",
    "EngineConfig", "EngineVerdict", "ThresholdQuery", "Verdict", "Witness",
    "brute_force_witness", "build_product", "equivalent", "max_walk_value",
    "threshold_queries", "witness_search", "PodwaError", "Sample", "check_sample",
    "fit_prefix_tree", "fit_single_state", "parse", "parse_sample", "serialize",
    "serialize_sample", "two_gen_feasibility", "MergeSearchConfig", "enumerate_congruences",
    "omin_by_merging", "omin_decision", "MergeMap", "complement", "exact_equivalent",
    "minimize_exact", "quotient", "scale",
]
