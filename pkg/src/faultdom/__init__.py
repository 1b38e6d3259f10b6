"""Fault-tolerant locating-dominating detection systems on graphs."""

__version__ = "0.1.0"

from .graph import (Graph, GraphError, LatticeKind, build_graph, cycle, find_twins, make_family,
                    make_torus, parse_edge_list, petersen)
from .kernels import BACKEND
from .verify import (DetectorSet, Variant, Verdict, Violation, code_min_distance, errld_exists, exists,
                     expected_transmissions, is_valid, verify)
from .solver import NoSolutionError, SearchConfig, SolveResult, exact_min, greedy_upper, packing_complement
from .reduction import CnfFormula, build_reduction, parse_cnf, roundtrip_check
from .grids import PeriodicPattern, certify_pattern, parse_pattern, search_min_pattern
from .localization import (DecodeResult, Outcome, Scenario, TransmissionVector, decode_consistency,
                           decode_elimination, exhaustive_sweep, simulate)

__all__ = [
    "BACKEND", "CnfFormula", "DecodeResult", "DetectorSet", "Graph", "GraphError", "LatticeKind",
    "NoSolutionError", "Outcome", "PeriodicPattern", "Scenario", "SearchConfig", "SolveResult",
    "TransmissionVector", "Variant", "Verdict", "Violation", "build_graph", "build_reduction",
    "certify_pattern", "code_min_distance", "cycle", "decode_consistency", "decode_elimination",
    "errld_exists", "exact_min", "exhaustive_sweep", "exists", "expected_transmissions", "find_twins",
    "greedy_upper", "is_valid", "make_family", "make_torus", "packing_complement", "parse_cnf",
    "parse_edge_list", "parse_pattern", "petersen", "roundtrip_check", "search_min_pattern", "simulate",
    "verify",
]
