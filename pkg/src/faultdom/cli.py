"""Command-line front end.

Exit codes: 0 success / pass, 1 semantic negative (violation found, no set
exists, round-trip mismatch), 2 usage or input error.  Reports go to stdout and
are deterministic; the version banner goes to stderr and ``--quiet`` drops it.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__, kernels
from .graph import GraphError, make_family, parse_edge_list, to_dot
from .grids import (SHIPPED, PatternError, certify_pattern, domination_lower_bound, load_shipped_pattern,
                    parse_pattern, search_min_pattern, snapshot_dot)
from .localization import (LocalizationError, Scenario, decode_consistency, decode_elimination,
                           exhaustive_sweep, simulate)
from .reduction import CnfError, build_reduction, format_outputs, parse_cnf, roundtrip_check
from .solver import NoSolutionError, SearchConfig, exact_min
from .verify import Variant, errld_exists, exists, parse_detector_set, verify

log = logging.getLogger("faultdom")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _graph(spec: str):
    """An edge-list path, or ``family:NAME[:PARAM...]`` for a built-in family."""
    if spec.startswith("family:"):
        name, *params = spec.split(":")[1:]
        try:
            return make_family(name, *(int(p) for p in params))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return parse_edge_list(_read(spec))


def _detectors(spec: str, G):
    text = spec[1:] if spec.startswith("=") else _read(spec)
    return parse_detector_set(text, G)


def _variant(text: str) -> Variant:
    try:
        return Variant.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("FAULTDOM_JOBS", "1")))
    except ValueError:
        return 1


def _pattern(spec: str):
    if not Path(spec).exists() and spec in SHIPPED:
        return load_shipped_pattern(spec)
    return parse_pattern(_read(spec))


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


# --- commands ------------------------------------------------------------------


def cmd_verify(a) -> int:
    G = _graph(a.graph)
    S = _detectors(a.set, G)
    verdict = verify(G, S, a.variant, cap=a.cap, exhaustive=a.exhaustive)
    sys.stdout.write(verdict.report())
    return 0 if verdict.ok else 1


def cmd_solve(a) -> int:
    G = _graph(a.graph)
    config = SearchConfig(node_budget=a.budget, time_budget=a.time, parallel_width=a.jobs)
    try:
        result = exact_min(G, a.variant, config)
    except NoSolutionError as exc:
        print(f"NONE {a.variant.name} {exc}")
        return 1
    sys.stdout.write(result.report())
    return 0


def cmd_exists(a) -> int:
    G = _graph(a.graph)
    ok = errld_exists(G) if a.variant is Variant.ERR_LD else exists(G, a.variant)
    print(f"{'EXISTS' if ok else 'NONE'} {a.variant.name}")
    return 0 if ok else 1


def cmd_reduce(a) -> int:
    R = build_reduction(parse_cnf(_read(a.formula)))
    edges, labels, mandatory = format_outputs(R)
    out = Path(a.output)
    _write(str(out), edges)
    _write(str(out.with_suffix(".labels")), labels)
    _write(str(out.with_suffix(".ds")), mandatory)
    print(f"REDUCTION n={R.graph.n} m={R.graph.m} mandatory={len(R.mandatory)} threshold={R.threshold}")
    return 0


def cmd_roundtrip(a) -> int:
    psi = parse_cnf(_read(a.formula))
    rt = roundtrip_check(psi, SearchConfig(node_budget=a.budget, time_budget=a.time))
    status = "INDETERMINATE" if rt.ok is None else ("OK" if rt.ok else "MISMATCH")
    print(f"ROUNDTRIP {status} sat={'yes' if rt.satisfiable else 'no'} "
          f"optimum={rt.optimum} threshold={rt.threshold}")
    return 0 if rt.ok else 1


def cmd_grid_certify(a) -> int:
    P = _pattern(a.pattern)
    cert = certify_pattern(P, a.variant)
    sys.stdout.write(cert.report())
    if a.dot:
        _write(a.dot, snapshot_dot(P, a.margin))
    if cert.ok and cert.density < domination_lower_bound(P.lattice):
        print("FAIL density below the domination lower bound")
        return 1
    return 0 if cert.ok else 1


def cmd_grid_search(a) -> int:
    try:
        pr, pc = (int(t) for t in a.max_cell.lower().split("x"))
    except ValueError:
        raise UsageError(f"--max-cell must look like 3x6, got {a.max_cell!r}") from None
    P = search_min_pattern(a.lattice, (pr, pc), a.variant)
    if P is None:
        print(f"NONE {a.lattice} within {pr}x{pc}")
        return 1
    d = P.density
    sys.stdout.write(f"# density {d.numerator}/{d.denominator}\n" + P.to_text())
    if a.output:
        _write(a.output, P.to_text())
    return 0


def _scenario(a) -> Scenario:
    intruder = None if a.intruder in (None, "none") else int(a.intruder)
    fault = None
    if a.fault:
        try:
            w, sym = a.fault.split(":")
            fault = (int(w), int(sym))
        except ValueError:
            raise UsageError(f"--fault must look like DETECTOR:SYMBOL, got {a.fault!r}") from None
    return Scenario(intruder, fault)


def cmd_simulate(a) -> int:
    G = _graph(a.graph)
    S = _detectors(a.set, G)
    o = simulate(G, S, _scenario(a))
    sys.stdout.write(o.to_text())
    if a.decode:
        print(f"consistency {decode_consistency(G, S, o).line()}")
        print(f"elimination {decode_elimination(G, S, o).line()}")
    return 0


def cmd_sweep(a) -> int:
    G = _graph(a.graph)
    S = _detectors(a.set, G)
    try:
        report = exhaustive_sweep(G, S, jobs=a.jobs)
    except LocalizationError as exc:
        print(f"PRECONDITION {exc}")
        return 1
    print(report.line())
    for sc, c, e in report.failures[: a.show]:
        print(f"FAILURE {sc.describe()} consistency={c.line()} elimination={e.line()}")
    return 0 if report.ok else 1


def cmd_export_dot(a) -> int:
    G = _graph(a.graph)
    S = _detectors(a.set, G) if a.set else None
    text = to_dot(G, S)
    if a.output:
        _write(a.output, text)
    else:
        sys.stdout.write(text)
    return 0


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="faultdom", description="Fault-tolerant locating-dominating sets.")
    p.add_argument("--quiet", action="store_true", help="suppress the version banner on stderr")
    p.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def graph_arg(sp):
        sp.add_argument("-g", "--graph", required=True,
                        help="edge-list file, or family:NAME[:PARAM...] (e.g. family:petersen, family:cycle:5)")

    def set_arg(sp, required=True):
        sp.add_argument("-s", "--set", required=required,
                        help="detector-set file (indices or '*'); '=TEXT' gives the set inline")

    def variant_arg(sp):
        sp.add_argument("--variant", type=_variant, default=Variant.ERR_LD, help="ld, red, det or err (default err)")

    def budget_args(sp):
        sp.add_argument("--budget", type=int, default=10_000_000, help="search node budget")
        sp.add_argument("--time", type=float, default=600.0, help="search time budget in seconds")

    def jobs_arg(sp):
        sp.add_argument("--jobs", type=int, default=_jobs_default(), help="worker processes (env FAULTDOM_JOBS)")

    sp = sub.add_parser("verify", help="check a detector set; list violations")
    graph_arg(sp); set_arg(sp); variant_arg(sp)
    sp.add_argument("--cap", type=int, default=100, help="maximum violations reported")
    sp.add_argument("--exhaustive", action="store_true", help="check every vertex pair instead of close pairs")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("solve", help="exact minimum set by branch and bound")
    graph_arg(sp); variant_arg(sp); budget_args(sp); jobs_arg(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("exists", help="does any set of the variant exist")
    graph_arg(sp); variant_arg(sp)
    sp.set_defaults(func=cmd_exists)

    sp = sub.add_parser("reduce", help="build the 3-SAT reduction graph from a DIMACS CNF file")
    sp.add_argument("-f", "--formula", required=True)
    sp.add_argument("-o", "--output", required=True,
                    help="edge-list path; labels and mandatory set go next to it (.labels, .ds)")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("roundtrip", help="compare satisfiability with the reduction's exact optimum")
    sp.add_argument("-f", "--formula", required=True)
    budget_args(sp)
    sp.set_defaults(func=cmd_roundtrip)

    sp = sub.add_parser("grid-certify", help="certify a periodic pattern on a torus")
    sp.add_argument("-p", "--pattern", required=True, help=f"pattern file or shipped name ({', '.join(SHIPPED)})")
    variant_arg(sp)
    sp.add_argument("--dot", help="also write a DOT snapshot of one cell with margin")
    sp.add_argument("--margin", type=int, default=1, help="cells of context around the snapshot")
    sp.set_defaults(func=cmd_grid_certify)

    sp = sub.add_parser("grid-search", help="minimum-density periodic pattern over bounded cells")
    sp.add_argument("--lattice", required=True, help="SQ, TRI, HEX, KING or LADDER")
    sp.add_argument("--max-cell", default="3x6", help="largest cell as ROWSxCOLS (default 3x6)")
    sp.add_argument("-o", "--output", help="write the pattern file here")
    variant_arg(sp)
    sp.set_defaults(func=cmd_grid_search)

    sp = sub.add_parser("simulate", help="detector transmissions for one scenario")
    graph_arg(sp); set_arg(sp)
    sp.add_argument("--intruder", default="none", help="vertex index or 'none'")
    sp.add_argument("--fault", help="faulty detector and reported symbol, DETECTOR:SYMBOL")
    sp.add_argument("--decode", action="store_true", help="also run both decoders on the vector")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="decode every single-fault scenario")
    graph_arg(sp); set_arg(sp); jobs_arg(sp)
    sp.add_argument("--show", type=int, default=10, help="failing scenarios to list")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("export-dot", help="write the graph as DOT, shading detectors")
    graph_arg(sp); set_arg(sp, required=False)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_export_dot)
    return p


INPUT_ERRORS = (UsageError, GraphError, PatternError, CnfError, LocalizationError, ValueError, KeyError)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.quiet:
        print(f"faultdom {__version__} ({kernels.BACKEND} kernels)", file=sys.stderr)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
