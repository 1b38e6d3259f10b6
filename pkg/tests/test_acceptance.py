"""The eleven acceptance criteria, one test each.

Every test is named ``test_criterion_NN_*``; the terminal summary hook in
``conftest.py`` prints one PASS/FAIL line per criterion after the run.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from faultdom.corpus import load_corpus
from faultdom.graph import LatticeKind, build_graph, cycle, petersen
from faultdom.grids import (LADDER_PATTERN, build_tree3_errld, certify_pattern, domination_lower_bound,
                            interior_violations, search_min_pattern)
from faultdom.localization import exhaustive_sweep, failure_witness, simulate
from faultdom.reduction import CnfFormula, build_reduction, is_satisfiable, roundtrip_check, satisfying_assignments
from faultdom.solver import exact_min, greedy_distance5_packing, packing_complement
from faultdom.verify import DetectorSet, Variant, code_min_distance, errld_exists, verify


@pytest.fixture(scope="module")
def small():
    return load_corpus("small")


def test_criterion_01_petersen_values():
    start = time.perf_counter()
    P = petersen()
    got = [exact_min(P, v).optimum for v in (Variant.LD, Variant.RED_LD, Variant.DET_LD, Variant.ERR_LD)]
    assert got == [4, 6, 6, 9]
    assert time.perf_counter() - start < 60


@pytest.fixture(scope="module")
def small_sweep(small):
    """One pass over every subset of every small-corpus graph, feeding criteria 2 and 3."""
    mismatched_min, mismatched_code = [], []
    for G in small:
        best = math.inf
        for s in range(1 << G.n):
            ok = verify(G, s, Variant.ERR_LD, cap=1).ok
            if ok:
                best = min(best, s.bit_count())
            if ok != (code_min_distance(G, s) >= 3):
                mismatched_code.append((G, s))
        r = exact_min(G, Variant.ERR_LD)
        if not r.proved_optimal or r.optimum != best:
            mismatched_min.append((G, r.optimum, best))
    return mismatched_min, mismatched_code


def test_criterion_02_exact_matches_brute_force(small, small_sweep):
    assert len(small) == 3672
    assert small_sweep[0] == []


def test_criterion_03_characterization_equals_code_distance(small_sweep):
    assert small_sweep[1] == []


def test_criterion_04_existence(small):
    extra = [cycle(3), cycle(4), cycle(5), build_graph(4, [(0, 1), (1, 2), (2, 3)]), petersen()]
    for G in (*small, *extra):
        assert errld_exists(G) == verify(G, DetectorSet.full(G), Variant.ERR_LD, cap=1).ok


def test_criterion_05_hierarchy():
    rng = random.Random(5)
    chain = [Variant.LD, Variant.RED_LD, Variant.DET_LD, Variant.ERR_LD]
    for _ in range(10_000):
        n = rng.randint(2, 10)
        p = rng.random()
        G = build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
        s = rng.getrandbits(n)
        ok = [verify(G, s, v, cap=1).ok for v in chain]
        for weaker, stronger in zip(ok, ok[1:]):
            assert weaker or not stronger


def check_counts(psi):
    R = build_reduction(psi)
    N, M = psi.N, psi.M
    assert (R.graph.n, R.graph.m, len(R.mandatory)) == (11 * N + 8 * M, 15 * N + 12 * M, 9 * N + 8 * M)


def test_criterion_06_reduction_roundtrip():
    for signs in itertools.product((1, -1), repeat=3):
        psi = CnfFormula.from_ints(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3)))])
        check_counts(psi)
        rt = roundtrip_check(psi)
        assert rt.ok and rt.optimum == 38
    rng = random.Random(6)
    for _ in range(20):
        n, m = rng.randint(3, 4), rng.randint(1, 5)
        psi = CnfFormula.from_ints(n, [tuple(v * rng.choice((1, -1)) for v in rng.sample(range(1, n + 1), 3))
                                       for _ in range(m)])
        check_counts(psi)
        assert roundtrip_check(psi).ok
    unsat = CnfFormula.from_ints(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                                     for signs in itertools.product((1, -1), repeat=3)])
    assert not any(True for _ in satisfying_assignments(unsat)) and not is_satisfiable(unsat)
    check_counts(unsat)
    rt = roundtrip_check(unsat)
    assert rt.ok and not rt.satisfiable


def test_criterion_07_grid_certifications():
    searched = {
        LatticeKind.HEX: ((4, 4), Fraction(3, 4)),
        LatticeKind.SQ: ((3, 6), Fraction(2, 3)),
        LatticeKind.TRI: ((4, 4), Fraction(1, 2)),
        LatticeKind.KING: ((4, 4), Fraction(7, 16)),
    }
    patterns = [(LADDER_PATTERN, Fraction(5, 6))]
    patterns += [(search_min_pattern(k, cell), d) for k, (cell, d) in searched.items()]
    for P, density in patterns:
        start = time.perf_counter()
        cert = certify_pattern(P)
        assert time.perf_counter() - start < 10
        assert cert.ok and cert.density == density == P.density
        if P.lattice is not LatticeKind.LADDER:
            assert P.density >= domination_lower_bound(P.lattice)
    assert [domination_lower_bound(k) for k in searched] == [Fraction(3, 4), Fraction(3, 5), Fraction(3, 7),
                                                             Fraction(1, 3)]


def test_criterion_08_cubic_lower_bound():
    cubic = [G for G in load_corpus("cubic") if G.n <= 12]
    assert cubic
    for G in cubic:
        assert exact_min(G, Variant.ERR_LD).optimum >= math.ceil(3 * G.n / 4)
    assert exact_min(petersen(), Variant.ERR_LD).optimum == 9 >= math.ceil(30 / 4)


def test_criterion_09_tree_construction():
    G, S, interior = build_tree3_errld(6)
    assert not interior_violations(G, S, interior)
    assert all((G.closed_masks[v] & S.mask).bit_count() == 3 for v in interior)
    assert abs(sum(v in S for v in interior) / len(interior) - 0.75) <= 0.05


def test_criterion_10_localization(small):
    for G, S in ((petersen(), range(1, 10)), (cycle(5), range(5))):
        rep = exhaustive_sweep(G, S)
        assert rep.scenarios > 0 and rep.correct == rep.scenarios and rep.disagreements == 0
    # sets whose violations all belong to a single condition, one or more per condition
    rng = random.Random(10)
    seen = set()
    for G in (petersen(), cycle(5), *rng.sample(small, 200)):
        for _ in range(20):
            s = rng.getrandbits(G.n)
            verdict = verify(G, s, Variant.ERR_LD, cap=None)
            props = {v.prop for v in verdict.violations}
            if s == 0 or len(props) != 1:
                continue
            a, b = failure_witness(G, s)
            assert a.intruder != b.intruder
            assert simulate(G, s, a) == simulate(G, s, b)
            seen |= props
    assert seen == {0, 1, 2, 3}


def test_criterion_11_packing():
    rng = random.Random(11)
    graphs = load_corpus("cubic") + load_corpus("cubic_large")
    assert any(G.n >= 46 for G in graphs)
    for G in graphs:
        orders = [None, *(rng.sample(range(G.n), G.n) for _ in range(10))]
        for order in orders:
            S = packing_complement(G, greedy_distance5_packing(G, order))
            assert verify(G, S, Variant.ERR_LD, cap=1).ok
            if G.n >= 46:
                assert len(S) <= math.ceil(45 * G.n / 46)
