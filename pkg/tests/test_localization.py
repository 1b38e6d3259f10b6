import itertools

import pytest
from hypothesis import given, settings

from faultdom.graph import cycle, petersen
from faultdom.localization import (LocalizationError, Outcome, Scenario, TransmissionVector, decode_consistency,
                                   decode_elimination, exhaustive_sweep, failure_witness, in_model, scenarios,
                                   simulate)
from faultdom.verify import DetectorSet, Variant, verify

from .conftest import graphs_with_sets

REST = list(range(1, 10))


def test_simulate_examples(P, C5):
    assert set(simulate(P, REST, Scenario()).values.values()) == {0}
    o = simulate(P, REST, Scenario(0, (1, 0)))
    assert {w for w in REST if o[w] == 1} == {4, 5} and o[1] == 0
    assert 2 not in o.values.values()
    o = simulate(C5, range(5), Scenario(None, (0, 2)))
    assert o.values == {0: 2, 1: 0, 2: 0, 3: 0, 4: 0}


def test_simulate_errors(P):
    with pytest.raises(LocalizationError, match="not a detector"):
        simulate(P, REST, Scenario(0, (0, 1)))
    with pytest.raises(LocalizationError, match="not a fault"):
        simulate(P, REST, Scenario(0, (4, 1)))
    with pytest.raises(LocalizationError):
        simulate(P, [], Scenario())


def test_two_twos_on_c5(C5):
    o = simulate(C5, range(5), Scenario(0, (1, 2)))
    assert [w for w in o.detectors() if o[w] == 2] == [0, 1]
    assert decode_elimination(C5, range(5), o).line() == "LOCATED 0"
    assert decode_consistency(C5, range(5), o).line() == "LOCATED 0"


def test_one_two_with_silent_neighbour(P):
    # intruder at 1, one of its detector neighbours wrongly reports 0
    o = simulate(P, REST, Scenario(1, (2, 0)))
    assert [w for w in o.detectors() if o[w] == 2] == [1]
    assert decode_elimination(P, REST, o).line() == "LOCATED 1"


def test_all_zero_decodes_to_no_intruder(P):
    o = simulate(P, REST, Scenario())
    assert decode_elimination(P, REST, o).outcome is Outcome.NO_INTRUDER
    assert decode_consistency(P, REST, o).line() == "NO_INTRUDER"


def test_three_twos_inconsistent(C5):
    o = TransmissionVector({0: 2, 1: 2, 2: 2, 3: 0, 4: 0})
    assert decode_elimination(C5, range(5), o).outcome is Outcome.INCONSISTENT
    assert not in_model(C5, range(5), o)


def test_double_fault_is_outside_the_model(P):
    flagged = 0
    for a, b in itertools.combinations(REST, 2):
        o = simulate(P, REST, Scenario())
        o = TransmissionVector({**o.values, a: 2, b: 2})
        r = decode_consistency(P, REST, o)
        flagged += r.outcome in (Outcome.INCONSISTENT, Outcome.AMBIGUOUS) or r.location != 0
    assert flagged > 0


def test_domain_mismatch(P):
    with pytest.raises(LocalizationError):
        decode_consistency(P, REST, TransmissionVector({1: 0}))
    with pytest.raises(LocalizationError):
        decode_elimination(P, REST, TransmissionVector({w: 0 for w in range(10)}))


def test_vector_text_roundtrip():
    o = TransmissionVector({3: 1, 0: 2, 7: 0})
    assert o.to_text() == "0:2\n3:1\n7:0\n"
    assert TransmissionVector.parse(o.to_text() + "# trailing\n") == o
    for bad in ("0:3\n", "x\n", "1:0\n1:1\n"):
        with pytest.raises(LocalizationError):
            TransmissionVector.parse(bad)
    assert Scenario(4, (1, 2)).describe() == "intruder=4 fault=1->2"


def test_scenario_counts(P, C5):
    assert sum(1 for _ in scenarios(P, REST)) == 209
    assert sum(1 for _ in scenarios(C5, range(5))) == 66


@pytest.mark.parametrize("G,S,count", [(petersen(), REST, 209), (cycle(5), list(range(5)), 66)])
def test_exhaustive_sweeps(G, S, count):
    rep = exhaustive_sweep(G, S)
    assert rep.ok and rep.scenarios == count
    assert rep.line() == f"scenarios={count} correct={count} disagreements=0"


def test_parallel_sweep_matches(P):
    assert exhaustive_sweep(P, REST, jobs=2).line() == exhaustive_sweep(P, REST).line()


def test_sweep_precondition(P):
    for S in itertools.combinations(range(10), 8):
        with pytest.raises(LocalizationError, match="not ERR:LD"):
            exhaustive_sweep(P, S)


@settings(max_examples=80)
@given(graphs_with_sets(max_n=9))
def test_decoders_agree_on_valid_sets(gs):
    G, s = gs
    S = DetectorSet(G.n, s)
    if not S or not verify(G, S, Variant.ERR_LD, cap=1).ok:
        return
    assert exhaustive_sweep(G, S).ok


def check_witness(G, S, violation=None):
    a, b = failure_witness(G, S, violation)
    assert a.intruder != b.intruder
    assert simulate(G, S, a) == simulate(G, S, b)


@settings(max_examples=80)
@given(graphs_with_sets(max_n=9))
def test_failure_witness_for_every_violation(gs):
    G, s = gs
    S = DetectorSet(G.n, s)
    if not S:
        return
    verdict = verify(G, S, Variant.ERR_LD, cap=None)
    if verdict.ok:
        assert failure_witness(G, S) is None
        return
    for v in verdict.violations:
        check_witness(G, S, v)


def test_single_condition_witnesses(P, C5):
    # dropping one more detector from the Petersen set breaks exactly one kind of condition
    for drop in REST:
        S = [w for w in REST if w != drop]
        verdict = verify(P, S, Variant.ERR_LD, cap=None)
        assert not verdict.ok
        check_witness(P, S)
    check_witness(C5, [0, 1, 2, 3])
