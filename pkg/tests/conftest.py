import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from faultdom.graph import build_graph, cycle, petersen

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def P():
    return petersen()


@pytest.fixture
def C5():
    return cycle(5)


@pytest.fixture
def C4():
    return cycle(4)


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)


@st.composite
def graphs_with_sets(draw, min_n=1, max_n=9):
    G = draw(graphs(min_n, max_n))
    mask = draw(st.integers(0, (1 << G.n) - 1))
    return G, mask


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            name = getattr(rep, "nodeid", "").rsplit("::", 1)[-1]
            if name.startswith("test_criterion_") and rep.when in ("call", "setup"):
                if rep.when == "setup" and rep.passed:
                    continue
                lines.append((name, "PASS" if rep.passed else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            number = int(name.split("_")[2])
            terminalreporter.write_line(f"criterion {number:2d} {name[18:]}: {verdict}")
