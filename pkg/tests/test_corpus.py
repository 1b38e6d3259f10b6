from collections import Counter

import networkx as nx
import pytest

from faultdom.corpus import (CONNECTED_CUBIC_COUNTS, encode, from_networkx, generate_connected_cubic,
                             generate_cubic, generate_cubic_large, is_admissible, load_corpus, to_networkx)
from faultdom.graph import find_twins


def orders(graphs):
    return dict(sorted(Counter(G.n for G in graphs).items()))


def test_shipped_sizes():
    assert orders(load_corpus("small")) == {5: 3, 6: 18, 7: 180, 8: 3471}
    assert orders(load_corpus("cubic")) == {6: 1, 8: 3, 10: 12, 12: 52}
    assert orders(load_corpus("cubic_large")) == {46: 2, 50: 2, 60: 2, 80: 2, 100: 2}
    with pytest.raises(KeyError):
        load_corpus("huge")


@pytest.mark.parametrize("name", ["small", "cubic", "cubic_large"])
def test_shipped_graphs_admissible(name):
    for G in load_corpus(name):
        g = to_networkx(G)
        assert nx.is_connected(g) and min(d for _, d in g.degree()) >= 2
        assert not find_twins(G)
        if name != "small":
            assert all(d == 3 for _, d in g.degree())


def test_small_corpus_has_no_isomorphic_duplicates():
    by_key = {}
    for G in load_corpus("small"):
        g = to_networkx(G)
        key = (g.number_of_nodes(), g.number_of_edges(), tuple(sorted(d for _, d in g.degree())))
        by_key.setdefault(key, []).append(g)
    for group in by_key.values():
        for i, a in enumerate(group):
            assert not any(nx.is_isomorphic(a, b) for b in group[i + 1:])


def test_connected_cubic_counts_to_ten():
    levels = generate_connected_cubic(10)
    assert {n: len(v) for n, v in levels.items()} == {n: c for n, c in CONNECTED_CUBIC_COUNTS.items() if n <= 10}


def test_shipped_cubic_matches_generation_to_ten():
    shipped = [to_networkx(G) for G in load_corpus("cubic") if G.n <= 10]
    fresh = generate_cubic(10)
    assert len(shipped) == len(fresh)
    for g in fresh:
        assert sum(nx.is_isomorphic(g, h) for h in shipped) == 1


@pytest.mark.slow
def test_connected_cubic_counts_twelve():
    assert len(generate_connected_cubic(12)[12]) == CONNECTED_CUBIC_COUNTS[12]


def test_generation_limits():
    with pytest.raises(ValueError):
        generate_connected_cubic(16)


def test_large_generation_is_seeded():
    a = generate_cubic_large(orders=(46,), per_order=1)
    b = generate_cubic_large(orders=(46,), per_order=1)
    assert encode(a) == encode(b) and is_admissible(a[0])
    assert encode(generate_cubic_large()) == "".join(
        nx.to_graph6_bytes(to_networkx(G), header=False).decode() for G in load_corpus("cubic_large"))


def test_admissibility_filter():
    assert is_admissible(nx.petersen_graph())
    assert not is_admissible(nx.complete_graph(4))  # every pair is a closed twin
    assert not is_admissible(nx.path_graph(5))
    assert is_admissible(nx.cycle_graph(5)) and not is_admissible(nx.cycle_graph(4))


def test_networkx_roundtrip():
    G = from_networkx(nx.petersen_graph())
    assert G.n == 10 and G.m == 15
    assert nx.is_isomorphic(to_networkx(G), nx.petersen_graph())
