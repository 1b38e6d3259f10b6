"""Graph corpora: exhaustive small graphs and cubic graphs, shipped as graph6.

* ``small``: every connected, twin-free graph with minimum degree >= 2 and at
  most 8 vertices, up to isomorphism.  Graphs on 8 vertices are obtained by
  adding a vertex, with every possible neighbourhood, to each graph of the
  7-vertex atlas; deleting any vertex of an 8-vertex graph lands in that atlas,
  so nothing is missed.
* ``cubic``: every connected twin-free cubic graph with at most 12 vertices.
  Up to 12 vertices every cubic graph has a perfect matching (the smallest
  cubic graph without one has 16 vertices), so it splits into a perfect
  matching plus a 2-factor.  Fixing the 2-factor as a labelled union of cycles
  and enumerating the disjoint perfect matchings reaches every graph; the
  connected per-order totals are checked against 1, 2, 5, 19, 85.
* ``cubic_large``: seeded random connected twin-free cubic graphs with
  46 <= n <= 100, for size bounds that only apply to large graphs.

``tools/derive_corpus.py`` regenerates the files.
"""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

import networkx as nx

from .graph import Graph, build_graph, find_twins

CORPORA = ("small", "cubic", "cubic_large")
CONNECTED_CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}


def from_networkx(g: nx.Graph) -> Graph:
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    return build_graph(g.number_of_nodes(), list(g.edges()))


def to_networkx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def is_admissible(g: nx.Graph) -> bool:
    """Connected, minimum degree >= 2 and twin-free."""
    if g.number_of_nodes() == 0 or not nx.is_connected(g):
        return False
    if min(d for _, d in g.degree()) < 2:
        return False
    return not find_twins(from_networkx(g))


def _invariant(g: nx.Graph):
    # WL colours cannot separate regular graphs, so add per-vertex distance
    # profiles and triangle counts
    profile = []
    for v in g:
        layers = {}
        for d in nx.single_source_shortest_path_length(g, v).values():
            layers[d] = layers.get(d, 0) + 1
        profile.append((tuple(sorted(layers.items())), nx.triangles(g, v)))
    return nx.weisfeiler_lehman_graph_hash(g, iterations=3), tuple(sorted(profile))


class _IsoBuckets:
    """Isomorphism-class deduplication keyed by cheap invariants."""

    def __init__(self):
        self.buckets: dict = {}
        self.graphs: list[nx.Graph] = []

    def add(self, g: nx.Graph) -> bool:
        bucket = self.buckets.setdefault(_invariant(g), [])
        if any(nx.is_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.graphs.append(g)
        return True


def generate_small(max_n: int = 8) -> list[nx.Graph]:
    atlas = nx.graph_atlas_g()
    out = [g for g in atlas if g.number_of_nodes() <= min(max_n, 7) and is_admissible(g)]
    if max_n >= 8:
        seen = _IsoBuckets()
        for base in atlas:
            if base.number_of_nodes() != 7:
                continue
            for subset in range(1, 1 << 7):
                g = base.copy()
                g.add_edges_from((7, u) for u in range(7) if subset >> u & 1)
                if is_admissible(g):
                    seen.add(g)
        out += seen.graphs
    return out


def _cycle_partitions(n: int, smallest: int = 3):
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in _cycle_partitions(n - first, first):
            yield (first, *rest)


def _perfect_matchings(free: list[int], forbidden: set):
    if not free:
        yield []
        return
    a = free[0]
    for i in range(1, len(free)):
        b = free[i]
        if (a, b) in forbidden:
            continue
        for rest in _perfect_matchings(free[1:i] + free[i + 1:], forbidden):
            yield [(a, b), *rest]


def generate_connected_cubic(max_n: int = 12) -> dict[int, list[nx.Graph]]:
    if max_n > 14:
        raise ValueError("the matching-plus-2-factor generation is only complete up to 14 vertices")
    levels = {}
    for n in range(4, max_n + 1, 2):
        seen = _IsoBuckets()
        for parts in _cycle_partitions(n):
            factor = nx.Graph()
            start = 0
            for k in parts:
                nx.add_cycle(factor, range(start, start + k))
                start += k
            forbidden = {tuple(sorted(e)) for e in factor.edges()}
            for matching in _perfect_matchings(list(range(n)), forbidden):
                g = factor.copy()
                g.add_edges_from(matching)
                if nx.is_connected(g):
                    seen.add(g)
        levels[n] = seen.graphs
    return levels


def generate_cubic(max_n: int = 12) -> list[nx.Graph]:
    levels = generate_connected_cubic(max_n)
    return [g for n in sorted(levels) for g in levels[n] if is_admissible(g)]


def generate_cubic_large(orders=(46, 50, 60, 80, 100), per_order: int = 2, seed: int = 46) -> list[nx.Graph]:
    rng = random.Random(seed)
    out = []
    for n in orders:
        found = 0
        while found < per_order:
            g = nx.random_regular_graph(3, n, seed=rng.randrange(2**32))
            if is_admissible(g):
                out.append(g)
                found += 1
    return out


def encode(graphs) -> str:
    return "".join(nx.to_graph6_bytes(g, header=False).decode() for g in graphs)


@lru_cache(maxsize=None)
def load_corpus(name: str) -> tuple[Graph, ...]:
    if name not in CORPORA:
        raise KeyError(f"unknown corpus {name!r}; choose from {', '.join(CORPORA)}")
    text = resources.files("faultdom").joinpath("data", f"{name}.g6").read_text()
    return tuple(from_networkx(nx.from_graph6_bytes(line.encode())) for line in text.split())
