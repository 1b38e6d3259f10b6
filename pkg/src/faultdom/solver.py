"""Exact minimum sets for all four variants, a greedy upper bound, and the
distance-5 packing construction for cubic graphs.

The exact search is a branch-and-bound over include/exclude decisions kept as
bitmasks.  At each node:

1. propagate domination: a vertex whose still-available closed neighbourhood
   exactly meets its requirement forces all of it in;
2. bound with the larger of a disjoint-neighbourhood packing bound and a
   coverage-counting bound;
3. if domination is met, test the included set with the checking kernel; a
   violation can only be repaired by an undecided vertex near its witnesses,
   so branch on one of those (or prune when there are none);
4. otherwise branch on an undecided neighbour of the tightest vertex.
"""

from __future__ import annotations

import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import kernels
from .graph import Graph, GraphError, bfs_distances, find_twins
from .verify import DetectorSet, Variant, errld_exists, exists, is_valid

log = logging.getLogger(__name__)


class NoSolutionError(GraphError):
    """The graph admits no set of the requested variant."""


@dataclass
class SearchConfig:
    node_budget: int = 10_000_000
    time_budget: float = 600.0
    parallel_width: int = 1

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0 or self.parallel_width <= 0:
            raise ValueError("search budgets and width must be positive")

    @classmethod
    def from_env(cls, **kw) -> "SearchConfig":
        kw.setdefault("parallel_width", int(os.environ.get("FAULTDOM_JOBS", "1") or 1))
        return cls(**kw)


@dataclass
class SolveResult:
    variant: Variant
    optimum: int
    witness: DetectorSet
    nodes_explored: int
    proved_optimal: bool

    def report(self) -> str:
        proved = "proved" if self.proved_optimal else "unproved"
        return f"{self.variant.name} {self.optimum} {proved} {self.nodes_explored}\n" + self.witness.to_text()


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _require_existence(G: Graph, variant: Variant) -> None:
    if variant is Variant.ERR_LD:
        if not errld_exists(G):
            raise NoSolutionError("no ERR:LD set exists: need minimum degree >= 2 and no twins")
    elif not exists(G, variant):
        raise NoSolutionError(f"no {variant.name} set exists on this graph")


class _Search:
    def __init__(self, G: Graph, variant: Variant, config: SearchConfig, best: int, best_set: int):
        self.G = G
        self.variant = variant
        self.code = int(variant)
        self.req = variant.domination
        self.closed = G.closed_masks
        self.full = G.full_mask
        self.best = best
        self.best_set = best_set
        self.nodes = 0
        self.node_budget = config.node_budget
        self.deadline = time.monotonic() + config.time_budget
        self.exhausted = False
        # a violation witnessed at (u, v) depends only on membership inside this region
        self._region = {}

    def region(self, u: int, v: int) -> int:
        key = (u, v)
        r = self._region.get(key)
        if r is None:
            r = self.closed[u] if v < 0 else self.closed[u] | self.closed[v]
            self._region[key] = r
        return r

    def propagate(self, inc: int, exc: int):
        closed, req = self.closed, self.req
        changed = True
        while changed:
            changed = False
            for v in range(self.G.n):
                c = closed[v]
                have = (c & inc).bit_count()
                if have >= req:
                    continue
                avail = c & ~exc
                k = avail.bit_count()
                if k < req:
                    return None
                if k == req:
                    inc |= avail
                    changed = True
        return inc

    def lower_bound(self, inc: int, exc: int) -> int:
        closed, req = self.closed, self.req
        residual = []
        total = 0
        for v in range(self.G.n):
            r = req - (closed[v] & inc).bit_count()
            if r > 0:
                residual.append((r, v))
                total += r
        if not residual:
            return 0
        residual.sort(key=lambda t: (-t[0], t[1]))
        used = 0
        packing = 0
        deficient = 0
        for r, v in residual:
            deficient |= 1 << v
            if not closed[v] & used:
                used |= closed[v]
                packing += r
        undecided = self.full & ~inc & ~exc
        cover = max(((closed[u] & deficient).bit_count() for u in _bits(undecided)), default=1)
        return max(packing, -(-total // max(cover, 1)))

    def run(self, inc: int, exc: int) -> None:
        if self.exhausted:
            return
        self.nodes += 1
        if self.nodes > self.node_budget or (self.nodes & 1023 == 0 and time.monotonic() > self.deadline):
            self.exhausted = True
            return
        inc = self.propagate(inc, exc)
        if inc is None:
            return
        size = inc.bit_count()
        if size + self.lower_bound(inc, exc) >= self.best:
            return
        closed, req = self.closed, self.req
        undecided = self.full & ~inc & ~exc
        pick = -1
        pick_slack = None
        for v in range(self.G.n):
            have = (closed[v] & inc).bit_count()
            if have >= req:
                continue
            slack = (closed[v] & undecided).bit_count() - (req - have)
            if pick_slack is None or slack < pick_slack:
                pick, pick_slack = v, slack
        if pick < 0:
            bad = kernels.find_violation(self.G, inc, self.code)
            if bad is None:
                self.best = size
                self.best_set = inc
                return
            cand = self.region(*bad) & undecided
            if not cand:
                return
            branch = (cand & -cand).bit_length() - 1
        else:
            cand = closed[pick] & undecided
            branch = (cand & -cand).bit_length() - 1
        bit = 1 << branch
        self.run(inc | bit, exc)
        self.run(inc, exc | bit)


def _solve_subproblem(args):
    G, variant, config, best, best_set, inc, exc = args
    search = _Search(G, variant, config, best, best_set)
    search.run(inc, exc)
    return search.best, search.best_set, search.nodes, search.exhausted


def exact_min(G: Graph, variant: Variant = Variant.ERR_LD, config: SearchConfig | None = None,
              *, force: DetectorSet | None = None) -> SolveResult:
    """Minimum-cardinality set of ``variant`` on ``G``.

    ``force`` pins vertices into the set; callers must only pass vertices that
    every valid set contains (e.g. closed neighbourhoods of degree-2 vertices
    for ERR:LD), otherwise the optimum is only over supersets of ``force``.
    """
    variant = Variant(variant)
    config = config or SearchConfig()
    _require_existence(G, variant)
    start = force.mask if force is not None else 0
    seed = greedy_upper(G, variant)
    if force is not None and not (seed.mask & start) == start:
        seed = DetectorSet(G.n, seed.mask | start)
    best, best_set = len(seed), seed.mask
    if config.parallel_width <= 1:
        search = _Search(G, variant, config, best, best_set)
        search.run(start, 0)
        best, best_set, nodes, exhausted = search.best, search.best_set, search.nodes, search.exhausted
    else:
        best, best_set, nodes, exhausted = _parallel(G, variant, config, best, best_set, start)
    witness = DetectorSet(G.n, best_set)
    assert is_valid(G, witness, variant)
    log.debug("exact_min %s n=%d -> %d (%d nodes)", variant.name, G.n, best, nodes)
    return SolveResult(variant, best, witness, nodes, not exhausted)


def _parallel(G, variant, config, best, best_set, start):
    # fan out over include/exclude patterns of the lowest undecided vertices
    depth = max(1, int(math.log2(config.parallel_width)) + 1)
    free = [v for v in range(G.n) if not start >> v & 1][:depth]
    jobs = []
    for pattern in range(1 << len(free)):
        inc, exc = start, 0
        for i, v in enumerate(free):
            if pattern >> i & 1:
                inc |= 1 << v
            else:
                exc |= 1 << v
        jobs.append((G, variant, config, best, best_set, inc, exc))
    nodes, exhausted = 0, False
    with ProcessPoolExecutor(max_workers=config.parallel_width) as pool:
        for b, bs, k, ex in pool.map(_solve_subproblem, jobs):
            nodes += k
            exhausted |= ex
            if b < best or (b == best and bs < best_set):
                best, best_set = b, bs
    return best, best_set, nodes, exhausted


def greedy_upper(G: Graph, variant: Variant = Variant.ERR_LD) -> DetectorSet:
    """Add the vertex that most reduces the outstanding deficit until valid, then prune."""
    variant = Variant(variant)
    _require_existence(G, variant)
    code = int(variant)
    s = 0
    while kernels.find_violation(G, s, code) is not None:
        current = kernels.deficit_score(G, s, code)
        best_v, best_score = -1, current
        for v in range(G.n):
            if s >> v & 1:
                continue
            score = kernels.deficit_score(G, s | (1 << v), code)
            if score < best_score:
                best_v, best_score = v, score
        if best_v < 0:
            # no single addition helps; grow around the first witness
            u, w = kernels.find_violation(G, s, code)
            region = G.closed_masks[u] | (G.closed_masks[w] if w >= 0 else 0)
            region &= ~s
            if not region:
                region = G.full_mask & ~s
            best_v = (region & -region).bit_length() - 1
        s |= 1 << best_v
    for v in range(G.n - 1, -1, -1):
        if s >> v & 1 and kernels.find_violation(G, s & ~(1 << v), code) is None:
            s &= ~(1 << v)
    return DetectorSet(G.n, s)


def brute_force_min(G: Graph, variant: Variant = Variant.ERR_LD) -> int | None:
    """Smallest valid set size by scanning all ``2^n`` subsets in size order."""
    import itertools

    code = int(variant)
    for k in range(G.n + 1):
        for combo in itertools.combinations(range(G.n), k):
            s = 0
            for v in combo:
                s |= 1 << v
            if kernels.find_violation(G, s, code) is None:
                return k
    return None


# --- distance-5 packings ------------------------------------------------------


def _check_cubic_twin_free(G: Graph) -> None:
    if G.n == 0 or G.min_degree != 3 or G.max_degree != 3:
        raise GraphError("graph is not cubic")
    twins = find_twins(G)
    if twins:
        raise GraphError(f"graph has twins, e.g. {twins[0]}")


def packing_complement(G: Graph, P) -> DetectorSet:
    """``V - P`` for a vertex set ``P`` whose members are pairwise >= 5 apart."""
    _check_cubic_twin_free(G)
    members = sorted(set(int(p) for p in P))
    for i, x in enumerate(members):
        G._check(x)
        dist = bfs_distances(G, x)
        for y in members[i + 1:]:
            d = dist[y]
            if d is not None and d < 5:
                raise GraphError(f"packing vertices {x} and {y} are at distance {d} < 5")
    mask = G.full_mask
    for x in members:
        mask &= ~(1 << x)
    S = DetectorSet(G.n, mask)
    if not is_valid(G, S, Variant.ERR_LD):
        raise AssertionError("complement of a distance-5 packing failed ERR:LD verification")
    return S


def greedy_distance5_packing(G: Graph, order=None) -> list[int]:
    """Maximal set with pairwise distance >= 5, scanning vertices in ``order`` (index order by default)."""
    order = range(G.n) if order is None else list(order)
    if sorted(order) != list(range(G.n)):
        raise GraphError("scan order must be a permutation of the vertices")
    blocked = 0
    chosen = []
    for v in order:
        if blocked >> v & 1:
            continue
        chosen.append(v)
        for u, d in enumerate(bfs_distances(G, v)):
            if d is not None and d < 5:
                blocked |= 1 << u
    return sorted(chosen)
