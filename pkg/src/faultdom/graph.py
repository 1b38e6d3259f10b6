"""Immutable simple undirected graphs, named families and lattice tori.

Vertices are dense integers ``0..n-1``.  Neighbourhoods are kept both as sorted
tuples and as Python ``int`` bitmasks (bit ``u`` set means ``u`` is adjacent),
which is what the checking kernels consume.

Lattice tori use row/column coordinates ``(r, c)`` mapped to ``r * cols + c``:

* ``SQ``     4-neighbour grid.
* ``KING``   8-neighbour grid.
* ``TRI``    ``SQ`` plus the diagonal ``(r, c) -- (r+1, c+1)``.
* ``HEX``    brick-wall embedding: all horizontal edges, and the vertical edge
  ``(r, c) -- (r+1, c)`` only when ``r + c`` is even.  Every vertex then has
  exactly one vertical edge, so the hexagonal lattice is a sublattice of ``SQ``.
  Translations preserve it only when ``dr + dc`` is even, which is why both
  torus dimensions must be even.
* ``LADDER`` ``C_cols x P_2``: two rows, wrap-around only along columns.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

MAX_VERTICES = 100_000


class GraphError(ValueError):
    """Raised for malformed graph input or invalid family parameters."""


class LatticeKind(enum.Enum):
    SQ = "SQ"
    TRI = "TRI"
    HEX = "HEX"
    KING = "KING"
    LADDER = "LADDER"

    @property
    def degree(self) -> int:
        return _LATTICE_DEGREE[self]

    @classmethod
    def parse(cls, text: str) -> "LatticeKind":
        key = text.strip().upper()
        if key == "K":
            key = "KING"
        try:
            return cls(key)
        except ValueError:
            raise GraphError(f"unknown lattice {text!r}") from None


_LATTICE_DEGREE = {
    LatticeKind.SQ: 4,
    LatticeKind.TRI: 6,
    LatticeKind.HEX: 3,
    LatticeKind.KING: 8,
    LatticeKind.LADDER: 3,
}


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.labels is not None:
            index = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_index", index)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __len__(self):
        return self.n

    def __getstate__(self):
        # the kernel handle is process-local; workers rebuild it on first use
        state = dict(self.__dict__)
        state.pop("_kernel_handle", None)
        return state

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open-neighbourhood bitmasks."""
        out = []
        for nbrs in self.adjacency:
            m = 0
            for u in nbrs:
                m |= 1 << u
            out.append(m)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.masks))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def close_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``u < v`` at distance 1 or 2."""
        closed = self.closed_masks
        return tuple((u, v) for u in range(self.n) for v in range(u + 1, self.n)
                     if closed[u] & closed[v])

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adjacency[v])

    @property
    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def label(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        return self.labels[v]

    def index_of(self, label: str) -> int:
        if self._index is None or label not in self._index:
            raise KeyError(label)
        return self._index[label]

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range [0, {self.n})")

    @cached_property
    def _kernel_handle(self):
        from . import kernels

        return kernels.prepare(self)


def build_graph(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    if n > MAX_VERTICES:
        raise GraphError(f"graphs are capped at {MAX_VERTICES} vertices")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop ({u}, {v})")
        if v in adj[u]:
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u].add(v)
        adj[v].add(u)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise GraphError("labels must be distinct and one per vertex")
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), labels)


def closed_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return frozenset(G.neighbors(v)) | {v}


def open_neighborhood(G: Graph, v: int) -> frozenset[int]:
    return frozenset(G.neighbors(v))


def find_twins(G: Graph) -> list[tuple[int, int]]:
    """All pairs ``u < v`` with ``N(u) == N(v)`` or ``N[u] == N[v]``."""
    groups: dict[int, list[int]] = {}
    for v, m in enumerate(G.masks):
        groups.setdefault(m, []).append(v)
    for v, m in enumerate(G.closed_masks):
        groups.setdefault(~m, []).append(v)  # closed keys kept disjoint via sign
    pairs = set()
    for members in groups.values():
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                pairs.add((min(u, v), max(u, v)))
    return sorted(pairs)


def is_twin_free(G: Graph) -> bool:
    return not find_twins(G)


def bfs_distances(G: Graph, source: int) -> list[int | None]:
    G._check(source)
    dist: list[int | None] = [None] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(G: Graph, u: int, v: int) -> int | None:
    """Hop distance, or ``None`` when ``v`` is unreachable from ``u``."""
    G._check(v)
    return bfs_distances(G, u)[v]


def ball_mask(G: Graph, v: int, radius: int) -> int:
    mask = 1 << v
    frontier = mask
    for _ in range(radius):
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= G.masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~mask
        mask |= nxt
    return mask


def girth(G: Graph) -> int | None:
    best = None
    for s in range(G.n):
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


# --- named families -------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return build_graph(10, edges, [f"v{i + 1}" for i in range(10)])


def complete(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def ladder_segment(length: int) -> Graph:
    """``P_length x P_2`` with rows labelled ``x_i`` (top) and ``y_i`` (bottom)."""
    if length < 1:
        raise GraphError(f"ladder segment needs length >= 1, got {length}")
    edges = [(i, i + length) for i in range(length)]
    edges += [(i, i + 1) for i in range(length - 1)]
    edges += [(length + i, length + i + 1) for i in range(length - 1)]
    labels = [f"x_{i}" for i in range(length)] + [f"y_{i}" for i in range(length)]
    return build_graph(2 * length, edges, labels)


def tree3_ball(radius: int) -> Graph:
    """Ball of the given radius in the infinite 3-regular tree, BFS-numbered."""
    if radius < 0:
        raise GraphError(f"radius must be >= 0, got {radius}")
    edges = []
    depth = [0]
    frontier = [0]
    n = 1
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for _ in range(3 if v == 0 else 2):
                edges.append((v, n))
                depth.append(d)
                nxt.append(n)
                n += 1
        frontier = nxt
    return build_graph(n, edges, [f"t{d}_{i}" for i, d in enumerate(depth)])


def tree_depths(G: Graph, root: int = 0) -> list[int]:
    return [d for d in bfs_distances(G, root)]


FAMILIES = {
    "cycle": cycle,
    "path": path,
    "petersen": petersen,
    "complete": complete,
    "ladder_segment": ladder_segment,
    "tree3_ball": tree3_ball,
}


def make_family(name: str, *params: int) -> Graph:
    try:
        factory = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return factory(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {name}: {exc}") from None


# --- lattice tori -----------------------------------------------------------


def lattice_offsets(kind: LatticeKind, r: int, c: int) -> list[tuple[int, int]]:
    """Neighbour offsets of lattice vertex ``(r, c)`` on the infinite lattice."""
    if kind is LatticeKind.SQ:
        return [(-1, 0), (1, 0), (0, -1), (0, 1)]
    if kind is LatticeKind.KING:
        return [(dr, dc) for dr in (-1, 0, 1) for dc in (-1, 0, 1) if dr or dc]
    if kind is LatticeKind.TRI:
        return [(-1, 0), (1, 0), (0, -1), (0, 1), (1, 1), (-1, -1)]
    if kind is LatticeKind.HEX:
        return [(0, -1), (0, 1), (1, 0) if (r + c) % 2 == 0 else (-1, 0)]
    if kind is LatticeKind.LADDER:
        return [(0, -1), (0, 1), (1 - 2 * r, 0)]
    raise GraphError(f"unsupported lattice {kind}")


def check_torus_dims(kind: LatticeKind, rows: int, cols: int) -> None:
    if kind is LatticeKind.LADDER:
        if rows != 2:
            raise GraphError("LADDER tori have exactly 2 rows")
        if cols < 6:
            raise GraphError(f"LADDER needs cols >= 6, got {cols}")
        return
    if rows < 5 or cols < 5:
        raise GraphError(f"torus dimensions must be >= 5, got {rows}x{cols}")
    if kind is LatticeKind.HEX and (rows % 2 or cols % 2):
        raise GraphError(f"HEX tori need even dimensions, got {rows}x{cols}")


def make_torus(kind: LatticeKind | str, rows: int, cols: int) -> Graph:
    if isinstance(kind, str):
        kind = LatticeKind.parse(kind)
    check_torus_dims(kind, rows, cols)
    edges = set()
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            for dr, dc in lattice_offsets(kind, r, c):
                rr = r + dr
                if kind is LatticeKind.LADDER:
                    if not 0 <= rr < 2:
                        continue
                else:
                    rr %= rows
                v = rr * cols + (c + dc) % cols
                edges.add((min(u, v), max(u, v)))
    labels = [f"({r},{c})" for r in range(rows) for c in range(cols)]
    return build_graph(rows * cols, sorted(edges), labels)


# --- serialization -----------------------------------------------------------


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Graph:
    lines = [s for s in (_strip_comment(x) for x in text.splitlines()) if s]
    if not lines:
        raise GraphError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"edge-list header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
        edges = []
        for line in lines[1:]:
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"edge line must be 'u v', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges but {len(edges)} were listed")
    return build_graph(n, edges)


def format_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def format_labels(G: Graph) -> str:
    return "".join(f"{v} {G.label(v)}\n" for v in range(G.n))


def to_dot(G: Graph, S: Iterable[int] | None = None, name: str = "G") -> str:
    """DOT text; detectors are drawn filled, other vertices unfilled."""
    members = set(S) if S is not None else set()
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(G.n):
        style = 'style=filled, fillcolor="gray"' if v in members else "style=solid"
        out.append(f'  {v} [label="{G.label(v)}", {style}];')
    for u, v in G.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*\[(.*)\];")


def parse_dot(text: str) -> tuple[Graph, set[int]]:
    """Read back the subset of DOT that :func:`to_dot` emits."""
    nodes, filled, edges = [], set(), []
    for line in text.splitlines():
        if m := _DOT_EDGE.match(line):
            edges.append((int(m.group(1)), int(m.group(2))))
        elif m := _DOT_NODE.match(line):
            v = int(m.group(1))
            nodes.append(v)
            if "filled" in m.group(2):
                filled.add(v)
    return build_graph(len(nodes), edges), filled
