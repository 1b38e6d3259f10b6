"""Condition-by-condition checks for LD, RED:LD, DET:LD and ERR:LD sets.

Every variant is a domination requirement plus pairwise distinguishing
requirements that depend on which endpoints are detectors.  With ``S`` the
detector set and ``A = N(u) & S``, ``B = N(v) & S``:

========  ======================  ===========================  ====================  ===============================
variant   (i) domination          detector pair                mixed pair (u in S)   non-detector pair
========  ======================  ===========================  ====================  ===============================
LD        ``|N(v)&S| >= 1``, v∉S  --                           --                    ``|A^B| >= 1``  (ii)
RED_LD    ``|N[v]&S| >= 2``       --                           ``|A^B - u| >= 1`` (ii)  ``|A^B| >= 2``  (iii)
DET_LD    ``|N[v]&S| >= 2``       ``|A^B| >= 1`` (ii)          ``|B-A|>=2 or |A-B|>=1`` (iii)  ``|A-B|>=2 or |B-A|>=2`` (iv)
ERR_LD    ``|N[v]&S| >= 3``       ``|A^B - {u,v}| >= 1`` (ii)  ``|A^B - u| >= 2`` (iii)  ``|A^B| >= 3``  (iv)
========  ======================  ===========================  ====================  ===============================

Pairs at distance three or more share no neighbours, so once every vertex
meets (i) they satisfy all pair conditions automatically.  :func:`verify`
therefore only enumerates pairs at distance <= 2 plus pairs touching a vertex
that fails (i); ``exhaustive=True`` scans every pair instead.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

from . import _pycore, kernels
from .graph import Graph, GraphError


class Variant(enum.IntEnum):
    LD = 0
    RED_LD = 1
    DET_LD = 2
    ERR_LD = 3

    @classmethod
    def parse(cls, text: str) -> "Variant":
        key = text.strip().upper().replace(":", "_").replace("-", "_")
        aliases = {"LD": "LD", "RED": "RED_LD", "DET": "DET_LD", "ERR": "ERR_LD"}
        key = aliases.get(key, key)
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown variant {text!r}") from None

    @property
    def domination(self) -> int:
        return (1, 2, 2, 3)[self]


ROMAN = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class DetectorSet:
    """A set of detector vertices over a graph with ``n`` vertices."""

    n: int
    mask: int

    @classmethod
    def of(cls, G: Graph, members: "Iterable[int] | DetectorSet | str | int") -> "DetectorSet":
        """Coerce members: an iterable of vertices, ``"*"`` for all, or an ``int`` bitmask."""
        if isinstance(members, int):
            if members < 0 or members >> G.n:
                raise GraphError(f"bitmask {members:#x} has bits outside [0, {G.n})")
            return cls(G.n, members)
        if isinstance(members, DetectorSet):
            if members.n != G.n:
                raise GraphError(f"detector set is over {members.n} vertices, graph has {G.n}")
            return members
        if isinstance(members, str):
            if members.strip() != "*":
                raise GraphError(f"unrecognised detector-set shorthand {members!r}")
            return cls(G.n, G.full_mask)
        mask = 0
        for v in members:
            v = int(v)
            if not 0 <= v < G.n:
                raise GraphError(f"detector {v} out of range [0, {G.n})")
            mask |= 1 << v
        return cls(G.n, mask)

    @classmethod
    def full(cls, G: Graph) -> "DetectorSet":
        return cls(G.n, G.full_mask)

    def __contains__(self, v) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)

    def __iter__(self):
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    @property
    def size(self) -> int:
        return len(self)

    def add(self, v: int) -> "DetectorSet":
        return DetectorSet(self.n, self.mask | (1 << v))

    def remove(self, v: int) -> "DetectorSet":
        return DetectorSet(self.n, self.mask & ~(1 << v))

    def to_text(self) -> str:
        return " ".join(str(v) for v in self) + "\n"


def _mask(G: Graph, S) -> int:
    return DetectorSet.of(G, S).mask


@dataclass(frozen=True, order=True)
class Violation:
    prop: int  # 0..3 for i..iv
    witnesses: tuple[int, ...]
    deficit: int
    variant: Variant = field(compare=False)

    @property
    def property(self) -> str:
        return ROMAN[self.prop]

    def line(self) -> str:
        w = " ".join(str(x) for x in self.witnesses)
        return f"VIOLATION {self.variant.name} {self.property} {w} {self.deficit}"


@dataclass(frozen=True)
class Verdict:
    variant: Variant
    violations: tuple[Violation, ...]
    total: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def report(self) -> str:
        if self.ok:
            return "OK\n"
        return "".join(v.line() + "\n" for v in self.violations)


def domination_count(G: Graph, S, v: int) -> int:
    G._check(v)
    return (G.closed_masks[v] & _mask(G, S)).bit_count()


def distinguishing_count(G: Graph, S, u: int, v: int) -> int:
    """``|((N(u) & S) ^ (N(v) & S)) - {u, v}|``."""
    G._check(u)
    G._check(v)
    if u == v:
        raise GraphError("distinguishing_count needs two distinct vertices")
    s = _mask(G, S)
    x = (G.masks[u] & s) ^ (G.masks[v] & s)
    return (x & ~((1 << u) | (1 << v))).bit_count()


def _pair_prop(variant: Variant, su: int, sv: int) -> int:
    if variant is Variant.LD:
        return 1
    if variant is Variant.RED_LD:
        return 1 if su != sv else 2
    if su and sv:
        return 1
    return 2 if su != sv else 3


def verify(G: Graph, S, variant: Variant = Variant.ERR_LD, *, cap: int | None = 100,
           exhaustive: bool = False) -> Verdict:
    """Check every numbered condition for ``variant`` and list all violations."""
    variant = Variant(variant)
    s = _mask(G, S)
    masks, closed = G.masks, G.closed_masks
    found: list[Violation] = []
    failing = []
    for v in range(G.n):
        d = _pycore.dom_deficit(variant, s >> v & 1, (closed[v] & s).bit_count(),
                                (masks[v] & s).bit_count())
        if d:
            failing.append(v)
            found.append(Violation(0, (v,), d, variant))
    if exhaustive:
        pairs = ((u, v) for u in range(G.n) for v in range(u + 1, G.n))
    else:
        extra = {(min(a, b), max(a, b)) for a in failing for b in range(G.n) if a != b}
        pairs = sorted(set(G.close_pairs) | extra)
    for u, v in pairs:
        su, sv = s >> u & 1, s >> v & 1
        d = _pycore.pair_deficit(variant, u, v, su, sv, masks[u] & s, masks[v] & s)
        if d:
            found.append(Violation(_pair_prop(variant, su, sv), (u, v), d, variant))
    found.sort()
    shown = tuple(found if cap is None else found[:cap])
    return Verdict(variant, shown, len(found))


def is_valid(G: Graph, S, variant: Variant = Variant.ERR_LD) -> bool:
    """Fast boolean form of :func:`verify` through the compiled kernel."""
    return kernels.find_violation(G, _mask(G, S), int(variant)) is None


def verify_unified(G: Graph, S) -> bool:
    """ERR:LD check in the two-condition form.

    (i) every vertex is 3-dominated, and (ii) every pair is
    ``(3 - |{u, v} & S|)``-distinguished.  Kept as an independent path to
    cross-check the four-case form; scans all pairs.
    """
    s = _mask(G, S)
    if any((c & s).bit_count() < 3 for c in G.closed_masks):
        return False
    for u in range(G.n):
        for v in range(u + 1, G.n):
            inside = (s >> u & 1) + (s >> v & 1)
            if distinguishing_count(G, DetectorSet(G.n, s), u, v) < 3 - inside:
                return False
    return True


def exists(G: Graph, variant: Variant = Variant.ERR_LD) -> bool:
    """Whether any set of the variant exists, i.e. whether ``S = V`` works."""
    return is_valid(G, DetectorSet.full(G), variant)


def errld_exists(G: Graph) -> bool:
    """An ERR:LD set exists iff the minimum degree is >= 2 and there are no twins."""
    from .graph import find_twins

    return G.n > 0 and G.min_degree >= 2 and not find_twins(G)


NONE = None


def expected_transmissions(G: Graph, S, p: int | None) -> dict[int, int]:
    """Fault-free symbol of every detector: 2 at the intruder, 1 next to it, else 0."""
    s = DetectorSet.of(G, S)
    if p is None:
        return {w: 0 for w in s}
    G._check(p)
    near = G.masks[p]
    return {w: 2 if w == p else (1 if near >> w & 1 else 0) for w in s}


def code_min_distance(G: Graph, S) -> float:
    """Minimum Hamming distance among the expected transmission vectors.

    One codeword per intruder position plus the no-intruder word.  With an
    empty detector set all words are empty and coincide, giving 0; a graph
    without vertices has a single word and returns ``math.inf``.
    """
    s = _mask(G, S)
    if G.n == 0:
        return math.inf
    return kernels.code_distance(G, s)


def code_min_distance_bruteforce(G: Graph, S) -> float:
    s = DetectorSet.of(G, S)
    words = [expected_transmissions(G, s, p) for p in [None, *range(G.n)]]
    best = math.inf
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            best = min(best, sum(a[w] != b[w] for w in a))
    return best


# --- detector-set files -------------------------------------------------------


def parse_detector_set(text: str, G: Graph) -> DetectorSet:
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body == "*":
        return DetectorSet.full(G)
    try:
        members = [int(tok) for tok in body.split()]
    except ValueError as exc:
        raise GraphError(f"bad detector-set token: {exc}") from None
    return DetectorSet.of(G, members)
