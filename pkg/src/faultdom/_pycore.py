"""Pure-Python checking kernels over ``int`` bitmasks.

Same API as the compiled ``_ccore`` module; :mod:`faultdom.kernels` picks one.
Variant codes: 0 = LD, 1 = RED:LD, 2 = DET:LD, 3 = ERR:LD.
"""

from __future__ import annotations

BACKEND = "python"

_DOM_REQ = (1, 2, 2, 3)


class Handle:
    __slots__ = ("n", "masks", "closed", "pairs", "_diffs")

    def __init__(self, n, masks, closed, pairs):
        self.n = n
        self.masks = masks
        self.closed = closed
        self.pairs = pairs
        self._diffs = None

    @property
    def diffs(self):
        # coordinates where the expected vectors of p and q differ, q = n is "no intruder"
        if self._diffs is None:
            n, masks, closed = self.n, self.masks, self.closed
            out = []
            for p in range(n):
                out.append(closed[p])
                for q in range(p + 1, n):
                    out.append((masks[p] ^ masks[q]) | (1 << p) | (1 << q))
            self._diffs = out
        return self._diffs


def prepare(n, masks, closed, pairs):
    return Handle(n, tuple(masks), tuple(closed), list(pairs))


def dom_deficit(variant, inside, closed_count, open_count):
    if variant == 0:
        return 0 if inside else max(0, 1 - open_count)
    return max(0, _DOM_REQ[variant] - closed_count)


def pair_deficit(variant, u, v, su, sv, A, B):
    """Deficit of the pair condition for ``u, v`` (0 when satisfied).

    ``su``/``sv`` are membership flags, ``A``/``B`` are ``N(u) & S`` and ``N(v) & S``.
    """
    if su and not sv:
        pass
    elif sv and not su:
        u, v, su, sv, A, B = v, u, sv, su, B, A
    # from here on, if the pair is mixed then u is the detector
    if variant == 3:
        x = A ^ B
        if su and sv:
            return max(0, 1 - (x & ~((1 << u) | (1 << v))).bit_count())
        if su:
            return max(0, 2 - (x & ~(1 << u)).bit_count())
        return max(0, 3 - x.bit_count())
    if variant == 2:
        if su and sv:
            return max(0, 1 - (A ^ B).bit_count())
        if su:
            a = (B & ~A).bit_count()
            b = (A & ~B).bit_count()
            if a >= 2 or b >= 1:
                return 0
            return min(2 - a, 1 - b)
        a = (A & ~B).bit_count()
        b = (B & ~A).bit_count()
        if a >= 2 or b >= 2:
            return 0
        return min(2 - a, 2 - b)
    if variant == 1:
        if su and sv:
            return 0
        if su:
            return max(0, 1 - ((A ^ B) & ~(1 << u)).bit_count())
        return max(0, 2 - (A ^ B).bit_count())
    if su or sv:
        return 0
    return max(0, 1 - (A ^ B).bit_count())


def find_violation(h, s, variant):
    """First violated condition as ``(v, -1)`` or ``(u, v)``; ``None`` when valid."""
    masks, closed = h.masks, h.closed
    for v in range(h.n):
        inside = s >> v & 1
        if dom_deficit(variant, inside, (closed[v] & s).bit_count(), (masks[v] & s).bit_count()):
            return (v, -1)
    for u, v in h.pairs:
        if pair_deficit(variant, u, v, s >> u & 1, s >> v & 1, masks[u] & s, masks[v] & s):
            return (u, v)
    return None


def deficit_score(h, s, variant):
    """Total deficit over domination and close pairs; a greedy progress measure."""
    masks, closed = h.masks, h.closed
    total = 0
    for v in range(h.n):
        total += dom_deficit(variant, s >> v & 1, (closed[v] & s).bit_count(), (masks[v] & s).bit_count())
    for u, v in h.pairs:
        total += pair_deficit(variant, u, v, s >> u & 1, s >> v & 1, masks[u] & s, masks[v] & s)
    return total


def code_distance(h, s):
    best = None
    for d in h.diffs:
        k = (d & s).bit_count()
        if best is None or k < best:
            best = k
            if k == 0:
                break
    return best if best is not None else 0
