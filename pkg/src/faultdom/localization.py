"""Intruder localization under at most one faulty detector.

Each detector ``w`` transmits 2 if the intruder is at ``w``, 1 if the intruder
is a neighbour, and 0 otherwise.  At most one detector may report a wrong
symbol (any wrong symbol).

Two decoders are provided:

* :func:`decode_consistency` — the reference oracle: every location whose
  expected vector lies within Hamming distance 1 of the observation;
* :func:`decode_elimination` — the pairwise elimination procedure driven by
  the ERR:LD conditions: split on how many detectors transmit 2, and for
  every pair of candidate locations use the distinguishing detectors the
  conditions guarantee to rule at least one of them out.

On a valid ERR:LD set both decoders return the true intruder status for every
legal scenario, which :func:`exhaustive_sweep` checks exhaustively.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graph import Graph, GraphError
from .verify import DetectorSet, Variant, Violation, expected_transmissions, verify

SYMBOLS = (0, 1, 2)


class LocalizationError(ValueError):
    pass


# --- transmissions and scenarios ------------------------------------------------


@dataclass(frozen=True)
class TransmissionVector:
    values: dict[int, int]

    def __post_init__(self):
        for w, sym in self.values.items():
            if sym not in SYMBOLS:
                raise LocalizationError(f"detector {w} transmits {sym!r}, expected 0, 1 or 2")

    def __getitem__(self, w: int) -> int:
        return self.values[w]

    def detectors(self) -> list[int]:
        return sorted(self.values)

    def to_text(self) -> str:
        return "".join(f"{w}:{self.values[w]}\n" for w in sorted(self.values))

    @classmethod
    def parse(cls, text: str) -> "TransmissionVector":
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                w, sym = line.split(":")
                w, sym = int(w), int(sym)
            except ValueError:
                raise LocalizationError(f"line {lineno}: expected 'detector:symbol', got {raw!r}") from None
            if w in values:
                raise LocalizationError(f"line {lineno}: detector {w} listed twice")
            values[w] = sym
        return cls(values)


@dataclass(frozen=True)
class Scenario:
    intruder: int | None = None
    fault: tuple[int, int] | None = None  # (detector, reported symbol)

    def describe(self) -> str:
        where = "none" if self.intruder is None else str(self.intruder)
        what = "none" if self.fault is None else f"{self.fault[0]}->{self.fault[1]}"
        return f"intruder={where} fault={what}"


def simulate(G: Graph, S, sc: Scenario) -> TransmissionVector:
    s = DetectorSet.of(G, S)
    if not len(s):
        raise LocalizationError("the detector set is empty")
    values = expected_transmissions(G, s, sc.intruder)
    if sc.fault is not None:
        w, sym = sc.fault
        if w not in values:
            raise LocalizationError(f"faulty vertex {w} is not a detector")
        if sym not in SYMBOLS:
            raise LocalizationError(f"reported symbol {sym!r} is not 0, 1 or 2")
        if values[w] == sym:
            raise LocalizationError(f"detector {w} reporting {sym} is not a fault")
        values[w] = sym
    return TransmissionVector(values)


def scenarios(G: Graph, S):
    """Every legal scenario: each intruder position (or none) with no fault or one wrong symbol."""
    s = DetectorSet.of(G, S)
    for p in [None, *range(G.n)]:
        expected = expected_transmissions(G, s, p)
        yield Scenario(p, None)
        for w in s:
            for sym in SYMBOLS:
                if sym != expected[w]:
                    yield Scenario(p, (w, sym))


# --- decoding ----------------------------------------------------------------


class Outcome(enum.Enum):
    NO_INTRUDER = "no-intruder"
    LOCATED = "located"
    AMBIGUOUS = "ambiguous"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class DecodeResult:
    outcome: Outcome
    location: int | None = None
    candidates: tuple = field(default=())

    @property
    def decided(self) -> bool:
        return self.outcome in (Outcome.NO_INTRUDER, Outcome.LOCATED)

    @property
    def intruder(self) -> int | None:
        if not self.decided:
            raise LocalizationError(f"decoding was {self.outcome.value}")
        return self.location

    def line(self) -> str:
        if self.outcome is Outcome.LOCATED:
            return f"LOCATED {self.location}"
        if self.outcome is Outcome.AMBIGUOUS:
            return "AMBIGUOUS " + " ".join("none" if c is None else str(c) for c in self.candidates)
        return self.outcome.name


def _check_domain(s: DetectorSet, o: TransmissionVector) -> None:
    if set(o.values) != set(s):
        raise LocalizationError("transmission vector must cover exactly the detector set")


def decode_consistency(G: Graph, S, o: TransmissionVector) -> DecodeResult:
    s = DetectorSet.of(G, S)
    _check_domain(s, o)
    cands = []
    for p in [None, *range(G.n)]:
        exp = expected_transmissions(G, s, p)
        if sum(exp[w] != o[w] for w in exp) <= 1:
            cands.append(p)
    if not cands:
        return DecodeResult(Outcome.INCONSISTENT)
    if len(cands) > 1:
        return DecodeResult(Outcome.AMBIGUOUS, None, tuple(cands))
    if cands[0] is None:
        return DecodeResult(Outcome.NO_INTRUDER, None, (None,))
    return DecodeResult(Outcome.LOCATED, cands[0], (cands[0],))


def in_model(G: Graph, S, o: TransmissionVector) -> bool:
    """True when ``o`` is explainable by at most one intruder and one faulty detector."""
    return decode_consistency(G, S, o).outcome is not Outcome.INCONSISTENT


class _Eliminator:
    """Pairwise elimination rules; each returns the vertex ruled out, or ``None``
    when a distinguishing detector the conditions promise is missing."""

    def __init__(self, G: Graph, s: int, o: TransmissionVector):
        self.G = G
        self.s = s
        self.o = o
        self.A = 0
        for w, sym in o.values.items():
            if sym == 1:
                self.A |= 1 << w

    def nbr(self, v):
        return self.G.masks[v]

    def closed(self, v):
        return self.G.closed_masks[v]

    def inS(self, v):
        return self.s >> v & 1

    def diff(self, p, q):
        return (self.nbr(p) & self.s) ^ (self.nbr(q) & self.s)

    @staticmethod
    def lowest(mask, k):
        out = []
        while mask and len(out) < k:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out if len(out) == k else None

    def has(self, mask, w):
        return mask >> w & 1

    # no detector transmits 2
    def zero(self, p, q):
        s, A = self.s, self.A
        if ((self.closed(p) & s) & ~A).bit_count() >= 2:
            return p
        if ((self.closed(q) & s) & ~A).bit_count() >= 2:
            return q
        if self.inS(p) and self.inS(q):
            W = self.lowest(self.diff(p, q) & ~(1 << p | 1 << q), 1)
            if W is None:
                return None
            w = W[0]
            if not self.has(self.nbr(p), w):
                p, q = q, p
            return q if self.has(A, w) else p
        if self.inS(p) or self.inS(q):
            if not self.inS(p):
                p, q = q, p
            W = self.lowest(self.diff(p, q) & ~(1 << p), 2)
            if W is None:
                return None
            Np, Nq = self.nbr(p), self.nbr(q)
            if any(self.has(Np, w) and not self.has(A, w) for w in W):
                return p
            if any(self.has(Nq, w) and self.has(A, w) for w in W):
                return p
            # both witnesses now agree with p and each contradicts q
            return q
        T = self.lowest(self.diff(p, q), 3)
        if T is None:
            return None
        if sum(self.has(self.nbr(p), w) for w in T) < sum(self.has(self.nbr(q), w) for w in T):
            p, q = q, p
        Np = self.nbr(p)
        Tp = [w for w in T if self.has(Np, w)]
        if sum(self.has(A, w) for w in Tp) >= 2:
            return q
        if len(Tp) == 3:
            return p
        x, y = Tp if not self.has(A, Tp[0]) else (Tp[1], Tp[0])
        z = next(w for w in T if w not in Tp)
        if not self.has(A, y):
            return p
        if self.has(A, z):
            return p
        return q

    # exactly one detector v transmits 2
    def one(self, v, p, q):
        s, A = self.s, self.A
        near = lambda a, b: self.has(self.closed(a) | self.closed(b), v)
        if self.inS(p) and self.inS(q):
            if not near(p, q):
                return p
            if p == v:
                return q
            if q == v:
                return p
            W = self.lowest(self.diff(p, q) & ~(1 << p | 1 << q), 1)
            if W is None:
                return None
            w = W[0]
            if not self.has(self.nbr(p), w):
                p, q = q, p
            return p if self.o[w] == 0 else q
        if self.inS(p) or self.inS(q):
            if not self.inS(p):
                p, q = q, p
            if not near(p, q):
                return p
            if p != v:
                return p
            W = self.lowest(self.diff(p, q) & ~(1 << p), 2)
            if W is None:
                return None
            Np = self.nbr(p)
            if any(self.has(Np, w) and self.has(A, w) for w in W):
                return q
            inside = [w for w in W if self.has(Np, w)]
            if len(inside) == 2:
                return p
            if len(inside) == 1:
                y = next(w for w in W if w not in inside)
                return p if self.has(A, y) else q
            hits = sum(self.has(A, w) for w in W)
            return p if hits == 2 else q
        T = self.lowest(self.diff(p, q), 3)
        if T is None:
            return None
        if sum(self.has(self.nbr(p), w) for w in T) < sum(self.has(self.nbr(q), w) for w in T):
            p, q = q, p
        Np, Nq = self.nbr(p), self.nbr(q)
        Tp = [w for w in T if self.has(Np, w)]
        if not near(p, q):
            if (Np & s) & ~A:
                return p
            if (Nq & s) & ~A:
                return q
            return q
        if self.has(Np, v):
            if any(not self.has(A, w) and w != v for w in Tp):
                return p
            return q
        if any(self.has(A, w) for w in Tp):
            return q
        return p


def decode_elimination(G: Graph, S, o: TransmissionVector) -> DecodeResult:
    s = DetectorSet.of(G, S)
    _check_domain(s, o)
    twos = [w for w in o.detectors() if o[w] == 2]
    A = [w for w in o.detectors() if o[w] == 1]
    el = _Eliminator(G, s.mask, o)
    if len(twos) > 2:
        return DecodeResult(Outcome.INCONSISTENT)
    if len(twos) == 2:
        u, v = twos
        W = el.lowest(el.diff(u, v) & ~(1 << u | 1 << v), 1)
        if W is None:
            return DecodeResult(Outcome.INCONSISTENT)
        w = W[0]
        at = u if el.has(G.masks[v], w) != el.has(el.A, w) else v
        return DecodeResult(Outcome.LOCATED, at, (at,))
    if len(twos) == 1:
        v = twos[0]
        if not A:
            return DecodeResult(Outcome.NO_INTRUDER, None, (None,))
        if len(A) == 1:
            if G.masks[v] >> A[0] & 1:
                return DecodeResult(Outcome.LOCATED, v, (v,))
            return DecodeResult(Outcome.INCONSISTENT)
        rule = lambda p, q: el.one(v, p, q)
    else:
        if len(A) <= 1:
            return DecodeResult(Outcome.NO_INTRUDER, None, (None,))
        rule = el.zero
    # ascending tournament: the current survivor meets each vertex in turn
    champion = 0
    for r in range(1, G.n):
        out = rule(champion, r)
        if out is None:
            return DecodeResult(Outcome.INCONSISTENT)
        if out == champion:
            champion = r
    return DecodeResult(Outcome.LOCATED, champion, (champion,))


# --- exhaustive checking ------------------------------------------------------


@dataclass
class SweepReport:
    scenarios: int = 0
    correct: int = 0
    disagreements: int = 0
    failures: list = field(default_factory=list)  # (scenario, consistency, elimination)

    def merge(self, other: "SweepReport") -> "SweepReport":
        return SweepReport(self.scenarios + other.scenarios, self.correct + other.correct,
                           self.disagreements + other.disagreements, self.failures + other.failures)

    @property
    def ok(self) -> bool:
        return self.correct == self.scenarios and self.disagreements == 0

    def line(self) -> str:
        return f"scenarios={self.scenarios} correct={self.correct} disagreements={self.disagreements}"


def _sweep_chunk(args) -> SweepReport:
    G, mask, intruders = args
    s = DetectorSet(G.n, mask)
    rep = SweepReport()
    for sc in scenarios(G, s):
        if sc.intruder not in intruders:
            continue
        o = simulate(G, s, sc)
        a = decode_consistency(G, s, o)
        b = decode_elimination(G, s, o)
        rep.scenarios += 1
        good_a = a.decided and a.location == sc.intruder
        good_b = b.decided and b.location == sc.intruder
        if good_a and good_b:
            rep.correct += 1
        if a != b:
            rep.disagreements += 1
        if not (good_a and good_b) or a != b:
            rep.failures.append((sc, a, b))
    return rep


def exhaustive_sweep(G: Graph, S, jobs: int = 1) -> SweepReport:
    """Run both decoders on every legal scenario; the set must be a valid ERR:LD set."""
    s = DetectorSet.of(G, S)
    verdict = verify(G, s, Variant.ERR_LD, cap=1)
    if not verdict.ok:
        raise LocalizationError("detector set is not ERR:LD: " + verdict.violations[0].line())
    positions = [None, *range(G.n)]
    if jobs <= 1:
        return _sweep_chunk((G, s.mask, frozenset(positions)))
    chunks = [frozenset(positions[i::jobs]) for i in range(jobs)]
    total = SweepReport()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for rep in pool.map(_sweep_chunk, [(G, s.mask, c) for c in chunks]):
            total = total.merge(rep)
    return total


# --- failure witnesses ----------------------------------------------------------


def _witness_pair(G: Graph, s: DetectorSet, a: int | None, b: int | None):
    ea = expected_transmissions(G, s, a)
    eb = expected_transmissions(G, s, b)
    diff = [w for w in sorted(ea) if ea[w] != eb[w]]
    if len(diff) > 2:
        return None
    if not diff:
        return Scenario(a, None), Scenario(b, None)
    if len(diff) == 1:
        return Scenario(a, None), Scenario(b, (diff[0], ea[diff[0]]))
    w1, w2 = diff
    return Scenario(a, (w1, eb[w1])), Scenario(b, (w2, ea[w2]))


def failure_witness(G: Graph, S, violation: Violation | None = None):
    """Two legal scenarios with different intruder status and identical transmissions.

    Built from an ERR:LD violation (the first one when none is given): a
    domination failure at ``v`` pairs "intruder at v" with "no intruder", a
    pair failure at ``(u, v)`` pairs the two intruder positions.  Returns
    ``None`` when the set is valid.
    """
    s = DetectorSet.of(G, S)
    if violation is None:
        verdict = verify(G, s, Variant.ERR_LD, cap=1)
        if verdict.ok:
            return None
        violation = verdict.violations[0]
    w = violation.witnesses
    a, b = (w[0], None) if len(w) == 1 else (w[0], w[1])
    pair = _witness_pair(G, s, a, b)
    if pair is None:
        raise GraphError(f"violation {violation.line()} does not bring the two codewords within distance 2")
    return pair
