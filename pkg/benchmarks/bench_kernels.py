"""Compare the compiled and pure-Python checking kernels.

Times ``find_violation`` (ERR:LD, valid and invalid sets), ``deficit_score``
and ``code_distance`` on lattice tori of growing size, checks both backends
agree, and prints one row per workload.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from faultdom import _pycore
from faultdom.grids import instantiate, load_shipped_pattern
from faultdom.kernels import prepare

try:
    from faultdom import _ccore
except ImportError:  # extension not built
    _ccore = None

ERR = 3


def workloads(rng: random.Random):
    for name, dims in (("sq", (6, 6)), ("sq", (12, 12)), ("sq", (24, 24)), ("king", (16, 16))):
        P = load_shipped_pattern(name)
        G, S = instantiate(P, dims)
        noisy = S.mask ^ (1 << rng.randrange(G.n))
        yield f"{name} {dims[0]}x{dims[1]} n={G.n}", G, S.mask, noisy


def bench(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat)) * 1e3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ccore is None:
        print("compiled backend not built; only the Python backend is available")
        return 1
    rng = random.Random(7)
    header = f"{'workload':<28}{'kernel':<22}{'python ms':>11}{'cython ms':>11}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, G, valid, noisy in workloads(rng):
        hp, hc = prepare(G, _pycore), prepare(G, _ccore)
        cases = [
            ("find_violation valid", lambda h, m: m.find_violation(h, valid, ERR)),
            ("find_violation noisy", lambda h, m: m.find_violation(h, noisy, ERR)),
            ("deficit_score", lambda h, m: m.deficit_score(h, noisy, ERR)),
            ("code_distance", lambda h, m: m.code_distance(h, valid)),
        ]
        for kernel, call in cases:
            if kernel == "code_distance" and G.n > 300:
                continue
            rp, rc = call(hp, _pycore), call(hc, _ccore)
            if rp != rc:
                raise SystemExit(f"backends disagree on {label} {kernel}: {rp} != {rc}")
            tp = bench(lambda: call(hp, _pycore), args.repeat)
            tc = bench(lambda: call(hc, _ccore), args.repeat)
            print(f"{label:<28}{kernel:<22}{tp:>11.3f}{tc:>11.3f}{tp / max(tc, 1e-9):>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
