"""Regenerate the shipped graph6 corpora under src/faultdom/data/.

Run: python3 tools/derive_corpus.py
"""

from __future__ import annotations

from pathlib import Path

from faultdom.corpus import (CONNECTED_CUBIC_COUNTS, encode, generate_connected_cubic,
                             generate_cubic, generate_cubic_large, generate_small)

DATA = Path(__file__).resolve().parents[1] / "src" / "faultdom" / "data"


def main() -> int:
    levels = generate_connected_cubic(12)
    counts = {n: len(gs) for n, gs in levels.items()}
    if counts != CONNECTED_CUBIC_COUNTS:
        raise SystemExit(f"connected cubic counts {counts} differ from {CONNECTED_CUBIC_COUNTS}")
    corpora = {
        "small": generate_small(8),
        "cubic": generate_cubic(12),
        "cubic_large": generate_cubic_large(),
    }
    for name, graphs in corpora.items():
        (DATA / f"{name}.g6").write_text(encode(graphs))
        sizes = {}
        for g in graphs:
            sizes[g.number_of_nodes()] = sizes.get(g.number_of_nodes(), 0) + 1
        print(f"{name}: {len(graphs)} graphs, by order {dict(sorted(sizes.items()))}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
