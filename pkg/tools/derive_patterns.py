"""Regenerate the shipped lattice patterns by exhaustive cell search.

    python tools/derive_patterns.py
"""

from pathlib import Path

from faultdom.grids import LADDER_PATTERN, certify_pattern, search_min_pattern

OUT = Path(__file__).resolve().parents[1] / "src" / "faultdom" / "data" / "patterns"

SEARCHES = {
    "sq": ("SQ", (3, 6)),
    "hex": ("HEX", (4, 4)),
    "tri": ("TRI", (4, 4)),
    "king": ("KING", (4, 4)),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (lattice, cell) in SEARCHES.items():
        P = search_min_pattern(lattice, cell)
        cert = certify_pattern(P)
        assert cert.ok
        header = f"# minimum-density ERR:LD pattern over cells up to {cell[0]}x{cell[1]}; density {P.density}\n"
        (OUT / f"{name}.pat").write_text(header + P.to_text())
        print(name, P.density, cert.window_dims)
    cert = certify_pattern(LADDER_PATTERN)
    assert cert.ok
    (OUT / "ladder.pat").write_text("# x_i for all i, y_i for i mod 3 != 0; density 5/6\n" + LADDER_PATTERN.to_text())
    print("ladder", LADDER_PATTERN.density, cert.window_dims)


if __name__ == "__main__":
    main()
