"""Write DOT files for the (4,3) and (2,1) subfield lattices and print the exact checks."""
from __future__ import annotations

import argparse
from pathlib import Path

from towerlab.lattice import build_lattice, to_dot, verify_21_lattice
from towerlab.tower import Pair


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--depth", type=int, default=4)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for pair, depth in ((Pair(4, 3), 3), (Pair(2, 1), args.depth)):
        g = build_lattice(pair, depth)
        path = out / f"lattice_{pair.nu}_{pair.x0}.dot"
        path.write_text(to_dot(g, f"K^({pair.nu},{pair.x0})"))
        print(f"{pair}: {len(g.nodes)} nodes, {len(g.edges)} edges -> {path}")

    rep = verify_21_lattice(args.depth)
    for c in rep.checks:
        print(f"  {'ok ' if c.passed else 'BAD'} {c.name} n={c.n} {c.detail}")
    print(f"subfield counts by degree: {rep.subfield_counts}")
    print("all checks passed" if rep.passed else "SOME CHECKS FAILED")


if __name__ == "__main__":
    main()
