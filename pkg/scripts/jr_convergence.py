"""House trajectories and the shifted-generator JR upper estimate as N grows."""
from __future__ import annotations

import argparse
from pathlib import Path

from mpmath import mp

from towerlab.jr import house_trajectory, jr_upper_estimate
from towerlab.numeric import hi, lo, precision
from towerlab.tower import Pair


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--dps", type=int, default=40)
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for pair in (Pair(4, 3), Pair(2, 0), Pair(2, 1), Pair(3, 0)):
        tr = house_trajectory(pair, args.max_n, args.dps)
        path = out / f"houses_{pair.nu}_{pair.x0}.csv"
        path.write_text(tr.to_csv())
        print(f"{pair} {tr.status.value}: monotone={tr.monotone} contraction={tr.contraction} -> {path}")

    pair = Pair(4, 3)
    rep = jr_upper_estimate(pair, args.max_n, args.dps)
    with precision(args.dps):
        limit = lo(rep.limit)
        print(f"limit s + alpha = {mp.nstr(limit, 15)}")
        for n in range(1, args.max_n + 1):
            up = jr_upper_estimate(pair, n, args.dps).jr_upper if n < args.max_n else rep.jr_upper
            print(f"N={n:2d} jr_upper={mp.nstr(hi(up), 15)} gap={mp.nstr(hi(up) - limit, 5)}")


if __name__ == "__main__":
    main()
