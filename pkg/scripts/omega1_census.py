"""Enumerate the non-thin pairs with nu <= M and summarise their classification."""
from __future__ import annotations

import argparse
from collections import Counter

from towerlab.omega import enumerate_omega1, enumerate_sigma12
from towerlab.special import sqrt2_in_K


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-nu", type=int, default=20)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()

    rows = enumerate_omega1(args.max_nu, args.depth)
    print("nu  x0   a  class          sqrt2")
    for pair, cert, cls in rows:
        s2 = sqrt2_in_K(pair)
        print(f"{pair.nu:2d} {pair.x0:4d} {cert.a:3d}  {str(cls):14s} {s2.value}")
    print(Counter(cls.status.value for _, _, cls in rows))

    s = enumerate_sigma12(args.max_nu, args.depth)
    print(f"sigma1: {len(s.sigma1)} pairs, sigma2: {len(s.sigma2)} pairs, rejected: {len(s.rejected)}")


if __name__ == "__main__":
    main()
