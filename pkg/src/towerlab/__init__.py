"""Exact computation in the iterated square-root towers ``K^(nu,x0)``."""
from __future__ import annotations

from .exact import UPoly, isqrt, rat_is_square, square_free_part, sturm_count
from .tower import Pair, Tower, TowerElem, is_square_in_tower, norm_down, norm_to_base, u_seq

__all__ = [
    "Pair",
    "Tower",
    "TowerElem",
    "UPoly",
    "is_square_in_tower",
    "isqrt",
    "norm_down",
    "norm_to_base",
    "rat_is_square",
    "square_free_part",
    "sturm_count",
    "u_seq",
]
