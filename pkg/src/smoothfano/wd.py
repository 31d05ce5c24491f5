"""The finite candidate set of vertices for special embeddings."""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .lattice import Point, is_primitive
from .order import PointSet, point_key


def coordinate_bounds(d: int, a: int) -> tuple:
    """Allowed range of each coordinate of a point with coordinate sum ``a``."""
    if a == 1:
        return 0, 1
    if a == 0:
        return -1, d - 1
    return a, d + a


def _compositions(d: int, total: int, lo: int, hi: int) -> Iterator[tuple]:
    # d-tuples in [lo, hi]^d summing to ``total``, pruned on the partial sum.
    if d == 1:
        if lo <= total <= hi:
            yield (total,)
        return
    for first in range(max(lo, total - (d - 1) * hi), min(hi, total - (d - 1) * lo) + 1):
        for rest in _compositions(d - 1, total - first, lo, hi):
            yield (first,) + rest


@lru_cache(maxsize=None)
def generate_wd(d: int) -> PointSet:
    if d < 1:
        raise ValueError("dimension must be positive")
    points = []
    for a in range(-d, 2):
        lo, hi = coordinate_bounds(d, a)
        for p in _compositions(d, a, lo, hi):
            if any(p) and is_primitive(p):
                points.append(p)
    return tuple(sorted(points, key=point_key))


def generate_wd_bruteforce(d: int) -> PointSet:
    """Same set, by filtering the whole box [-d, max(1, d-1)]^d; for
    testing."""
    out = []
    for p in product(range(-d, max(1, d - 1) + 1), repeat=d):
        a = sum(p)
        if not -d <= a <= 1 or not any(p) or not is_primitive(p):
            continue
        lo, hi = coordinate_bounds(d, a)
        if all(lo <= c <= hi for c in p):
            out.append(p)
    return tuple(sorted(out, key=point_key))


def points_after(W: Sequence[Point], x: Sequence[int]) -> Iterator[Point]:
    keys = [point_key(w) for w in W]
    start = bisect_right(keys, point_key(x))
    return iter(W[start:])
