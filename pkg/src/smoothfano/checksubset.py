"""Pruning of partial vertex sets and deduction of facets they force.

Given a sorted partial vertex set ``V`` (containing the standard basis) and
facets already known to belong to any special embedding having ``V`` as an
initial segment of its vertex set, :func:`check_subset` either proves that
no such embedding exists (raising :class:`Rejected`) or returns the enlarged
set of known facets.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence

from .lattice import Simplex, UnimodularityError, identity_simplex
from .order import PointSet, sort_points, vertex_sum


class Rejected(Exception):
    """The partial vertex set cannot start any special embedding."""

    def __init__(self, step: int, detail: str = ""):
        super().__init__(f"step {step}: {detail}" if detail else f"step {step}")
        self.step = step


class DeducedFacets:
    """Simplices keyed by their (unordered) vertex set."""

    def __init__(self, simplices: Iterable[Simplex] = ()):
        self._by_key: dict = {}
        for s in simplices:
            self.add(s)

    @classmethod
    def seed(cls, d: int) -> "DeducedFacets":
        return cls([identity_simplex(d)])

    def add(self, s: Simplex) -> bool:
        if s.key in self._by_key:
            return False
        self._by_key[s.key] = s
        return True

    def copy(self) -> "DeducedFacets":
        out = DeducedFacets()
        out._by_key = dict(self._by_key)
        return out

    def keys(self):
        return self._by_key.keys()

    def __contains__(self, item) -> bool:
        key = item.key if isinstance(item, Simplex) else frozenset(map(tuple, item))
        return key in self._by_key

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self._by_key.values())

    def __len__(self) -> int:
        return len(self._by_key)

    def __repr__(self) -> str:
        return f"DeducedFacets({len(self)} simplices)"


def lower_bound(height: int) -> int:
    """Least admissible coefficient of a vertex at the given height over a
    facet, in the facet's vertex basis."""
    if height == 1:
        return 0
    if height == 0:
        return -1
    return height


def _violation(F: Simplex, x: Sequence[int]) -> tuple | None:
    c = F.coords(x)
    h = sum(c)
    if h > 1:
        return 7, f"{x} beyond {F.vertices}"
    lb = lower_bound(h)
    if min(c) < lb:
        return 8, f"coefficient of {x} below {lb} over {F.vertices}"
    return None


def _generated(F: Simplex, x: Sequence[int]) -> list:
    c = F.coords(x)
    if sum(c) != 0:
        return []
    return [F.pivot(w, tuple(x)) for w, cw in enumerate(c) if cw == -1]


def check_subset(V: Iterable[Sequence[int]], F: DeducedFacets, *, literal: bool = False,
                 rng: random.Random | None = None) -> DeducedFacets:
    """Prune ``V`` or return the facets deduced from it, a superset of ``F``.

    Across the ridge of the standard simplex opposite ``e_i``, the least
    point of ``V`` with negative ``i``-th coordinate is the apex of the
    neighbouring facet. With ``literal`` that neighbour is only recorded when
    it is the newest point of ``V`` (the form used along the search, where
    older neighbours arrive through ``F``), and the closure rescans every
    (facet, point) pair after each deduction instead of using a work queue.
    ``rng`` randomises the processing order, which never changes the result.
    """
    V: PointSet = sort_points(V)
    d = len(V[0])
    I = identity_simplex(d)
    if I not in F:
        raise ValueError("the standard simplex must be among the known facets")

    nu = vertex_sum(V)
    s = sum(nu)
    if s < 0:
        raise Rejected(2, f"vertex sum {nu} has negative height")
    for i, a in enumerate(nu):
        if a > 1 + s:
            raise Rejected(3, f"coefficient {a} of vertex sum exceeds {1 + s}")

    out = F.copy()
    for i in range(d):
        negative = [v for v in V if v[i] < 0]
        if not negative:
            continue
        if literal:
            # only the newest point, as when called along the recursion
            if negative != [V[-1]]:
                continue
        # V is sorted, so negative[0] is the least point below this ridge
        apex = negative[0]
        try:
            out.add(I.pivot(i, apex))
        except UnimodularityError:
            raise Rejected(6, f"neighbour of the standard simplex through {apex}") from None

    if literal:
        return _close_literal(V, out, rng)
    return _close_queue(V, out, rng)


def _close_queue(V: PointSet, out: DeducedFacets, rng) -> DeducedFacets:
    pending = list(out)
    points = list(V)
    while pending:
        if rng is not None:
            k = rng.randrange(len(pending))
            pending[k], pending[-1] = pending[-1], pending[k]
            rng.shuffle(points)
        G = pending.pop()
        for x in points:
            bad = _violation(G, x)
            if bad:
                raise Rejected(*bad)
        for x in points:
            for H in _generated(G, x):
                if out.add(H):
                    pending.append(H)
    return out


def _close_literal(V: PointSet, out: DeducedFacets, rng) -> DeducedFacets:
    points = list(V)
    while True:
        facets = list(out)
        if rng is not None:
            rng.shuffle(facets)
            rng.shuffle(points)
        for G in facets:
            for x in points:
                bad = _violation(G, x)
                if bad:
                    raise Rejected(*bad)
        added = False
        for G in facets:
            for x in points:
                for H in _generated(G, x):
                    if out.add(H):
                        added = True
                        break
                if added:
                    break
            if added:
                break
        if not added:
            return out
