"""Boundary construction and verification for smooth Fano polytopes.

The facet complex is built by pivoting across ridges starting from a seed
facet. Because every facet of a smooth Fano polytope is a lattice basis and
the origin is interior, the apex of the neighbouring facet across the ridge
opposite ``w`` is the point with negative ``w``-coefficient that sits highest
over the current facet. The traversal doubles as the smoothness check: any
failure along the way means the point set is not the vertex set of a smooth
Fano polytope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import Point, Simplex, UnimodularityError, identity_simplex
from .order import PointSet, sort_points, special_facets as _special_facets


class RejectError(Exception):
    """The point set is not the vertex set of a smooth Fano polytope."""

    reason = "rejected"

    def __init__(self, message: str = "", reason: str | None = None):
        super().__init__(message or reason or self.reason)
        if reason is not None:
            self.reason = reason


class NotFoundError(RejectError):
    reason = "no_apex"


class AmbiguityError(RejectError):
    reason = "ambiguous_apex"


@dataclass(frozen=True)
class FanoPolytope:
    vertices: PointSet
    facets: tuple
    # (facet index, vertex position) -> index of the facet across that ridge
    adjacency: dict = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def __len__(self) -> int:
        return len(self.vertices)


def _apex(points: Sequence[Point], coords: Sequence[tuple], w: int) -> Point:
    best = None
    best_h = None
    tie = False
    for x, c in zip(points, coords):
        if c[w] < 0:
            h = sum(c)
            if best_h is None or h > best_h:
                best, best_h, tie = x, h, False
            elif h == best_h:
                tie = True
    if best is None:
        raise NotFoundError("no point beyond the ridge")
    if tie:
        raise AmbiguityError(f"apex height {best_h} attained twice")
    return best


def neighbor_apex(F: Simplex, w: int, V: Iterable[Sequence[int]]) -> Point:
    """Apex of the facet adjacent to ``F`` across the ridge opposite vertex
    position ``w``."""
    pts = [tuple(x) for x in V]
    return _apex(pts, [F.coords(x) for x in pts], w)


def transition_height(F: Simplex, w: int, apex: Sequence[int], x: Sequence[int]) -> int:
    """Height of ``x`` over the neighbour of ``F`` across the ridge opposite
    position ``w``, computed from data of ``F`` alone."""
    return F.height(x) + F.coords(x)[w] * (F.height(apex) - 1)


def _check_beneath(F: Simplex, points: Sequence[Point]) -> None:
    verts = set(F.vertices)
    for x in points:
        h = F.height(x)
        if h > 1:
            raise RejectError(f"{x} beyond facet", reason="beyond_facet")
        if h == 1 and x not in verts:
            raise RejectError(f"{x} on facet hyperplane", reason="not_simplicial")


def build_polytope(V: Iterable[Sequence[int]], seed: Simplex | None = None) -> FanoPolytope:
    points = sort_points(V)
    if not points:
        raise RejectError("empty point set", reason="too_few_points")
    d = len(points[0])
    if len(points) < d + 1:
        raise RejectError("fewer than d+1 points", reason="too_few_points")
    if seed is None:
        seed = identity_simplex(d)
    if not set(seed.vertices) <= set(points):
        raise ValueError("seed vertices must belong to the point set")
    _check_beneath(seed, points)

    facets = [seed]
    index = {seed.key: 0}
    adjacency = {}
    i = 0
    while i < len(facets):
        F = facets[i]
        coords = [F.coords(x) for x in points]
        for w in range(d):
            apex = _apex(points, coords, w)
            j = index.get(F.pivot_key(w, apex))
            if j is None:
                try:
                    G = F.pivot(w, apex)
                except UnimodularityError as exc:
                    raise RejectError(str(exc), reason="not_unimodular") from None
                _check_beneath(G, points)
                j = len(facets)
                index[G.key] = j
                facets.append(G)
            adjacency[(i, w)] = j
        i += 1

    on_facets = {v for F in facets for v in F.vertices}
    if len(on_facets) != len(points):
        raise RejectError("some point is not a vertex", reason="not_vertex")
    for (i, w), j in adjacency.items():
        G = facets[j]
        apex = next(v for v in G.vertices if v not in facets[i].key)
        if adjacency.get((j, G.vertices.index(apex))) != i:
            raise RejectError("ridge shared by more than two facets", reason="ridge_mismatch")
    return FanoPolytope(points, tuple(facets), adjacency)


def special_facets(P: FanoPolytope) -> list:
    return _special_facets(P.vertices, P.facets)
