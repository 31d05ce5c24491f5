"""Slow, independent reference implementations used to validate the search.

Nothing here relies on the ridge-pivoting hull construction: facets are
found by testing every d-subset of the points against a supporting
hyperplane, solved with rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .geometry import FanoPolytope
from .lattice import Point, Simplex, build_simplex, determinant
from .order import PointSet, point_key, sort_points, vertex_sum
from .wd import generate_wd

MAX_BRUTE_FORCE_DIM = 3


def _solve_ones(rows: Sequence[Point]) -> tuple | None:
    """The functional taking the value 1 on every row, or None when the rows
    are linearly dependent."""
    d = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(1)] for r in rows]
    for col in range(d):
        piv = next((r for r in range(col, d) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][d] for i in range(d))


def smooth_fano_facets(points: Iterable[Sequence[int]]) -> list | None:
    """Facets of conv(points) as sorted tuples of points, or None unless the
    points are exactly the vertices of a smooth Fano polytope."""
    pts = sort_points(points)
    if not pts:
        return None
    d = len(pts[0])
    if len(pts) <= d:
        return None
    facets = []
    for S in combinations(pts, d):
        u = _solve_ones(S)
        if u is None:
            continue
        on = 0
        for x in pts:
            h = sum(a * b for a, b in zip(u, x))
            if h > 1:
                break
            on += h == 1
        else:
            if on != d:
                return None  # some facet carries more than d points
            if abs(determinant(S)) != 1:
                return None
            facets.append(S)
    if not facets:
        return None
    # The facets found are those whose hyperplane avoids the origin on the
    # far side; they close up into a boundary exactly when the origin is
    # interior.
    ridges: dict = {}
    for S in facets:
        for R in combinations(S, d - 1):
            ridges[R] = ridges.get(R, 0) + 1
    if any(c != 2 for c in ridges.values()):
        return None
    if {v for S in facets for v in S} != set(pts):
        return None
    return facets


def polytope_from_facets(points: Iterable[Sequence[int]], facets: Sequence) -> FanoPolytope:
    """Assemble a :class:`FanoPolytope` from an independently found facet
    list."""
    simplices = tuple(build_simplex(S) for S in facets)
    by_ridge: dict = {}
    for i, F in enumerate(simplices):
        for w in range(len(F.vertices)):
            by_ridge.setdefault(F.key - {F.vertices[w]}, []).append((i, w))
    adjacency = {}
    for pair in by_ridge.values():
        (i, w), (j, x) = pair
        adjacency[(i, w)] = j
        adjacency[(j, x)] = i
    return FanoPolytope(sort_points(points), simplices, adjacency)


def _linear_image(F: Simplex, images: Sequence[Point], x: Point) -> Point:
    # The linear map sending F.vertices[i] to images[i], applied to x.
    c = F.coords(x)
    d = len(x)
    return tuple(sum(c[i] * images[i][k] for i in range(d)) for k in range(d))


def are_isomorphic(P: FanoPolytope, Q: FanoPolytope) -> bool:
    """True iff a lattice automorphism maps the vertices of P onto those of Q."""
    if P.dim != Q.dim or len(P.vertices) != len(Q.vertices) or len(P.facets) != len(Q.facets):
        return False
    F = P.facets[0]
    target = set(Q.vertices)
    for G in Q.facets:
        for images in permutations(G.vertices):
            # both bases are unimodular, so the map is a lattice automorphism
            if all(_linear_image(F, images, v) in target for v in P.vertices):
                return True
    return False


def _candidate_subsets(d: int):
    W = generate_wd(d)
    basis = W[:d]
    rest = W[d:]
    extra = 3 * d - d
    full = (1 << d) - 1

    def walk(start: int, chosen: list, nu: list, neg: int):
        if chosen and neg == full and min(nu) >= 0:
            yield basis + tuple(chosen)
        if len(chosen) == extra:
            return
        for k in range(start, len(rest)):
            p = rest[k]
            m = neg
            for i, a in enumerate(p):
                if a < 0:
                    m |= 1 << i
            chosen.append(p)
            yield from walk(k + 1, chosen, [a + b for a, b in zip(nu, p)], m)
            chosen.pop()

    yield from walk(0, [], [1] * d, 0)


def brute_force_classify(d: int) -> list:
    """One representative per isomorphism class of smooth Fano d-polytopes,
    by testing every admissible subset of the candidate set."""
    if not 1 <= d <= MAX_BRUTE_FORCE_DIM:
        raise ValueError(f"brute force is limited to 1 <= d <= {MAX_BRUTE_FORCE_DIM}")
    reps: list = []
    for V in _candidate_subsets(d):
        facets = smooth_fano_facets(V)
        if facets is None:
            continue
        P = polytope_from_facets(V, facets)
        if not any(are_isomorphic(P, Q) for Q in reps):
            reps.append(P)
    return reps


def ord_by_definition(P: FanoPolytope) -> PointSet:
    """Least vertex set over all special facets and all coordinate
    permutations, by exhaustive enumeration."""
    nu = vertex_sum(P.vertices)
    d = P.dim
    best = None
    for F in P.facets:
        if min(F.coords(nu)) < 0:
            continue
        images = [F.coords(v) for v in P.vertices]
        for sigma in permutations(range(d)):
            moved = []
            for x in images:
                y = [0] * d
                for i in range(d):
                    y[sigma[i]] = x[i]
                moved.append(tuple(y))
            key = sorted(point_key(y) for y in moved)
            if best is None or key < best[0]:
                best = (key, moved)
    assert best is not None, "every smooth Fano polytope has a special facet"
    return sort_points(best[1])
