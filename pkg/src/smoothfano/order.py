"""The total order on lattice points and finite point sets, the action of
coordinate permutations, and the canonical form of a smooth Fano polytope.

A point set is represented as a tuple of points sorted ascending under the
point order; with that representation the set order is exactly Python's
sequence comparison of the key lists (the empty set, and every proper
prefix, compares smaller).

Minimisation over the symmetric group never enumerates permutations. The
search maps points one at a time onto the target set in sorted order; the
permutations compatible with the choices so far are exactly the bijections
between coordinate positions that preserve a colouring (the tuple of values
already matched at that position), so the least image of any single point
under all of them is found greedily.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence, Tuple

from .lattice import Point, basis_vector

PointSet = Tuple[Point, ...]


def point_key(x: Sequence[int]) -> tuple:
    return (-sum(x),) + tuple(x)


def cmp_points(x: Sequence[int], y: Sequence[int]) -> int:
    kx, ky = point_key(x), point_key(y)
    return (kx > ky) - (kx < ky)


def sort_points(points: Iterable[Sequence[int]]) -> PointSet:
    return tuple(sorted({tuple(p) for p in points}, key=point_key))


def set_key(X: Iterable[Sequence[int]]) -> list:
    return sorted({point_key(x) for x in X})


def cmp_point_sets(X: Sequence[Sequence[int]], Y: Sequence[Sequence[int]]) -> int:
    kx, ky = set_key(X), set_key(Y)
    return (kx > ky) - (kx < ky)


def permute_point(sigma: Sequence[int], x: Sequence[int]) -> Point:
    """Send coordinate i of ``x`` to position ``sigma[i]`` (0-based)."""
    y = [0] * len(x)
    for i, a in enumerate(x):
        y[sigma[i]] = a
    return tuple(y)


def permute(sigma: Sequence[int], X: Iterable[Sequence[int]]) -> PointSet:
    return sort_points(permute_point(sigma, x) for x in X)


def is_presubset(V: Iterable[Sequence[int]], W: Iterable[Sequence[int]]) -> bool:
    vs = {tuple(v) for v in V}
    ws = {tuple(w) for w in W}
    if not vs <= ws:
        return False
    rest = ws - vs
    if not vs or not rest:
        return True
    return max(map(point_key, vs)) < min(map(point_key, rest))


# -- search over coordinate permutations -----------------------------------

def _least_image(y: Point, src: tuple, tgt: tuple) -> Point:
    pools: dict = {}
    for c, a in zip(src, y):
        pools.setdefault(c, []).append(a)
    if len(pools) == 1:
        return tuple(sorted(y))
    for pool in pools.values():
        pool.sort(reverse=True)
    return tuple(pools[c].pop() for c in tgt)


def _refine(src: tuple, tgt: tuple, y: Point, b: Point) -> tuple:
    return (tuple(c + (a,) for c, a in zip(src, y)),
            tuple(c + (a,) for c, a in zip(tgt, b)))


def _distinct_branches(branches: list, rest: tuple, src: tuple) -> list:
    # Positions i, j are twins when they share a colour and swapping them
    # fixes ``rest``; branches related by twin swaps lead to equivalent
    # subproblems, so keep one per class.
    d = len(src)
    rest_set = set(rest)
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            if src[i] != src[j] or find(i) == find(j):
                continue
            ok = True
            for z in rest:
                if z[i] != z[j]:
                    w = list(z)
                    w[i], w[j] = w[j], w[i]
                    if tuple(w) not in rest_set:
                        ok = False
                        break
            if ok:
                parent[find(j)] = find(i)
    blocks: dict = {}
    for i in range(d):
        blocks.setdefault(find(i), []).append(i)
    if all(len(b) == 1 for b in blocks.values()):
        return branches
    seen = set()
    out = []
    for y in branches:
        canon = list(y)
        for b in blocks.values():
            for pos, a in zip(b, sorted(y[i] for i in b)):
                canon[pos] = a
        canon = tuple(canon)
        if canon not in seen:
            seen.add(canon)
            out.append(y)
    return out


def _exists_smaller(rest: tuple, target: tuple, k: int, src: tuple, tgt: tuple) -> bool:
    b = target[k]
    bsum = sum(b)
    branches = []
    for y in rest:
        s = sum(y)
        if s > bsum:
            return True
        if s < bsum:
            continue
        m = _least_image(y, src, tgt)
        if m < b:
            return True
        if m == b:
            branches.append(y)
    if k + 1 == len(target) or not branches:
        return False
    if len(branches) > 1:
        branches = _distinct_branches(branches, rest, src)
    for y in branches:
        src2, tgt2 = _refine(src, tgt, y, b)
        rest2 = tuple(z for z in rest if z != y)
        if _exists_smaller(rest2, target, k + 1, src2, tgt2):
            return True
    return False


def _strip_basis(A: PointSet, B: PointSet) -> tuple:
    # sigma fixes the set of basis vectors; removing a common subset from two
    # equal-size sets does not change how they compare.
    d = len(A[0])
    basis = {basis_vector(d, i) for i in range(d)}
    if basis <= set(A) and basis <= set(B):
        return (tuple(a for a in A if a not in basis),
                tuple(b for b in B if b not in basis))
    return A, B


def exists_smaller_image(A: Sequence[Point], B: Sequence[Point]) -> bool:
    """True iff sigma.A precedes B for some coordinate permutation sigma.
    ``A`` and ``B`` must have the same size."""
    A, B = sort_points(A), sort_points(B)
    assert len(A) == len(B)
    if not A:
        return False
    A, B = _strip_basis(A, B)
    if not A:
        return False
    d = len(A[0])
    triv = ((),) * d
    return _exists_smaller(A, B, 0, triv, triv)


def is_sd_minimal(V: Iterable[Sequence[int]]) -> bool:
    V = sort_points(V)
    return not exists_smaller_image(V, V)


def is_sd_minimal_naive(V: Iterable[Sequence[int]]) -> bool:
    V = sort_points(V)
    if not V:
        return True
    ref = set_key(V)
    return all(set_key([permute_point(s, x) for x in V]) >= ref
               for s in permutations(range(len(V[0]))))


def _min_rest(rest: tuple, src: tuple, tgt: tuple) -> tuple:
    if not rest:
        return ()
    best = None
    branches = []
    for y in rest:
        k = (-sum(y),) + _least_image(y, src, tgt)
        if best is None or k < best:
            best, branches = k, [y]
        elif k == best:
            branches.append(y)
    q = best[1:]
    if len(branches) > 1:
        branches = _distinct_branches(branches, rest, src)
    tails = []
    for y in branches:
        src2, tgt2 = _refine(src, tgt, y, q)
        tails.append(_min_rest(tuple(z for z in rest if z != y), src2, tgt2))
    return (q,) + min(tails, key=lambda t: [point_key(p) for p in t])


def min_permuted(A: Iterable[Sequence[int]]) -> PointSet:
    """The least set among sigma.A over all coordinate permutations."""
    A = sort_points(A)
    if not A:
        return A
    d = len(A[0])
    basis = tuple(basis_vector(d, i) for i in range(d))
    head = ()
    if set(basis) <= set(A):
        head = sort_points(basis)
        A = tuple(a for a in A if a not in head)
    triv = ((),) * d
    return sort_points(head + _min_rest(A, triv, triv))


def min_permuted_naive(A: Iterable[Sequence[int]]) -> PointSet:
    A = sort_points(A)
    if not A:
        return A
    images = (permute(s, A) for s in permutations(range(len(A[0]))))
    return min(images, key=set_key)


# -- canonical form of a polytope ------------------------------------------

def vertex_sum(points: Iterable[Sequence[int]]) -> Point:
    return tuple(map(sum, zip(*points)))


def special_facets(vertices: Sequence[Point], facets: Iterable) -> list:
    nu = vertex_sum(vertices)
    return [F for F in facets if min(F.coords(nu)) >= 0]


def special_images(P) -> list:
    """Vertex sets of the special embeddings induced by each special facet,
    before permuting coordinates."""
    return [sort_points(F.coords(x) for x in P.vertices)
            for F in special_facets(P.vertices, P.facets)]


def ord_polytope(P) -> PointSet:
    """Least vertex set over all special embeddings of ``P``."""
    return min((min_permuted(A) for A in special_images(P)), key=set_key)


def is_ord(P) -> bool:
    """True iff the vertex set of ``P`` is ord(P)."""
    V = sort_points(P.vertices)
    d = len(V[0])
    # V itself must be a candidate: the standard simplex is a special facet.
    seed = frozenset(basis_vector(d, i) for i in range(d))
    if min(vertex_sum(V)) < 0 or not any(F.key == seed for F in P.facets):
        return False
    return not any(exists_smaller_image(A, V) for A in special_images(P))
