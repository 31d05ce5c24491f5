"""Isomorph-free enumeration of smooth Fano polytopes.

The search walks subsets of the candidate set in increasing order, starting
from the standard basis. A node is extended by every later candidate that
survives the facet-deduction pruning and keeps the set minimal under
coordinate permutations; every node whose points span a smooth Fano polytope
in its canonical embedding is emitted. Nothing that has been emitted is ever
consulted again.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .checksubset import DeducedFacets, Rejected, check_subset
from .geometry import FanoPolytope, RejectError, build_polytope
from . import _kernels
from .lattice import Point, Simplex, identity_simplex
from .order import exists_smaller_image, is_ord, is_sd_minimal_naive, point_key
from .wd import generate_wd

log = logging.getLogger(__name__)

Sink = Callable[[FanoPolytope], None]


@dataclass
class Stats:
    dim: int
    total: int = 0
    by_vertices: Counter = field(default_factory=Counter)
    nodes: int = 0
    rejections: Counter = field(default_factory=Counter)
    seconds: float = 0.0

    def merge(self, other: "Stats") -> None:
        self.total += other.total
        self.by_vertices.update(other.by_vertices)
        self.nodes += other.nodes
        self.rejections.update(other.rejections)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "total": self.total,
            "by_vertices": dict(sorted(self.by_vertices.items())),
            "nodes": self.nodes,
            "rejections": dict(sorted(self.rejections.items())),
            "seconds": round(self.seconds, 3),
        }


@dataclass(frozen=True, eq=False)
class SearchNode:
    points: tuple          # sorted, starts with the standard basis
    last: int              # index of max(points) in the candidate list
    nu: tuple              # coordinate sum of points
    negative: int          # bitmask of coordinates negative somewhere in points
    pa: np.ndarray         # ``points`` as an integer array
    # Deduced facets. The optimised search keeps them as arrays: vertex
    # positions in ``points``, dual bases, and vertex bitmasks (also sorted);
    # the reference search keeps :class:`Simplex` objects in ``facets``.
    fv: np.ndarray | None = None
    duals: np.ndarray | None = None
    masks: np.ndarray | None = None
    sorted_masks: np.ndarray | None = None
    alive: np.ndarray | None = None  # later candidates no known facet excludes
    facets: tuple = ()


class _Search:
    def __init__(self, d: int, literal: bool = False, heartbeat: float = 0.0):
        self.d = d
        self.literal = literal
        self.W = generate_wd(d)
        self.Wa = np.array(self.W, dtype=np.int64).reshape(len(self.W), d)
        self.sums = self.Wa.sum(axis=1)
        # candidates with -sum(w) <= t occupy W[:self._end[t]]
        self._end = [int(np.searchsorted(-self.sums, t, side="right")) for t in range(d + 1)]
        self.stats = Stats(d)
        self.seed = identity_simplex(d)
        self._eye = np.eye(d, dtype=np.int64)
        # the basis comes first in W, e_d before e_1; e_i sits at position d-1-i
        self._seed_idx = np.arange(d - 1, -1, -1, dtype=np.int64)
        self.heartbeat = heartbeat
        self._next_beat = time.monotonic() + heartbeat if heartbeat else None

    def _stop(self, s: int) -> int:
        return self._end[min(s, self.d)] if s >= 0 else 0

    # -- nodes ---------------------------------------------------------------

    def root(self) -> SearchNode:
        d = self.d
        pts = self.W[:d]
        assert pts == tuple(self.seed.vertices[i] for i in self._seed_idx)
        pa = self.Wa[:d].copy()
        if self.literal:
            return SearchNode(pts, d - 1, (1,) * d, 0, pa, facets=(self.seed,))
        duals = self._eye[None, :, :].copy()
        mask = np.array([(1 << d) - 1], dtype=np.int64)
        alive = np.arange(d, self._stop(d))
        alive = alive[_kernels.compatible(duals, self.Wa[alive])]
        return SearchNode(pts, d - 1, (1,) * d, 0, pa, self._seed_idx[None, :].copy(), duals, mask,
                          mask, alive)

    def children(self, node: SearchNode) -> Iterator[SearchNode]:
        if self.literal:
            yield from self._children_literal(node)
            return
        d = self.d
        idx = node.alive[:np.searchsorted(node.alive, self._stop(sum(node.nu)))]
        if not len(idx):
            return
        cand = self.Wa[idx]
        ok = (cand + np.array(node.nu)).max(axis=1) <= 1 + sum(node.nu) + self.sums[idx]
        self._reject("check_subset:3", len(ok) - int(ok.sum()))
        fresh = [i for i in range(d) if not node.negative >> i & 1]
        if fresh:
            step6 = (cand[:, fresh] >= -1).all(axis=1)
            self._reject("check_subset:6", int((ok & ~step6).sum()))
            ok &= step6
        for j in idx[ok]:
            child = self._extend(node, int(j))
            if child is not None:
                yield child

    def _reject(self, why, count: int = 1) -> None:
        if count:
            self.stats.rejections[why] += count

    def _extend(self, node: SearchNode, j: int) -> SearchNode | None:
        # Called only for candidates that passed the vectorised tests in
        # ``children``: the new point satisfies the vertex-sum bounds, is
        # compatible with every known facet, and opens no non-unimodular
        # neighbour of the standard simplex. What remains is closing the set
        # of deduced facets under ridge pivots and checking the new facets
        # against all points.
        d = self.d
        w = self.W[j]
        pa = np.vstack([node.pa, self.Wa[j]])
        fresh = ((1 << d) - 1) & ~node.negative
        status, nv, nd, nm = _kernels.close(pa, node.fv, node.duals, node.masks, node.sorted_masks,
                                            fresh, self._seed_idx, self._eye)
        if status:
            self._reject(f"check_subset:{status}")
            return None
        points = node.points + (w,)
        if not self._minimal(points, w):
            self._reject("not_sd_minimal")
            return None

        negative = node.negative
        for i in range(d):
            if w[i] < 0:
                negative |= 1 << i
        nu = tuple(a + b for a, b in zip(node.nu, w))
        alive = node.alive
        alive = alive[np.searchsorted(alive, j, side="right"):np.searchsorted(alive, self._stop(sum(nu)))]
        if not len(nm):
            return SearchNode(points, j, nu, negative, pa, node.fv, node.duals, node.masks,
                              node.sorted_masks, alive)
        if len(alive):
            keep = _kernels.compatible(nd, self.Wa[alive])
            # counted once, when the excluding facet is first deduced
            self._reject("check_subset:7-8", len(keep) - int(keep.sum()))
            alive = alive[keep]
        masks = np.concatenate([node.masks, nm])
        return SearchNode(points, j, nu, negative, pa, np.concatenate([node.fv, nv]),
                          np.concatenate([node.duals, nd]), masks, np.sort(masks), alive)

    def _minimal(self, points: tuple, w: Point) -> bool:
        # The parent is minimal, so a smaller image must move w below itself;
        # impossible when w's coordinates are already ascending.
        if all(w[i] <= w[i + 1] for i in range(self.d - 1)):
            return True
        return not exists_smaller_image(points, points)

    # -- reference path --------------------------------------------------------

    def _children_literal(self, node: SearchNode) -> Iterator[SearchNode]:
        for j in range(node.last + 1, len(self.W)):
            child = self._extend_literal(node, j, self.W[j])
            if child is not None:
                yield child

    def _extend_literal(self, node: SearchNode, j: int, w: Point) -> SearchNode | None:
        points = node.points + (w,)
        try:
            deduced = check_subset(points, DeducedFacets(node.facets), literal=True)
        except Rejected as exc:
            self._reject(f"check_subset:{exc.step}")
            return None
        if not is_sd_minimal_naive(points):
            self._reject("not_sd_minimal")
            return None
        nu = tuple(a + b for a, b in zip(node.nu, w))
        negative = node.negative
        for i in range(self.d):
            if w[i] < 0:
                negative |= 1 << i
        return SearchNode(points, j, nu, negative, None, facets=tuple(deduced))

    # -- emission ------------------------------------------------------------

    def polytope_at(self, node: SearchNode) -> FanoPolytope | None:
        d = self.d
        if len(node.points) <= d:
            return None
        if self.literal:
            try:
                P = build_polytope(node.points, self.seed)
            except RejectError as exc:
                self._reject(f"emit:{exc.reason}")
                return None
        else:
            # The standard simplex must be a special facet and every ridge of
            # it needs a point on the far side.
            if min(node.nu) < 0:
                self._reject("emit:not_special")
                return None
            if node.negative != (1 << d) - 1:
                self._reject("emit:open")
                return None
            P = fast_build(node.points, node.pa, self._seed_idx, self._eye)
            if isinstance(P, str):
                self._reject(f"emit:{P}")
                return None
        if not is_ord(P):
            self._reject("emit:not_ord")
            return None
        return P

    def run(self, node: SearchNode, sink: Sink) -> None:
        self.stats.nodes += 1
        if self._next_beat is not None and time.monotonic() >= self._next_beat:
            log.info("d=%d nodes=%d found=%d", self.d, self.stats.nodes, self.stats.total)
            self._next_beat = time.monotonic() + self.heartbeat
        P = self.polytope_at(node)
        if P is not None:
            self.stats.total += 1
            self.stats.by_vertices[len(P.vertices)] += 1
            sink(P)
        for child in self.children(node):
            self.run(child, sink)


def fast_build(points: tuple, pa: np.ndarray, seed_idx: np.ndarray, seed_dual: np.ndarray):
    """Compiled counterpart of :func:`build_polytope` for a search node: the
    polytope, or the reason for rejection as a string."""
    status, fv, fd, adj = _kernels.hull(pa, seed_idx, seed_dual)
    if status != _kernels.OK:
        return _kernels.HULL_REASONS[status]
    facets = []
    for f in range(len(fv)):
        dual = tuple(map(tuple, fd[f].tolist()))
        facets.append(Simplex(tuple(points[i] for i in fv[f]),
                              tuple(sum(col) for col in zip(*dual)), dual))
    adjacency = {(f, w): int(adj[f, w]) for f in range(len(fv)) for w in range(len(points[0]))}
    return FanoPolytope(points, tuple(facets), adjacency)


def _ord_key(P: FanoPolytope) -> list:
    return [point_key(v) for v in P.vertices]


def _run_subtrees(args) -> tuple:
    d, literal, paths = args
    search = _Search(d, literal)
    found = []
    for path in paths:
        node = _replay(search, path)
        search.run(node, found.append)
    return [P.vertices for P in found], search.stats


def _replay(search: _Search, path: tuple) -> SearchNode:
    node = search.root()
    for j in path:
        node = search._extend_literal(node, j, search.W[j]) if search.literal else search._extend(node, j)
        assert node is not None, "replayed path left the search tree"
    return node


def _frontier(search: _Search, node: SearchNode, depth: int, sink: Sink, out: list) -> None:
    # Expand the top of the tree sequentially and collect the nodes at the
    # split depth as index paths.
    search.stats.nodes += 1
    P = search.polytope_at(node)
    if P is not None:
        search.stats.total += 1
        search.stats.by_vertices[len(P.vertices)] += 1
        sink(P)
    for child in search.children(node):
        if len(child.points) - search.d >= depth:
            out.append(tuple(search.W.index(p) for p in child.points[search.d:]))
        else:
            _frontier(search, child, depth, sink, out)


def classify(d: int, sink: Sink | None = None, *, literal: bool = False, workers: int = 1,
             split_depth: int = 2, heartbeat: float = 0.0) -> Stats:
    """Emit one polytope per isomorphism class, as its canonical embedding.

    Polytopes reach ``sink`` in strictly increasing order of their vertex
    sets. With ``workers > 1`` the subtrees below ``split_depth`` added points
    are searched in worker processes and their results merged back into the
    same order before reaching ``sink``.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    sink = sink or (lambda P: None)
    start = time.perf_counter()
    search = _Search(d, literal, heartbeat)
    if workers <= 1:
        search.run(search.root(), sink)
        stats = search.stats
    else:
        stats = _classify_parallel(search, sink, workers, split_depth)
    stats.seconds = time.perf_counter() - start
    return stats


def _classify_parallel(search: _Search, sink: Sink, workers: int, split_depth: int) -> Stats:
    top: list = []
    paths: list = []
    _frontier(search, search.root(), max(split_depth, 1), top.append, paths)
    stats = search.stats
    chunks = [paths[i::workers * 4] for i in range(min(len(paths), workers * 4))]
    results = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for vertex_sets, sub in pool.map(_run_subtrees, [(search.d, search.literal, c) for c in chunks]):
            results.extend(vertex_sets)
            stats.merge(sub)
    # re-verify to hand complete polytopes to the sink
    merged = [(_ord_key(P), P) for P in top]
    merged += [(sorted(point_key(v) for v in vs), build_polytope(vs, search.seed)) for vs in results]
    merged.sort(key=lambda kp: kp[0])
    for _, P in merged:
        sink(P)
    return stats


def iter_classify(d: int, **kwargs) -> list:
    out: list = []
    classify(d, out.append, **kwargs)
    return out
