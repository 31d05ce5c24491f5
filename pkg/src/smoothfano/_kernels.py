"""Compiled inner loops of the search.

Points of a search node are addressed by their index in the node's point
array, so a facet's vertex set is a bitmask (a node never holds more than
63 points). Dual bases are updated by the same rank-one pivot as
:meth:`smoothfano.lattice.Simplex.pivot`. The pure-Python implementations
elsewhere in the package remain the reference; these functions are tested
against them.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.typed import Dict

# hull status codes
OK = 0
NO_APEX = 1
AMBIGUOUS_APEX = 2
NOT_UNIMODULAR = 3
BEYOND_FACET = 4
NOT_SIMPLICIAL = 5
NOT_VERTEX = 6
RIDGE_MISMATCH = 7
HULL_REASONS = ("ok", "no_apex", "ambiguous_apex", "not_unimodular", "beyond_facet",
                "not_simplicial", "not_vertex", "ridge_mismatch")

# closure status codes: 0 or the check_subset step that fired
CLOSED = 0


@njit(cache=True)
def _grow(fv, fd, fm, cap):
    d = fv.shape[1]
    nv = np.empty((cap, d), np.int64)
    nd = np.empty((cap, d, d), np.int64)
    nm = np.empty(cap, np.int64)
    k = fv.shape[0]
    nv[:k] = fv
    nd[:k] = fd
    nm[:k] = fm
    return nv, nd, nm


@njit(cache=True)
def _pivot_into(out, D, c, w):
    # dual basis after replacing vertex w by a point with coordinates c
    d = D.shape[0]
    cw = c[w]
    for k in range(d):
        out[w, k] = cw * D[w, k]
    for r in range(d):
        if r != w:
            cr = c[r]
            for k in range(d):
                out[r, k] = D[r, k] - cr * out[w, k]


@njit(cache=True)
def _coords(D, x, c):
    d = D.shape[0]
    h = 0
    for r in range(d):
        acc = 0
        for k in range(d):
            acc += D[r, k] * x[k]
        c[r] = acc
        h += acc
    return h


@njit(cache=True)
def hull(P, seed_idx, seed_dual):
    """Facet complex of conv(P) by ridge pivoting from the seed facet.

    Returns (status, facet vertex indices, dual bases, adjacency); the arrays
    are only meaningful when status is OK.
    """
    n, d = P.shape
    cap = 64
    fv = np.empty((cap, d), np.int64)
    fd = np.empty((cap, d, d), np.int64)
    fm = np.empty(cap, np.int64)
    adj = np.empty((cap, d), np.int64)
    index = Dict.empty(key_type=types.int64, value_type=types.int64)
    m0 = 0
    for k in range(d):
        fv[0, k] = seed_idx[k]
        m0 |= 1 << seed_idx[k]
    fd[0] = seed_dual
    fm[0] = m0
    index[m0] = 0
    count = 1
    C = np.empty((n, d), np.int64)
    h = np.empty(n, np.int64)
    i = 0
    while i < count:
        D = fd[i]
        mask = fm[i]
        for x in range(n):
            hx = _coords(D, P[x], C[x])
            h[x] = hx
            if hx > 1:
                return BEYOND_FACET, fv[:0], fd[:0], adj[:0]
            if hx == 1 and not (mask >> x) & 1:
                return NOT_SIMPLICIAL, fv[:0], fd[:0], adj[:0]
        for w in range(d):
            best = -1
            best_h = 0
            tie = False
            for x in range(n):
                if C[x, w] < 0:
                    if best < 0 or h[x] > best_h:
                        best = x
                        best_h = h[x]
                        tie = False
                    elif h[x] == best_h:
                        tie = True
            if best < 0:
                return NO_APEX, fv[:0], fd[:0], adj[:0]
            if tie:
                return AMBIGUOUS_APEX, fv[:0], fd[:0], adj[:0]
            key = (mask & ~(1 << fv[i, w])) | (1 << best)
            j = index.get(key, -1)
            if j < 0:
                if C[best, w] != -1:
                    return NOT_UNIMODULAR, fv[:0], fd[:0], adj[:0]
                if count == cap:
                    cap *= 2
                    fv, fd, fm = _grow(fv, fd, fm, cap)
                    na = np.empty((cap, d), np.int64)
                    na[:count] = adj[:count]
                    adj = na
                    D = fd[i]
                _pivot_into(fd[count], D, C[best], w)
                for k in range(d):
                    fv[count, k] = fv[i, k]
                fv[count, w] = best
                fm[count] = key
                index[key] = count
                j = count
                count += 1
            adj[i, w] = j
        i += 1

    cover = 0
    for f in range(count):
        cover |= fm[f]
    if cover != (1 << n) - 1:
        return NOT_VERTEX, fv[:0], fd[:0], adj[:0]
    for f in range(count):
        for w in range(d):
            j = adj[f, w]
            back = -1
            for k in range(d):
                if not (fm[f] >> fv[j, k]) & 1:
                    back = k
            if back < 0 or adj[j, back] != f:
                return RIDGE_MISMATCH, fv[:0], fd[:0], adj[:0]
    return OK, fv[:count], fd[:count], adj[:count]


@njit(cache=True)
def _known(key, old_sorted, index):
    k = np.searchsorted(old_sorted, key)
    if k < old_sorted.shape[0] and old_sorted[k] == key:
        return True
    return key in index


@njit(cache=True)
def _add(base, mask, D, c, w, x, nv, nd, nm, count, old_sorted, index):
    key = (mask & ~(1 << base[w])) | (1 << x)
    if _known(key, old_sorted, index):
        return count, nv, nd, nm
    if count == nv.shape[0]:
        nv, nd, nm = _grow(nv, nd, nm, 2 * count)
    _pivot_into(nd[count], D, c, w)
    for k in range(base.shape[0]):
        nv[count, k] = base[k]
    nv[count, w] = x
    nm[count] = key
    index[key] = count
    return count + 1, nv, nd, nm


@njit(cache=True)
def close(P, old_v, old_d, old_m, old_sorted, fresh, seed_idx, seed_dual):
    """Facets deduced when the last row of P joins a node.

    ``old_*`` describe the node's known facets (vertex indices, duals,
    masks, masks sorted), ``fresh`` is the bitmask of coordinates that had
    no negative entry before. Returns (status, vertex indices, duals, masks)
    of the new facets, status being 0 or the number of the pruning step that
    rejected the point (6, 7 or 8).
    """
    n, d = P.shape
    x_new = n - 1
    w_pt = P[x_new]
    cap = 32
    nv = np.empty((cap, d), np.int64)
    nd = np.empty((cap, d, d), np.int64)
    nm = np.empty(cap, np.int64)
    index = Dict.empty(key_type=types.int64, value_type=types.int64)
    count = 0
    c = np.empty(d, np.int64)
    seed_mask = 0
    for k in range(d):
        seed_mask |= 1 << seed_idx[k]

    # neighbours of the standard simplex across ridges first crossed by w
    for i in range(d):
        if w_pt[i] < 0 and (fresh >> i) & 1:
            _coords(seed_dual, w_pt, c)
            if c[i] != -1:
                return 6, nv[:0], nd[:0], nm[:0]
            count, nv, nd, nm = _add(seed_idx, seed_mask, seed_dual, c, i, x_new, nv, nd, nm,
                                     count, old_sorted, index)

    # known facets for which w lies on the hyperplane through the origin
    for f in range(old_v.shape[0]):
        hw = _coords(old_d[f], w_pt, c)
        if hw == 0:
            for pos in range(d):
                if c[pos] == -1:
                    count, nv, nd, nm = _add(old_v[f], old_m[f], old_d[f], c, pos, x_new, nv, nd,
                                             nm, count, old_sorted, index)

    C = np.empty((n, d), np.int64)
    h = np.empty(n, np.int64)
    k = 0
    while k < count:
        D = nd[k].copy()
        base = nv[k].copy()
        mask = nm[k]
        for x in range(n):
            hx = _coords(D, P[x], C[x])
            h[x] = hx
            if hx > 1:
                return 7, nv[:0], nd[:0], nm[:0]
            lb = 0 if hx == 1 else (-1 if hx == 0 else hx)
            for r in range(d):
                if C[x, r] < lb:
                    return 8, nv[:0], nd[:0], nm[:0]
        for x in range(n):
            if h[x] == 0:
                for pos in range(d):
                    if C[x, pos] == -1:
                        count, nv, nd, nm = _add(base, mask, D, C[x], pos, x, nv, nd, nm, count,
                                                 old_sorted, index)
        k += 1
    return CLOSED, nv[:count], nd[:count], nm[:count]


@njit(cache=True)
def compatible(duals, cand):
    """Mask of candidates lying beneath every facet with admissible
    coefficients."""
    m, d = cand.shape
    out = np.ones(m, np.bool_)
    c = np.empty(d, np.int64)
    for t in range(m):
        for f in range(duals.shape[0]):
            h = _coords(duals[f], cand[t], c)
            if h > 1:
                out[t] = False
                break
            lb = 0 if h == 1 else (-1 if h == 0 else h)
            bad = False
            for r in range(d):
                if c[r] < lb:
                    bad = True
                    break
            if bad:
                out[t] = False
                break
    return out
