"""Exact integer linear algebra on the lattice Z^d.

Points and functionals are plain tuples of Python ints. A :class:`Simplex`
is an ordered lattice basis together with its facet normal and the dual
basis; every simplex handled here is unimodular, so all functionals are
integral and no rational arithmetic is needed past construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Iterable, Sequence, Tuple

Point = Tuple[int, ...]
Functional = Tuple[int, ...]


class UnimodularityError(ValueError):
    """The vertices of a candidate simplex do not form a lattice basis."""


def is_primitive(p: Sequence[int]) -> bool:
    return gcd(*p) == 1


def pairing(f: Sequence[int], x: Sequence[int]) -> int:
    assert len(f) == len(x)
    return sum(map(mul, f, x))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def _inverse_rows(vertices: Sequence[Point]) -> list[Functional]:
    # Row i of the result pairs to delta_ij with vertices[j]; the caller has
    # already checked |det| = 1 so every entry is an integer.
    d = len(vertices)
    # Matrix with the vertices as columns, augmented with the identity.
    a = [[Fraction(vertices[j][i]) for j in range(d)] + [Fraction(int(i == k)) for k in range(d)]
         for i in range(d)]
    for col in range(d):
        piv = next(r for r in range(col, d) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(d):
        row = a[i][d:]
        assert all(x.denominator == 1 for x in row)
        out.append(tuple(int(x) for x in row))
    return out


@dataclass(frozen=True)
class Simplex:
    """A unimodular (d-1)-simplex with its normal and dual basis.

    ``dual_basis[i]`` pairs to 1 with ``vertices[i]`` and to 0 with the other
    vertices; ``normal`` pairs to 1 with every vertex.
    """

    vertices: Tuple[Point, ...]
    normal: Functional
    dual_basis: Tuple[Functional, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def key(self) -> frozenset:
        k = self.__dict__.get("_key")
        if k is None:
            k = frozenset(self.vertices)
            object.__setattr__(self, "_key", k)
        return k

    def coords(self, x: Sequence[int]) -> Tuple[int, ...]:
        """Coefficients of ``x`` in the vertex basis."""
        return tuple([sum(map(mul, f, x)) for f in self.dual_basis])

    def height(self, x: Sequence[int]) -> int:
        return sum(map(mul, self.normal, x))

    def pivot_key(self, i: int, x: Point) -> frozenset:
        """Vertex set of ``self.pivot(i, x)``, without building it."""
        return self.key - {self.vertices[i]} | {x}

    def pivot(self, i: int, x: Point) -> "Simplex":
        """Replace vertex ``i`` by ``x``, updating the functionals in place of
        a fresh inversion. Raises UnimodularityError unless the coefficient of
        ``x`` on vertex ``i`` is +-1."""
        c = self.coords(x)
        ci = c[i]
        if ci not in (1, -1):
            raise UnimodularityError(f"coefficient {ci} on replaced vertex")
        ui = tuple(ci * a for a in self.dual_basis[i])
        dual = []
        for j, uj in enumerate(self.dual_basis):
            if j == i:
                dual.append(ui)
            else:
                cj = c[j]
                dual.append(tuple(a - cj * b for a, b in zip(uj, ui)) if cj else uj)
        verts = self.vertices[:i] + (tuple(x),) + self.vertices[i + 1:]
        normal = tuple(sum(col) for col in zip(*dual))
        return Simplex(verts, normal, tuple(dual))


def build_simplex(vertices: Iterable[Sequence[int]]) -> Simplex:
    verts = tuple(tuple(v) for v in vertices)
    d = len(verts)
    assert d >= 1 and all(len(v) == d for v in verts), "need d points of length d"
    det = determinant(verts)
    if det not in (1, -1):
        raise UnimodularityError(f"determinant {det}")
    dual = _inverse_rows(verts)
    normal = tuple(sum(col) for col in zip(*dual))
    return Simplex(verts, normal, tuple(dual))


def basis_vector(d: int, i: int) -> Point:
    return tuple(int(j == i) for j in range(d))


def identity_simplex(d: int) -> Simplex:
    verts = tuple(basis_vector(d, i) for i in range(d))
    return Simplex(verts, (1,) * d, verts)


def change_basis(basis: Simplex, x: Sequence[int]) -> Point:
    """Coordinates of ``x`` in the vertex basis of ``basis``; maps the
    vertices of ``basis`` to the standard basis vectors."""
    return basis.coords(x)


def apply_matrix(m: Sequence[Sequence[int]], x: Sequence[int]) -> Point:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in m)
