"""Reading and writing polytope lists and count tables.

Text records look like::

    # 1
    2 3
    0 1
    1 0
    -1 -1

an optional ``#`` line with the running index, a header ``d n``, then the n
vertices one per line in increasing point order. The structured format is
one JSON object per line with keys ``dim``, ``count`` and ``vertices``,
preceded by ``index`` when records are numbered.
"""

from __future__ import annotations

import csv as _csv
import json
from typing import IO, Iterable, Iterator, Sequence

from .geometry import FanoPolytope
from .lattice import Point
from .order import PointSet, sort_points

FORMATS = ("text", "structured")


def format_polytope(vertices: Sequence[Point], index: int | None = None, fmt: str = "text") -> str:
    vertices = sort_points(vertices)
    d = len(vertices[0])
    if fmt == "structured":
        record = {"dim": d, "count": len(vertices), "vertices": [list(v) for v in vertices]}
        if index is not None:
            record = {"index": index, **record}
        return json.dumps(record, separators=(",", ":")) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [] if index is None else [f"# {index}"]
    lines.append(f"{d} {len(vertices)}")
    lines.extend(" ".join(str(a) for a in v) for v in vertices)
    return "\n".join(lines) + "\n"


def write_polytope(P: FanoPolytope | Sequence[Point], stream: IO[str], index: int | None = None,
                   fmt: str = "text") -> None:
    vertices = P.vertices if isinstance(P, FanoPolytope) else P
    stream.write(format_polytope(vertices, index, fmt))


def _parse_text(lines: Iterator[str]) -> Iterator[PointSet]:
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            d, n = (int(t) for t in line.split())
        except ValueError:
            raise ValueError(f"bad record header {line!r}") from None
        vertices = []
        for _ in range(n):
            row = next(lines, None)
            if row is None:
                raise ValueError("truncated record")
            v = tuple(int(t) for t in row.split())
            if len(v) != d:
                raise ValueError(f"expected {d} coordinates, got {row.strip()!r}")
            vertices.append(v)
        yield tuple(vertices)


def read_polytopes(stream: IO[str]) -> Iterator[PointSet]:
    """Vertex lists of the records in ``stream``, in file order and exactly
    as written (not re-sorted), detecting the format from the first
    non-blank character."""
    lines = iter(stream)
    for first in lines:
        if first.strip():
            break
    else:
        return
    if first.lstrip().startswith("{"):
        for line in (first, *lines):
            if line.strip():
                rec = json.loads(line)
                yield tuple(tuple(v) for v in rec["vertices"])
        return
    yield from _parse_text(iter((first, *lines)))


def table_rows(stats: Iterable) -> tuple:
    """Header and rows of the count table: one column per dimension, one row
    per vertex count, and a closing row of totals."""
    stats = sorted(stats, key=lambda s: s.dim)
    header = ["n"] + [f"d={s.dim}" for s in stats]
    if not stats:
        return header, []
    counts = sorted({n for s in stats for n in s.by_vertices})
    rows = [[str(n)] + [str(s.by_vertices.get(n, 0)) if s.by_vertices.get(n) else "" for s in stats]
            for n in counts]
    rows.append(["Total"] + [str(s.total) for s in stats])
    return header, rows


def write_table(stats: Iterable, stream: IO[str], csv: bool = False) -> None:
    header, rows = table_rows(stats)
    if csv:
        writer = _csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    cells = [header] + rows
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    for r in cells:
        line = " ".join(c.rjust(w) for c, w in zip(r, widths))
        stream.write(line.rstrip() + "\n")
