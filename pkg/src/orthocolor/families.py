"""Graphs underlying latin-type structures.

Cell ``(r, c)`` of an ``m x n`` board (1-based) is vertex ``(r - 1) * n + c``.
Polyominoes number their cells in row-major order of the listed cells. Two
cells are adjacent exactly when the structure forbids them sharing a symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .errors import DuplicateCell, InvalidPartition, InvalidVertex
from .graph import Graph

KINDS = (
    "equi",
    "row_latin",
    "column_latin",
    "rook",
    "latin",
    "rectangle",
    "single_diagonal",
    "double_diagonal",
    "gerechte",
    "sudoku",
    "polyomino",
    "cube",
)

Cell = tuple[int, int]


@dataclass(frozen=True)
class FamilySpec:
    """What to generate. ``rows``/``cols`` size the board; extra data per kind.

    Use the constructor helpers (:func:`rook`, :func:`sudoku`, ...) rather
    than filling fields by hand.
    """

    kind: str
    rows: int = 0
    cols: int = 0
    regions: tuple[tuple[Cell, ...], ...] = ()
    cells: tuple[Cell, ...] = ()
    box: int = 0


def equi(n: int) -> FamilySpec:
    return FamilySpec("equi", n, n)


def row_latin(n: int) -> FamilySpec:
    return FamilySpec("row_latin", n, n)


def column_latin(n: int) -> FamilySpec:
    return FamilySpec("column_latin", n, n)


def rook(m: int, n: int) -> FamilySpec:
    return FamilySpec("rook", m, n)


def latin(n: int) -> FamilySpec:
    return FamilySpec("latin", n, n)


def rectangle(m: int, n: int) -> FamilySpec:
    """Latin rectangle; for type (r, s, t) use ``rectangle(r, s)`` and ``t`` colors."""
    return FamilySpec("rectangle", m, n)


def single_diagonal(n: int) -> FamilySpec:
    return FamilySpec("single_diagonal", n, n)


def double_diagonal(n: int) -> FamilySpec:
    return FamilySpec("double_diagonal", n, n)


def gerechte(n: int, regions: Sequence[Sequence[Cell]]) -> FamilySpec:
    return FamilySpec("gerechte", n, n, regions=tuple(tuple(tuple(c) for c in r) for r in regions))


def sudoku(b: int) -> FamilySpec:
    return FamilySpec("sudoku", b * b, b * b, box=b)


def polyomino(cells: Sequence[Cell]) -> FamilySpec:
    return FamilySpec("polyomino", cells=tuple(tuple(c) for c in cells))


def cube() -> FamilySpec:
    return FamilySpec("cube")


def box_regions(b: int) -> list[list[Cell]]:
    """The ``b x b`` box partition of a ``b^2 x b^2`` board, boxes in row-major order."""
    out = []
    for br in range(b):
        for bc in range(b):
            out.append([(br * b + i + 1, bc * b + j + 1) for i in range(b) for j in range(b)])
    return out


def row_regions(n: int) -> list[list[Cell]]:
    return [[(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)]


@dataclass(frozen=True)
class GeneratedFamily:
    graph: Graph
    cells: tuple[Cell, ...]  # cells[k - 1] is the cell of vertex k; empty for the cube

    def vertex_of(self, r: int, c: int) -> int:
        return self.cells.index((r, c)) + 1

    def numbering_text(self) -> str:
        return "".join(f"cell {r} {c} -> vertex {k}\n" for k, (r, c) in enumerate(self.cells, start=1))


def _validate_partition(n: int, regions) -> None:
    if len(regions) != n:
        raise InvalidPartition(f"need exactly {n} regions, got {len(regions)}")
    seen = set()
    for reg in regions:
        if len(reg) != n:
            raise InvalidPartition(f"region {list(reg)} does not have {n} cells")
        for r, c in reg:
            if not (1 <= r <= n and 1 <= c <= n):
                raise InvalidPartition(f"cell ({r}, {c}) lies outside the {n}x{n} board")
            if (r, c) in seen:
                raise InvalidPartition(f"cell ({r}, {c}) belongs to two regions")
            seen.add((r, c))


def _board(m: int, n: int, same_row: bool, same_col: bool, groups=()) -> GeneratedFamily:
    if m < 1 or n < 1:
        raise InvalidVertex(f"board dimensions must be positive, got {m}x{n}")
    v = m * n
    adj = [0] * v
    idx = lambda r, c: (r - 1) * n + (c - 1)  # noqa: E731
    if same_row:
        for r in range(1, m + 1):
            mask = sum(1 << idx(r, c) for c in range(1, n + 1))
            for c in range(1, n + 1):
                adj[idx(r, c)] |= mask
    if same_col:
        for c in range(1, n + 1):
            mask = sum(1 << idx(r, c) for r in range(1, m + 1))
            for r in range(1, m + 1):
                adj[idx(r, c)] |= mask
    for grp in groups:
        mask = sum(1 << idx(r, c) for r, c in grp)
        for r, c in grp:
            adj[idx(r, c)] |= mask
    adj = [a & ~(1 << i) for i, a in enumerate(adj)]
    cells = tuple((r, c) for r in range(1, m + 1) for c in range(1, n + 1))
    return GeneratedFamily(Graph(v, adj), cells)


def _cube() -> Graph:
    # 1-2-3-4 outer square, 5-6-7-8 inner square, spokes i -- i+4
    adj = [0] * 8
    pairs = [(1, 2), (2, 3), (3, 4), (4, 1), (5, 6), (6, 7), (7, 8), (8, 5)]
    pairs += [(i, i + 4) for i in range(1, 5)]
    for u, w in pairs:
        adj[u - 1] |= 1 << (w - 1)
        adj[w - 1] |= 1 << (u - 1)
    return Graph(8, adj)


def generate_family(spec: FamilySpec) -> GeneratedFamily:
    kind = spec.kind
    m, n = spec.rows, spec.cols
    if kind == "equi":
        return _board(n, n, False, False)
    if kind == "row_latin":
        return _board(n, n, True, False)
    if kind == "column_latin":
        return _board(n, n, False, True)
    if kind in ("rook", "latin", "rectangle"):
        return _board(m, n, True, True)
    if kind == "single_diagonal":
        return _board(n, n, True, True, [[(i, i) for i in range(1, n + 1)]])
    if kind == "double_diagonal":
        main = [(i, i) for i in range(1, n + 1)]
        back = [(i, n + 1 - i) for i in range(1, n + 1)]
        return _board(n, n, True, True, [main, back])
    if kind == "gerechte":
        _validate_partition(n, spec.regions)
        return _board(n, n, True, True, spec.regions)
    if kind == "sudoku":
        b = spec.box
        if b < 1 or m != b * b:
            raise InvalidPartition(f"sudoku box size must be positive, got {b}")
        return _board(m, m, True, True, box_regions(b))
    if kind == "polyomino":
        cells = spec.cells
        if len(set(cells)) != len(cells):
            dup = next(c for c in cells if cells.count(c) > 1)
            raise DuplicateCell(f"cell {dup} listed twice")
        if not cells:
            raise InvalidVertex("a polyomino needs at least one cell")
        ordered = tuple(sorted(cells))
        adj = []
        for i, (r, c) in enumerate(ordered):
            row = 0
            for j, (r2, c2) in enumerate(ordered):
                if i != j and (r == r2 or c == c2):
                    row |= 1 << j
            adj.append(row)
        return GeneratedFamily(Graph(len(ordered), adj), ordered)
    if kind == "cube":
        return GeneratedFamily(_cube(), ())
    raise ValueError(f"unknown family kind {kind!r}; expected one of {', '.join(KINDS)}")


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
