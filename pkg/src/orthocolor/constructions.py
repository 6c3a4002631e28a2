"""Constructions that produce orthogonal families and latin squares.

Field elements of GF(p^e) are encoded as integers ``0..q-1``: the element
``a_{e-1} x^{e-1} + ... + a_0`` is ``sum(a_i * p**i)``, so the integer order
is the lexicographic order of coefficient vectors. Square symbols are the
encoded element plus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .colorings import Coloring, ColoringFamily, is_proper, verify_family
from .errors import ImproperColoring, NotBijective, NotLatin, NotPrimePower, SizeMismatch, WrongOrder
from .families import generate_family, rook
from .graph import Graph, or_product

MAX_FIELD_ORDER = 64

# Conway polynomials, coefficients from x^0 upwards (monic, leading 1 included)
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, e)`` with ``q == p**e`` and ``p`` prime, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    return (p, e) if rest == 1 else None


class GF:
    """The finite field of order ``q`` with elements encoded as ``0..q-1``."""

    def __init__(self, q: int, max_order: int = MAX_FIELD_ORDER):
        pe = prime_power(q)
        if pe is None:
            raise NotPrimePower(f"{q} is not a prime power")
        if q > max_order:
            raise NotPrimePower(f"field order {q} exceeds the supported cap {max_order}")
        self.q = q
        self.p, self.e = pe
        if self.e > 1 and pe not in IRREDUCIBLE:
            raise NotPrimePower(f"no built-in irreducible polynomial for GF({q})")
        self.modulus = IRREDUCIBLE.get(pe, (0, 1))
        self._mul = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(ds))

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def _slow_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        mod = self.modulus
        for deg in range(2 * e - 2, e - 1, -1):
            coef = prod[deg]
            if coef:
                for t in range(e + 1):
                    prod[deg - e + t] = (prod[deg - e + t] - coef * mod[t]) % p
        return self._undigits(prod[:e])


@dataclass(frozen=True)
class Square:
    """An ``n x n`` grid of symbols ``1..n`` (not necessarily latin)."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise SizeMismatch("square rows must all have length equal to the order")
        if any(not 1 <= x <= n for row in grid for x in row):
            raise NotLatin(f"symbols must lie in 1..{n}")

    @property
    def order(self) -> int:
        return len(self.grid)

    def is_row_latin(self) -> bool:
        n = self.order
        return all(len(set(row)) == n for row in self.grid)

    def is_column_latin(self) -> bool:
        n = self.order
        return all(len({row[j] for row in self.grid}) == n for j in range(n))

    def is_latin(self) -> bool:
        return self.is_row_latin() and self.is_column_latin()

    def has_distinct_diagonal(self) -> bool:
        return len({self.grid[i][i] for i in range(self.order)}) == self.order

    def to_coloring(self) -> Coloring:
        """Row-major reading, matching the rook-graph cell numbering."""
        return Coloring(self.order, tuple(x for row in self.grid for x in row))

    def is_orthogonal_to(self, other: "Square") -> bool:
        pairs = {(a, b) for ra, rb in zip(self.grid, other.grid) for a, b in zip(ra, rb)}
        return len(pairs) == self.order**2

    def to_text(self) -> str:
        return "".join(" ".join(str(x) for x in row) + "\n" for row in self.grid)

    @classmethod
    def from_coloring(cls, c: Coloring, n: int | None = None):
        n = n or c.color_count
        if len(c) != n * n:
            raise WrongOrder(f"coloring of length {len(c)} is not an {n}x{n} square")
        a = c.assignment
        return cls(tuple(tuple(a[r * n:(r + 1) * n]) for r in range(n)))

    @classmethod
    def from_text(cls, text: str):
        rows = [tuple(int(t) for t in line.split()) for line in text.splitlines() if line.strip()]
        return cls(tuple(rows))


class LatinSquare(Square):
    def __post_init__(self):
        super().__post_init__()
        if not self.is_latin():
            raise NotLatin("a row or column repeats a symbol")


def squares_are_mols(squares: Sequence[Square]) -> bool:
    return all(s.is_latin() for s in squares) and all(
        squares[i].is_orthogonal_to(squares[j]) for i in range(len(squares)) for j in range(i + 1, len(squares))
    )


def finite_field_mols(q: int, max_order: int = MAX_FIELD_ORDER) -> list[LatinSquare]:
    """The ``q - 1`` squares ``L_a(i, j) = a*i + j`` over GF(q), ``a`` nonzero."""
    field_ = GF(q, max_order)
    squares = []
    for a in range(1, q):
        rows = []
        for i in range(q):
            ai = field_.mul(a, i)
            rows.append(tuple(field_.add(ai, j) + 1 for j in range(q)))
        squares.append(LatinSquare(tuple(rows)))
    assert squares_are_mols(squares)
    return squares


@dataclass(frozen=True)
class MolsExtraction:
    mols: tuple[LatinSquare, ...]
    row_square: Square  # constant rows: entry (i, j) is i
    column_square: Square  # constant columns: entry (i, j) is j
    single_diagonal_family: tuple[LatinSquare, ...]
    sigma: tuple[int, ...] | None  # new row i is old row sigma[i] (0-based)

    @property
    def equi_family(self) -> tuple[Square, ...]:
        return tuple(self.mols) + (self.row_square, self.column_square)

    @property
    def row_latin_family(self) -> tuple[Square, ...]:
        return tuple(self.mols) + (self.column_square,)


def constant_squares(n: int) -> tuple[Square, Square]:
    rows = Square(tuple(tuple(i + 1 for _ in range(n)) for i in range(n)))
    cols = Square(tuple(tuple(j + 1 for j in range(n)) for _ in range(n)))
    return rows, cols


def mols_from_colorings(fam: ColoringFamily | Sequence[Coloring], n: int | None = None) -> MolsExtraction:
    """Read ``k`` orthogonal ``n``-colorings of an order-``n^2`` graph as squares.

    The last two colorings index rows and columns; cell ``(i, j)`` of square
    ``m`` is the color ``C_m`` gives the vertex colored ``i`` by ``C_{k-1}``
    and ``j`` by ``C_k``.
    """
    members = list(fam)
    if len(members) < 2:
        raise SizeMismatch("need at least two colorings")
    n = n or members[0].color_count
    v = len(members[0])
    if v != n * n:
        raise WrongOrder(f"graph order {v} is not {n}^2")
    if not all(c.is_total() for c in members):
        raise NotBijective("every coloring must be total")
    if any(c.color_count != n for c in members):
        raise SizeMismatch("colorings must share the color count n")
    if isinstance(fam, ColoringFamily) and not verify_family(fam.graph, fam).ok:
        raise NotBijective("family is not mutually orthogonal and proper")
    rowc, colc = members[-2].assignment, members[-1].assignment
    cell_of: dict[tuple[int, int], int] = {}
    for x, (i, j) in enumerate(zip(rowc, colc)):
        if (i, j) in cell_of:
            raise NotBijective(f"vertices {cell_of[(i, j)] + 1} and {x + 1} share the pair ({i}, {j})")
        cell_of[(i, j)] = x
    squares = []
    for c in members[:-2]:
        a = c.assignment
        grid = tuple(tuple(a[cell_of[(i, j)]] for j in range(1, n + 1)) for i in range(1, n + 1))
        squares.append(LatinSquare(grid))
    if not squares_are_mols(squares):
        raise NotBijective("extracted squares are not mutually orthogonal")
    row_sq, col_sq = constant_squares(n)
    sigma = None
    single = ()
    if squares:
        last = squares[-1].grid
        # new row i = the old row holding symbol 1 in column i, so the
        # permuted last square is constant (all 1) on the main diagonal
        sigma = tuple(next(r for r in range(n) if last[r][i] == 1) for i in range(n))
        permuted = [LatinSquare(tuple(sq.grid[sigma[i]] for i in range(n))) for sq in squares]
        single = tuple(permuted[:-1])
        assert all(s.has_distinct_diagonal() for s in single)
    return MolsExtraction(tuple(squares), row_sq, col_sq, single, sigma)


def compose_colorings(g: Graph, a: Coloring, h: Graph, b: Coloring) -> Coloring:
    """Color vertex ``(u, x)`` of the or-product with the pair ``(a(u), b(x))``.

    The pair is encoded as ``(a(u) - 1) * n_b + b(x)``.
    """
    for name, graph, c in (("a", g, a), ("b", h, b)):
        if len(c) != graph.vertex_count:
            raise SizeMismatch(f"coloring {name} does not match its graph")
        if not c.is_total() or not is_proper(graph, c):
            raise ImproperColoring(f"coloring {name} must be total and proper")
    nb = b.color_count
    out = tuple((ca - 1) * nb + cb for ca in a.assignment for cb in b.assignment)
    return Coloring(a.color_count * nb, out)


def compose_families(g: Graph, fa: Sequence[Coloring], h: Graph, fb: Sequence[Coloring], check: bool = True):
    """Pair the i-th members of two families on ``g`` and ``h``; returns (product graph, family)."""
    prod = or_product(g, h)
    k = min(len(fa), len(fb))
    fam = ColoringFamily(prod, [compose_colorings(g, fa[i], h, fb[i]) for i in range(k)])
    if check and k:
        report = fam.check()
        assert report.ok, report
    return prod, fam


def rook_in_product_index(m: int, n: int, row: int, col: int) -> int:
    """0-based vertex of ``R_m (or) R_n`` holding cell ``(row, col)`` (0-based) of ``R_mn``."""
    i1, i2 = divmod(row, n)
    j1, j2 = divmod(col, n)
    return (i1 * m + j1) * (n * n) + (i2 * n + j2)


def kronecker_mols(m: int, n: int) -> list[LatinSquare]:
    """``min(m - 1, n - 1)`` MOLS of order ``m * n`` from the finite-field squares of orders m and n."""
    ga = finite_field_mols(m)
    gb = finite_field_mols(n)
    rm = generate_family(rook(m, m)).graph
    rn = generate_family(rook(n, n)).graph
    _, fam = compose_families(rm, [s.to_coloring() for s in ga], rn, [s.to_coloring() for s in gb], check=False)
    order = m * n
    squares = []
    for c in fam:
        a = c.assignment
        grid = tuple(
            tuple(a[rook_in_product_index(m, n, r, col)] for col in range(order)) for r in range(order)
        )
        squares.append(LatinSquare(grid))
    assert squares_are_mols(squares)
    return squares
