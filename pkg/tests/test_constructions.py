import itertools

import pytest

from orthocolor.bounds import degree_bound
from orthocolor.colorings import Coloring, ColoringFamily, verify_family
from orthocolor.constructions import (
    GF,
    IRREDUCIBLE,
    LatinSquare,
    Square,
    compose_colorings,
    compose_families,
    constant_squares,
    finite_field_mols,
    kronecker_mols,
    mols_from_colorings,
    prime_power,
    squares_are_mols,
)
from orthocolor.errors import ImproperColoring, NotBijective, NotLatin, NotPrimePower, WrongOrder
from orthocolor.families import generate_family, rook
from orthocolor.graph import empty_graph, or_product


def rook_graph(n):
    return generate_family(rook(n, n)).graph


def coordinate_colorings(n):
    rows, cols = constant_squares(n)
    return [rows.to_coloring(), cols.to_coloring()]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(49) == (7, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None


@pytest.mark.parametrize("p,e", sorted(IRREDUCIBLE))
def test_table_polynomials_are_irreducible(p, e):
    # monic degree-e polynomial over GF(p) with no monic factor of degree 1..e//2
    coeffs = IRREDUCIBLE[(p, e)]

    def polymod(a, b):
        a = a[:]
        while len(a) >= len(b):
            if a[-1]:
                f = a[-1] * pow(b[-1], -1, p) % p
                shift = len(a) - len(b)
                for i, bc in enumerate(b):
                    a[shift + i] = (a[shift + i] - f * bc) % p
            a.pop()
        return a

    full = list(coeffs)
    assert len(full) == e + 1 and full[-1] == 1
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            assert any(polymod(full, divisor)), (divisor, full)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32])
def test_field_axioms(q):
    f = GF(q)
    for a in range(1, q):
        assert sorted(f.mul(a, b) for b in range(q)) == list(range(q))
    for a, b, c in itertools.islice(itertools.product(range(q), repeat=3), 500):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_finite_field_examples():
    sq3 = finite_field_mols(3)
    assert len(sq3) == 2
    assert verify_family(rook_graph(3), [s.to_coloring() for s in sq3]).ok
    assert len(finite_field_mols(4)) == 3 and squares_are_mols(finite_field_mols(4))
    with pytest.raises(NotPrimePower):
        finite_field_mols(6)
    with pytest.raises(NotPrimePower):
        finite_field_mols(81)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_finite_field_meets_degree_bound(q):
    squares = finite_field_mols(q)
    assert len(squares) == q - 1 == degree_bound(q * q, 2 * q - 2, q).value


def test_field_squares_are_deterministic():
    assert finite_field_mols(8) == finite_field_mols(8)
    assert finite_field_mols(4)[0].grid[1] == (2, 1, 4, 3)


def test_square_text_round_trip():
    sq = finite_field_mols(5)[1]
    assert LatinSquare.from_text(sq.to_text()) == sq
    assert LatinSquare.from_coloring(sq.to_coloring()) == sq
    assert Square.from_coloring(sq.to_coloring()).grid == sq.grid
    with pytest.raises(NotLatin):
        LatinSquare(((1, 1), (2, 2)))


def test_extract_two_mols_of_order_three():
    squares = finite_field_mols(3)
    members = [s.to_coloring() for s in squares] + coordinate_colorings(3)
    ext = mols_from_colorings(ColoringFamily(empty_graph(9), members))
    assert list(ext.mols) == squares
    assert squares_are_mols(ext.mols)
    assert len(ext.equi_family) == 4
    assert len(ext.single_diagonal_family) == 1
    assert all(s.has_distinct_diagonal() for s in ext.single_diagonal_family)


def test_extract_boundary_k2():
    ext = mols_from_colorings(ColoringFamily(empty_graph(9), coordinate_colorings(3)))
    assert ext.mols == () and ext.sigma is None
    assert len(ext.row_latin_family) == 1 and ext.row_latin_family[0].is_row_latin()
    assert len(ext.equi_family) == 2


def test_extract_errors():
    c = Coloring(3, (1, 1, 1, 2, 2, 2, 3, 3))
    with pytest.raises(WrongOrder):
        mols_from_colorings([c, c])
    same = coordinate_colorings(3)[0]
    with pytest.raises(NotBijective):
        mols_from_colorings([same, same])


@pytest.mark.parametrize("q", [3, 4, 5])
def test_extract_inverts_embedding(q):
    squares = finite_field_mols(q)
    for k in range(2, q + 2):
        members = [s.to_coloring() for s in squares[: k - 2]] + coordinate_colorings(q)
        ext = mols_from_colorings(ColoringFamily(empty_graph(q * q), members))
        back = [s.to_coloring() for s in ext.mols] + coordinate_colorings(q)
        assert back == members
        assert verify_family(empty_graph(q * q), back).ok


def test_sigma_makes_last_square_constant_diagonal():
    squares = finite_field_mols(5)
    members = [s.to_coloring() for s in squares] + coordinate_colorings(5)
    ext = mols_from_colorings(members)
    last = ext.mols[-1].grid
    permuted = [last[ext.sigma[i]] for i in range(5)]
    assert {permuted[i][i] for i in range(5)} == {1}
    assert len(ext.single_diagonal_family) == 3


def test_compose_examples():
    g, h = empty_graph(2), empty_graph(3)
    a, b = Coloring(2, (1, 2)), Coloring(3, (1, 2, 3))
    assert compose_colorings(g, a, h, b).is_rainbow()
    const = compose_colorings(g, Coloring(1, (1, 1)), h, Coloring(1, (1, 1, 1)))
    assert set(const.assignment) == {1}
    r3 = rook_graph(3)
    fam = [s.to_coloring() for s in finite_field_mols(3)]
    prod, composed = compose_families(r3, fam, r3, fam)
    assert prod == or_product(r3, r3) and composed.verified and len(composed) == 2
    with pytest.raises(ImproperColoring):
        compose_colorings(r3, Coloring(3, (1,) * 9), r3, fam[0])


def test_compose_preserves_orthogonality(cube_graph, cube_colorings, diagonal_polyomino):
    from orthocolor.search import find_family

    families = [
        (cube_graph, cube_colorings[:3]),
        (diagonal_polyomino, list(find_family(diagonal_polyomino, 2, 3).witness)),
        (rook_graph(3), [s.to_coloring() for s in finite_field_mols(3)]),
    ]
    for (g, fa), (h, fb) in itertools.product(families, repeat=2):
        if g.vertex_count * h.vertex_count > 100:
            continue
        _, fam = compose_families(g, fa, h, fb, check=False)
        assert verify_family(fam.graph, fam).ok


@pytest.mark.parametrize("m,n,count", [(3, 3, 2), (2, 3, 1), (4, 5, 3), (2, 2, 1)])
def test_kronecker(m, n, count):
    squares = kronecker_mols(m, n)
    assert len(squares) == count
    assert all(s.order == m * n and s.is_latin() for s in squares)
    assert verify_family(rook_graph(m * n), [s.to_coloring() for s in squares]).ok


def test_kronecker_rejects_non_prime_power():
    with pytest.raises(NotPrimePower):
        kronecker_mols(6, 3)
