import pytest

from orthocolor import families as F
from orthocolor.errors import DuplicateCell, InvalidPartition
from orthocolor.graph import degree_stats, verify_clique


def gen(spec):
    return F.generate_family(spec)


def test_rook_3x3():
    g = gen(F.rook(3, 3)).graph
    s = degree_stats(g)
    assert (g.vertex_count, s.edge_count, s.max_degree) == (9, 18, 4)


def test_double_diagonal_center_degree():
    fam = gen(F.double_diagonal(5))
    assert fam.graph.degree(fam.vertex_of(3, 3)) == 16


def test_diagonal_polyomino_is_edgeless():
    g = gen(F.polyomino([(1, 1), (2, 2), (3, 3), (4, 4)])).graph
    assert g.vertex_count == 4 and g.edge_count == 0


def test_sudoku_2():
    fam = gen(F.sudoku(2))
    assert fam.graph.vertex_count == 16 and fam.graph.edge_count == 56
    assert fam.graph.degree(fam.vertex_of(1, 1)) == 7


def test_sudoku_regions_are_cliques():
    for b in (2, 3):
        fam = gen(F.sudoku(b))
        for region in F.box_regions(b):
            assert verify_clique(fam.graph, [fam.vertex_of(r, c) for r, c in region])


def test_cell_numbering_is_row_major():
    fam = gen(F.rook(2, 3))
    assert fam.vertex_of(2, 1) == 4
    assert fam.numbering_text().splitlines()[3] == "cell 2 1 -> vertex 4"


def test_gerechte_with_rows_is_rook():
    n = 4
    assert gen(F.gerechte(n, F.row_regions(n))).graph == gen(F.rook(n, n)).graph


def test_sudoku_equals_box_gerechte():
    assert gen(F.sudoku(2)).graph == gen(F.gerechte(4, F.box_regions(2))).graph


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_supergraph_chain(n):
    rook_e = set(gen(F.rook(n, n)).graph.edges())
    single = set(gen(F.single_diagonal(n)).graph.edges())
    double = set(gen(F.double_diagonal(n)).graph.edges())
    assert rook_e <= single <= double


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 5), (4, 4)])
def test_degrees(m, n):
    assert degree_stats(gen(F.equi(n)).graph).max_degree == 0
    assert degree_stats(gen(F.rook(m, n)).graph).max_degree == m + n - 2


def test_row_and_column_latin():
    assert gen(F.row_latin(3)).graph.adjacent(1, 3)
    assert not gen(F.row_latin(3)).graph.adjacent(1, 4)
    assert gen(F.column_latin(3)).graph.adjacent(1, 4)


def test_cube_is_three_regular_bipartite():
    g = gen(F.cube()).graph
    assert set(g.degrees()) == {3} and g.edge_count == 12
    side = {1, 3, 6, 8}
    assert all((u in side) != (w in side) for u, w in g.edges())


def test_partition_errors():
    with pytest.raises(InvalidPartition):
        gen(F.gerechte(2, [[(1, 1), (1, 2)]]))
    with pytest.raises(InvalidPartition):
        gen(F.gerechte(2, [[(1, 1), (1, 2)], [(1, 1), (2, 2)]]))
    with pytest.raises(InvalidPartition):
        gen(F.gerechte(2, [[(1, 1), (1, 2)], [(2, 1), (3, 2)]]))
    with pytest.raises(DuplicateCell):
        gen(F.polyomino([(1, 1), (1, 1)]))
    with pytest.raises(ValueError):
        gen(F.FamilySpec("hexagon"))
