from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthocolor import families as F
from orthocolor.bounds import (
    UNBOUNDED,
    BoundReport,
    SearchBudget,
    average_degree_bound,
    best_upper_bound,
    clique_bound,
    clique_bound_search,
    cy_implied_lower,
    cy_lower_bound,
    cy_upper_ochi,
    degree_bound,
    edge_bound,
    mnp_bound,
    ochi_lower_avg,
    ochi_lower_clique,
    supergraph_remark_bound,
    upper_bound_reports,
)
from orthocolor.graph import empty_graph


def val(rep):
    return rep.value if rep.applicable else rep.reason


def graph(spec):
    return F.generate_family(spec).graph


@pytest.mark.parametrize(
    "args,expected",
    [((9, 4, 3), 2), ((9, 0, 3), 4), ((9, 6, 3), 1), ((25, 16, 5), 2), ((8, 3, 4), "OrderOutOfRange")],
)
def test_degree_bound(args, expected):
    assert val(degree_bound(*args)) == expected


def test_degree_bound_unbounded():
    assert degree_bound(3, 0, 3).value is UNBOUNDED


@pytest.mark.parametrize(
    "args,expected",
    [((4, 4, 1, 4), 3), ((6, 9, 3, 9), 6), ((2, 2, 1, 2), 1), ((4, 5, 3, 5), 2), ((2, 2, 0, 4), "CliquePreconditions")],
)
def test_clique_bound(args, expected):
    assert val(clique_bound(*args)) == expected


def test_clique_pair_on_double_diagonal():
    # main diagonal vs back diagonal minus the center: each back cell sees 3 main cells
    fam = F.generate_family(F.double_diagonal(5))
    g = fam.graph
    main = [fam.vertex_of(i, i) for i in range(1, 6)]
    back = [fam.vertex_of(i, 6 - i) for i in range(1, 6) if i != 3]
    counts = {sum(g.adjacent(b, a) for a in main) for b in back}
    assert counts == {3}
    assert clique_bound(4, 5, 3, 5).value == 2


def test_clique_bound_search():
    assert clique_bound_search(graph(F.sudoku(3)), 9).value == 6
    assert clique_bound_search(graph(F.rook(3, 3)), 3).value == 2
    assert val(clique_bound_search(empty_graph(9), 3)) == "NoCliquePair"
    rep = clique_bound_search(graph(F.rook(3, 3)), 3)
    assert {"r", "s", "j", "A", "B"} <= set(rep.params)


def test_clique_search_is_deterministic():
    g = graph(F.double_diagonal(5))
    assert clique_bound_search(g, 5) == clique_bound_search(g, 5)


def test_clique_search_heuristic_flag():
    rep = clique_bound_search(graph(F.sudoku(3)), 9, SearchBudget(exhaustive_threshold=40))
    assert rep.params["heuristic"] is True
    rep = clique_bound_search(graph(F.rook(3, 3)), 3)
    assert rep.params["heuristic"] is False


def test_average_and_edge_examples(cube_graph):
    assert average_degree_bound(8, 12, 4).value == 4
    assert average_degree_bound(8, 12, 3).value == 2
    assert average_degree_bound(6, 9, 3).value == 2
    assert average_degree_bound(3, 0, 3).value is UNBOUNDED
    assert edge_bound(8, 12, 4).value == 4
    assert edge_bound(8, 12, 3).value == 2
    assert edge_bound(9, 0, 3).value == 4
    assert edge_bound(3, 0, 4).value is UNBOUNDED


def test_remark_bound():
    assert supergraph_remark_bound(9, 3).value == 4
    assert supergraph_remark_bound(8, 3).value == 4
    assert val(supergraph_remark_bound(5, 3)) == "RemarkRange"
    assert val(supergraph_remark_bound(10, 3)) == "RemarkRange"


def test_best_upper_bound(cube_graph):
    rep = best_upper_bound(cube_graph, 3)
    assert rep.value == 2 and rep.params["winner"] in ("average_degree", "clique_search", "edge")
    assert best_upper_bound(graph(F.rook(3, 3)), 3).value == 2
    rep = best_upper_bound(graph(F.sudoku(3)), 9)
    assert rep.value == 6 and rep.params["winner"] == "clique_search"
    assert best_upper_bound(cube_graph, 8).value is UNBOUNDED


def test_mnp_bound():
    assert mnp_bound(3, 9).value == 2
    assert mnp_bound(4, 8).value == 5
    assert val(mnp_bound(4, 3)) == "TooFewCells"


@pytest.mark.parametrize("n", range(3, 9))
def test_mnp_matches_edge_on_full_square(n):
    assert mnp_bound(n, n * n).value == edge_bound(n * n, n * n * (n - 1), n).value == n - 1


@pytest.mark.parametrize("n,p", [(n, p) for n in range(2, 8) for p in range(n + 1, n * n + 1)])
def test_mnp_matches_edge_on_balanced_placement(n, p):
    # cell k sits at row k mod n, column (k + k // n) mod n: rows and columns both balanced
    cells = [(k % n + 1, (k + k // n) % n + 1) for k in range(p)]
    g = F.generate_family(F.polyomino(cells)).graph
    m = mnp_bound(n, p)
    assert m.applicable
    assert m.value == edge_bound(p, g.edge_count, n).value


def test_cy_lower_bound():
    rep = cy_lower_bound(8, 3, 4)
    assert rep.value == 2 and rep.conditional and rep.direction == "lower"
    assert {"branch_square", "branch_degree"} <= set(rep.params)
    assert cy_lower_bound(16, 3, 8).value == 3
    assert cy_lower_bound(9, 3, 3).value == 2  # n = D and D >= sqrt(v)


def test_cy_upper_ochi():
    assert cy_upper_ochi(8, 3, 4).value == 9
    assert cy_upper_ochi(8, 3, 2).value == 5
    assert cy_upper_ochi(8, 3, 3).value == 7
    assert val(cy_upper_ochi(8, 3, 1)) == "KTooSmall"


def test_ochi_lower_avg():
    assert [ochi_lower_avg(8, 12, k).value for k in (2, 3, 4)] == [3, 4, 4]
    assert ochi_lower_avg(1, 0, 1).value == 1


def test_ochi_lower_clique():
    assert ochi_lower_clique(3, 3, 1, 2).value == 3
    for n in (3, 4):
        assert ochi_lower_clique(n, n, 1, n - 1).value == n
    assert ochi_lower_clique(2, 2, 2, 5).value == 4
    assert ochi_lower_clique(3, 3, 1, 2).conditional
    assert val(ochi_lower_clique(3, 3, 1, 0)) == "KTooSmall"


def test_cy_implied_lower(cube_graph):
    # cy_upper_ochi on the cube is 5, 7, 9 for k = 2, 3, 4
    assert cy_implied_lower(8, 3, 7).value == 3
    assert cy_implied_lower(8, 3, 5).value == 2
    assert cy_implied_lower(8, 3, 4).value == 1
    assert cy_implied_lower(8, 3, 2).value == 0
    assert cy_implied_lower(8, 3, 8).value is UNBOUNDED


def test_bound_report_json_round_trip(cube_graph):
    for rep in upper_bound_reports(cube_graph, 4) + [best_upper_bound(cube_graph, 8)]:
        d = rep.to_dict()
        assert BoundReport.from_dict(d).to_dict() == d
        assert set(d) >= {"bound", "direction", "value", "applicable", "conditional", "params"}


def test_bad_inputs_raise():
    with pytest.raises(ValueError):
        degree_bound(0, 0, 3)
    with pytest.raises(ValueError):
        edge_bound(5, -1, 2)
    with pytest.raises(ValueError):
        average_degree_bound(4, 7, 2)
    with pytest.raises(ValueError):
        degree_bound(4, 4, 2)


@pytest.mark.parametrize("v", [8, 13, 20])
def test_edge_never_worse_than_average(v):
    for n in range(2, v):
        for e in range(0, comb(v, 2) + 1):
            assert edge_bound(v, e, n).value <= average_degree_bound(v, e, n).value


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(n * n - n + 2, n * n))))
def test_degree_bound_nonincreasing_in_delta(nv):
    n, v = nv
    vals = [degree_bound(v, d, n).value for d in range(v)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 30).flatmap(lambda v: st.tuples(st.just(v), st.integers(2, v - 1))))
def test_edge_bound_nonincreasing_in_e(vn):
    v, n = vn
    vals = [edge_bound(v, e, n).value for e in range(comb(v, 2) + 1)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
