import numpy as np
import pytest
from hypothesis import given, settings

from rcring.errors import BudgetExceeded, ParamsError
from rcring.group import GeneralParams, Params
from rcring.oracle import (
    all_pairs_distance_sum,
    bfs_diameter,
    bfs_distances,
    bfs_total_distance,
    brute_force_bisection,
    census_bases,
    cut_size,
    cycle_bisection,
    enumerate_short_paths,
    enumerate_shortest_paths,
    non_transitivity_witness,
    t_neighbour_census,
)
from rcring.topology import build_general, build_graph

from conftest import params

Q313 = Params(3, 1, 3)


def test_bfs_basics():
    g = build_graph(Q313)
    field = bfs_distances(g)
    assert field.dist.max() == 6
    assert field[Q313.index(Q313.parse_vertex("000@1"))] == 1
    assert bfs_diameter(g) == 6
    assert bfs_diameter(build_graph(Params(4, 2, 4))) == 6
    assert 54 <= bfs_total_distance(g) <= 94


def test_single_source_refused_on_general_graphs():
    g = build_general(GeneralParams(3, 1, 4))
    with pytest.raises(ParamsError):
        bfs_diameter(g)
    assert bfs_diameter(g, multi_source=True) >= bfs_distances(g, 0).dist.max()


def test_all_pairs_sum_is_half_of_v_times_td():
    g = build_graph(Q313)
    assert all_pairs_distance_sum(g) == Q313.order * bfs_total_distance(g) // 2


def test_shortest_path_enumeration():
    g = build_graph(Q313)
    paths, truncated = enumerate_shortest_paths(g, 5, 5)
    assert paths == [[5]] and not truncated
    paths, _ = enumerate_shortest_paths(g, 0, 1)
    assert paths == [[0, 1]]
    target = Q313.index(Q313.parse_vertex("111@0"))
    paths, truncated = enumerate_shortest_paths(g, 0, target)
    assert paths and not truncated
    assert all(len(p) - 1 == 6 for p in paths)
    assert len({tuple(p) for p in paths}) == len(paths)


def test_shortest_path_cap_is_reported():
    g = build_graph(Q313)
    target = Q313.index(Q313.parse_vertex("111@0"))
    paths, truncated = enumerate_shortest_paths(g, 0, target, cap=1)
    assert len(paths) == 1 and truncated


def test_short_path_enumeration():
    g = build_graph(Q313)
    paths = enumerate_short_paths(g, 0, 1, slack=2)
    lengths = sorted(len(p) - 1 for p in paths)
    assert lengths[0] == 1 and max(lengths) <= 3
    assert all(len(set(p)) == len(p) for p in paths)


@settings(max_examples=20)
@given(params())
def test_census_identical_on_cayley_graphs(p):
    g = build_graph(p)
    c1, c2 = (t_neighbour_census(g, b).counts for b in census_bases(p))
    assert c1 == c2
    assert c1[0] == 1 and c1[1] == p.d + 2
    assert sum(c1) == p.order


@pytest.mark.parametrize("t", [(3, 1, 4), (3, 1, 5), (4, 1, 5)])
def test_non_transitivity_witness(t):
    w = non_transitivity_witness(GeneralParams(*t))
    assert w is not None
    step, c1, c2 = w
    assert c1 != c2 and step >= 1


def test_no_witness_when_divisible():
    assert non_transitivity_witness(GeneralParams(3, 1, 3)) is None


def test_disconnected_general_graph_is_refused():
    with pytest.raises(ParamsError):
        non_transitivity_witness(GeneralParams(4, 1, 3))


def test_brute_force_bisection():
    g = build_graph(Q313)
    cut, side = brute_force_bisection(g)
    assert cut == 4
    assert abs(2 * int(side.sum()) - Q313.order) <= 1
    assert cut_size(g, side) == cut
    with pytest.raises(BudgetExceeded):
        brute_force_bisection(build_graph(Params(4, 1, 4)))


def test_cycle_bisection():
    assert cycle_bisection(6) == 2
    assert cycle_bisection(7) == 2


def test_cut_size_of_everything_is_zero():
    g = build_graph(Q313)
    assert cut_size(g, np.ones(Q313.order, dtype=bool)) == 0
