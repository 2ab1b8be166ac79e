import numpy as np
import pytest
from hypothesis import given, settings

from rcring.errors import InvalidPath, WrongCaseError
from rcring.group import BitVec, Params, inv_idx, mul_idx, reverse_bits, rotate
from rcring.oracle import bfs_distances
from rcring.routing import (
    AxSequence,
    Path,
    candidate_sequences_case1,
    check_path,
    distance,
    distance_from_origin,
    leaps_case1,
    leaps_case2,
    optimal_sequence,
    origin_distance_table,
    origin_l,
    origin_l_table,
    origin_path,
    realize_path,
    realize_paths,
    shortest_path,
    sorted_schedule,
    validate_paths,
    yz_schedules,
)
from rcring.topology import build_graph

from conftest import instance_and_vertex, params

Q313 = Params(3, 1, 3)
Q424 = Params(4, 2, 4)
B = BitVec.parse


def test_sorted_schedule_examples():
    assert sorted_schedule(B("111"), 0, Q313) == ((0, 0, 0, 1, 2, 3), 2)
    assert sorted_schedule(B("000"), 2, Q313) == ((0, 2, 3), 1)
    # the end entry sorts after a bit at the same position, so t* is the largest index
    assert sorted_schedule(B("110"), 1, Q313) == ((0, 0, 1, 1, 3), 3)


def test_leaps_case1_examples():
    lp = leaps_case1(B("111"), 0, Q313)
    assert (lp.leap1, lp.leap2) == (0, 1)
    lp = leaps_case1(B("111"), Q313.r // 2, Q313)
    assert (lp.leap1, lp.leap2) == (1, 1)
    lp = leaps_case1(B("110"), 1, Q313)
    assert (lp.leap1, lp.leap2) == (1, 2)


def test_candidates_case1():
    c1, c2 = candidate_sequences_case1(B("111"), 0, Q313)
    assert min(c1.cost(3), c2.cost(3)) == 3 == c2.cost(3)
    c1, c2 = candidate_sequences_case1(B("110"), 1, Q313)
    assert min(c1.cost(3), c2.cost(3)) == 1
    assert distance_from_origin(B("110"), 1, Q313) == 3


def test_case_guards():
    with pytest.raises(WrongCaseError):
        leaps_case1(B("1111"), 0, Q424)
    with pytest.raises(WrongCaseError):
        leaps_case2(B("111"), 0, Q313)


def test_yz_schedules():
    assert yz_schedules(B("1111"), Q424) == ((0, 0, 1, 1), (2, 2, 3, 3), (0, 0, 0, 0))
    assert yz_schedules(B("100"), Params(3, 2, 3)) == ((0,), (1,), (0,))
    assert yz_schedules(B("0000"), Q424) == ((), (), ())


def test_leaps_case2_examples():
    lp = leaps_case2(B("1111"), 0, Q424)
    assert (lp.h, lp.leap1) == (3, 1)
    assert origin_l(B("1111"), 0, Q424) == 2
    assert leaps_case2(B("1111"), 2, Q424).leap1 == 0
    assert origin_l(B("1111"), 2, Q424) == 2
    assert distance_from_origin(B("1111"), 2, Q424) == 6
    for x in range(Q424.r // 2 + 1):
        assert leaps_case2(B("0000"), x, Q424).leap1 == Q424.qbar - x


def test_distance_examples():
    assert distance_from_origin(B("111"), 0, Q313) == 6
    assert distance_from_origin(B("1111"), 0, Q424) == 6
    u = Q313.parse_vertex("100@1")
    assert distance(u, u, Q313) == 0
    assert distance(u, Q313.parse_vertex("100@2"), Q313) == 1


@given(params())
def test_ring_only_targets(p):
    for x in range(p.r):
        assert distance_from_origin(0, x, p) == min(x, p.r - x)


def test_optimal_sequence_examples():
    assert optimal_sequence(0, 2, Q313) == AxSequence((0, 2), ())
    seq = optimal_sequence(B("110"), 1, Q313)
    assert seq.cost(3) == 1 and sorted(seq.directions) == [1, 2]
    assert optimal_sequence(B("1111"), 0, Q424).cost(4) == 2


def test_realize_examples():
    assert [str(v) for v in realize_path(AxSequence((0, 1), ()), Q313).vertices()] == ["000@0", "000@1"]
    path = origin_path(B("111"), 0, Q313)
    assert path.length == 6 and sorted(path.cube_directions()) == [1, 2, 3]
    check_path(path)


def test_listed_tie_path_is_also_shortest():
    listed = ["000@0", "100@0", "100@1", "110@1", "110@2", "111@2", "111@0"]
    path = Path(Q313, np.array([Q313.index(Q313.parse_vertex(s)) for s in listed]))
    check_path(path)
    assert path.length == distance_from_origin(B("111"), 0, Q313)


def test_realize_rejects_bad_sequences():
    with pytest.raises(InvalidPath):
        realize_path(AxSequence((0, 1, 0), (1,)), Q313)  # direction 1 lives at x = 0
    with pytest.raises(InvalidPath):
        realize_path(AxSequence((0, 0, 0, 0), (1, 1)), Q313)
    with pytest.raises(InvalidPath):
        check_path(Path(Q313, np.array([0, 4])))


@settings(max_examples=200)
@given(instance_and_vertex())
def test_router_matches_bfs(pv):
    p, v = pv
    dist = bfs_distances(build_graph(p)).dist
    assert distance_from_origin(v // p.r, v % p.r, p) == dist[v]


@settings(max_examples=200)
@given(instance_and_vertex())
def test_paths_are_shortest_and_flip_each_bit_once(pv):
    p, v = pv
    a, x = divmod(v, p.r)
    path = origin_path(a, x, p)
    check_path(path)
    assert path.indices[-1] == v
    assert path.length == distance_from_origin(a, x, p)
    assert sorted(path.cube_directions()) == [i for i in range(1, p.n + 1) if a >> (i - 1) & 1]


@pytest.mark.parametrize("t", [(3, 1, 3), (3, 2, 3), (4, 2, 4), (4, 4, 3), (6, 2, 3), (6, 3, 4)])
def test_all_pairs_distance(t):
    p = Params(*t)
    g = build_graph(p)
    origin = origin_distance_table(p)
    for u in range(p.order):
        bfs = bfs_distances(g, u).dist
        # distance(u, v) = distance from the identity to u^-1 v
        w = np.array([mul_idx(inv_idx(u, p), v, p) for v in range(p.order)])
        assert (origin[w] == bfs).all()
    uv = [(p.vertex_at(i), p.vertex_at(j)) for i, j in [(1, 5), (7, p.order - 1), (3, 3)]]
    for u, v in uv:
        assert distance(u, v, p) == bfs_distances(g, u).dist[p.index(v)]
        sp = shortest_path(u, v, p)
        check_path(sp)
        assert (sp.indices[0], sp.indices[-1]) == (p.index(u), p.index(v))


def test_bulk_table_matches_scalar(small):
    table = origin_l_table(small)
    for v in range(small.order):
        a, x = divmod(v, small.r)
        assert table[a, x] == origin_l(a, x, small)


def test_batch_realization_matches_scalar(small):
    idx = np.arange(small.order)
    seqs = [optimal_sequence(int(v) // small.r, int(v) % small.r, small) for v in idx]
    flat, off = realize_paths(seqs, small)
    assert not validate_paths(flat, off, small, idx).any()
    for k, seq in enumerate(seqs):
        assert (flat[off[k] : off[k + 1]] == realize_path(seq, small).indices).all()


def test_batch_validation_catches_a_broken_path():
    seqs = [optimal_sequence(a, 0, Q313) for a in range(8)]
    flat, off = realize_paths(seqs, Q313)
    flat = flat.copy()
    flat[off[7] + 1] = flat[off[7] + 3]
    bad = validate_paths(flat, off, Q313, np.arange(8) * 3)
    assert bad.tolist() == [False] * 7 + [True]


def test_origin_fixing_symmetry(small):
    p, l = small, origin_l_table(small)
    for a in range(1 << p.n):
        m = rotate(reverse_bits(a, p.n), p.d, p.n)
        for x in range(p.r):
            assert l[a, x] == l[m, (-x) % p.r]
    plain = np.array([reverse_bits(a, p.n) for a in range(1 << p.n)])
    assert (l.sum(axis=0) == l[plain][:, (-np.arange(p.r)) % p.r].sum(axis=0)).all()


def test_plain_reversal_is_not_a_symmetry():
    p = Params(2, 1, 4)
    assert origin_l(B("10"), 0, p) == 0
    assert origin_l(B("01"), 0, p) == 2
