import pytest
from hypothesis import given, settings

from rcring.errors import BudgetExceeded, NotAnEdge, ParamsError
from rcring.group import GeneralParams, Params
from rcring.topology import (
    Kind,
    build_general,
    build_graph,
    edge_orbit,
    export,
    incidence_positions,
    isom_to_rcr,
    neighbours,
    ring_cube_incidence,
    special,
)

from conftest import params

Q313 = Params(3, 1, 3)
Q424 = Params(4, 2, 4)


def test_neighbours_examples():
    got = neighbours(Q313.parse_vertex("000@0"), Q313)
    assert [(str(nb.vertex), nb.kind) for nb in got] == [
        ("100@0", Kind.CUBE),
        ("000@1", Kind.RING),
        ("000@2", Kind.RING),
    ]
    got = {str(nb.vertex) for nb in neighbours(Q424.parse_vertex("0000@1"), Q424)}
    assert got == {"0010@1", "0001@1", "0000@2", "0000@0"}


@pytest.mark.parametrize("t,nv,ne", [((3, 1, 3), 24, 36), ((3, 2, 3), 24, 48), ((4, 2, 4), 64, 128)])
def test_graph_sizes(t, nv, ne):
    g = build_graph(Params(*t))
    assert (g.n_vertices, g.n_edges) == (nv, ne)


@settings(max_examples=30)
@given(params())
def test_regular_and_connected(p):
    g = build_graph(p)
    assert (g.degrees() == p.d + 2).all()
    assert g.connected
    assert g.n_edges == 2 ** (p.n - 1) * p.r * (p.d + 2)


def test_ring_incidence():
    assert ring_cube_incidence(0, 2, Q313) == [1]
    assert ring_cube_incidence(0, 1, Q424) == [0, 2]


@settings(max_examples=30)
@given(params())
def test_ring_incidence_matches_direction_scan(p):
    for j in range(1, p.n + 1):
        got = ring_cube_incidence(0, j, p)
        assert len(got) == p.multiplicity
        assert got == incidence_positions(j, p)


def test_edge_orbits():
    assert edge_orbit(Q313.parse_vertex("010@1"), Q313.parse_vertex("010@2"), Q313) == 0
    assert edge_orbit(Q424.parse_vertex("0000@1"), Q424.parse_vertex("0010@1"), Q424) == 1
    with pytest.raises(NotAnEdge):
        edge_orbit(Q313.parse_vertex("000@0"), Q313.parse_vertex("110@0"), Q313)


def test_orbit_census():
    import numpy as np

    sizes = np.bincount(build_graph(Q313).edge_orbits())
    assert sizes.tolist() == [24, 12]


def test_general_family():
    g = build_general(GeneralParams(3, 1, 4))
    assert g.n_vertices == 32 and (g.degrees() == 3).all() and not g.is_cayley()
    assert not build_general(GeneralParams(4, 1, 3)).connected
    with pytest.raises(ParamsError):
        GeneralParams(4, 1, 2)


def test_isomorphism_map():
    p = GeneralParams(3, 1, 3)
    assert str(isom_to_rcr(p.parse_vertex("110@1"), p)) == "110@2"
    assert str(isom_to_rcr(p.parse_vertex("101@0"), p)) == "101@0"
    gm, g = build_general(p), build_graph(Q313)
    target = {tuple(sorted(e[:2])) for e in g.edge_array().tolist()}
    for u, w, _ in gm.edge_array().tolist():
        fu = Q313.index(isom_to_rcr(p.vertex_at(u), p))
        fw = Q313.index(isom_to_rcr(p.vertex_at(w), p))
        assert tuple(sorted((fu, fw))) in target
    with pytest.raises(ParamsError):
        isom_to_rcr(GeneralParams(3, 1, 4).parse_vertex("000@1"), GeneralParams(3, 1, 4))


def test_special_families():
    assert special("ccc", 3) == Params(3, 1, 3)
    assert special("cor", d=2, r=3) == Params(6, 2, 3)
    with pytest.raises(ParamsError):
        special("hypercube", 4)


def test_export_edgelist():
    text = export(build_graph(Q313), "edgelist")
    lines = text.splitlines()
    assert lines[0] == "rcr n=3 d=1 r=3"
    assert len(lines) - 1 == 36
    assert text == export(build_graph(Q313), "edgelist")
    body = lines[1:]
    assert body == sorted(body)
    assert all(u < w for u, w, _ in (ln.split() for ln in body))


def test_export_dot():
    text = export(build_graph(Q313), "dot")
    assert text.startswith("// rcr n=3 d=1 r=3\ngraph rcr {")
    assert text.count("--") == 36 and "[orbit=" in text


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_graph(Params(6, 2, 3), budget=100)
