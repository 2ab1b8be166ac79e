"""Explicit graphs for Q_n(d, r) and the general family Q_n^-(d, r)."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceeded, NotAnEdge, ParamsError
from .group import (
    BitVec,
    GeneralParams,
    Params,
    Vertex,
    coord,
    direction_set,
    direction_set_minus,
    flippable_positions,
)

DEFAULT_BUDGET = 1 << 20


class Kind(str, Enum):
    RING = "ring"
    CUBE = "cube"


class Neighbour(NamedTuple):
    vertex: Vertex
    kind: Kind
    step: int  # cube: direction j in 1..n; ring: +1 or -1


@dataclass(frozen=True)
class Edge:
    u: Vertex
    v: Vertex
    kind: Kind
    direction: int | None = None

    def endpoints(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v) if str(self.u) <= str(self.v) else (self.v, self.u)


def neighbours(v: Vertex, p: GeneralParams, minus: bool = False) -> list[Neighbour]:
    """The d + 2 neighbours of ``v``: cube neighbours first, then x+1 and x-1."""
    if v.a.n != p.n:
        raise ParamsError(f"vertex {v} does not match n={p.n}")
    dirs = direction_set_minus(v.x, p) if minus else direction_set(v.x, p)
    out = [
        Neighbour(Vertex(v.a ^ BitVec.unit(j, p.n), v.x), Kind.CUBE, j) for j in dirs
    ]
    out.append(Neighbour(Vertex(v.a, (v.x + 1) % p.r), Kind.RING, +1))
    out.append(Neighbour(Vertex(v.a, (v.x - 1) % p.r), Kind.RING, -1))
    return out


def _adjacency(p: GeneralParams, minus: bool) -> np.ndarray:
    n, d, r = p.n, p.d, p.r
    idx = np.arange(p.order, dtype=np.int64)
    a, x = np.divmod(idx, r)
    adj = np.empty((p.order, d + 2), dtype=np.int64)
    sign = -1 if minus else 1
    for i in range(1, d + 1):
        j = (i - 1 + sign * d * x) % n  # 0-indexed bit
        adj[:, i - 1] = (a ^ (np.int64(1) << j)) * r + x
    adj[:, d] = a * r + (x + 1) % r
    adj[:, d + 1] = a * r + (x - 1) % r
    return adj


@dataclass
class Graph:
    """Materialized adjacency on packed indices ``a * r + x``.

    ``adj[v, :d]`` are cube neighbours (slot i holds direction i + dx, or
    i - dx for the general family), ``adj[v, d]`` is x+1, ``adj[v, d+1]`` is x-1.
    """

    params: GeneralParams
    general: bool = False
    adj: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]
    connected: bool = True

    @property
    def n_vertices(self) -> int:
        return self.params.order

    @property
    def n_edges(self) -> int:
        return self.params.order * (self.params.d + 2) // 2

    @property
    def degree(self) -> int:
        return self.params.d + 2

    def is_cayley(self) -> bool:
        return not self.general and isinstance(self.params, Params)

    def degrees(self) -> np.ndarray:
        return np.array([len(set(row)) for row in self.adj.tolist()])

    def edge_array(self) -> np.ndarray:
        """All edges once, as rows (u, v, slot) with u < v."""
        d = self.params.d
        rows = []
        for slot in range(d + 1):  # cube slots and the +1 ring edge cover every edge
            u = np.arange(self.n_vertices, dtype=np.int64)
            v = self.adj[:, slot]
            if slot < d:
                keep = u < v
                u, v = u[keep], v[keep]
            rows.append(np.stack([u, v, np.full(len(u), slot)], axis=1))
        return np.concatenate(rows)

    def edge_orbits(self) -> np.ndarray:
        """Orbit label per row of ``edge_array``: 0 for ring edges, else i."""
        e = self.edge_array()
        return np.where(e[:, 2] == self.params.d, 0, e[:, 2] + 1)


def _check_budget(p: GeneralParams, budget: int) -> None:
    if p.order > budget:
        raise BudgetExceeded("graph", p.order, budget)


def _is_connected(adj: np.ndarray) -> bool:
    seen = np.zeros(len(adj), dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(adj[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


def build_graph(p: Params, budget: int = DEFAULT_BUDGET) -> Graph:
    if not isinstance(p, Params):
        raise ParamsError("build_graph needs Params; use build_general without d*r = 0 (mod n)")
    _check_budget(p, budget)
    g = Graph(p, general=False, adj=_adjacency(p, minus=False))
    g.connected = _is_connected(g.adj)
    if not g.connected:  # pragma: no cover - guaranteed by construction
        raise ParamsError(f"Q_n(d,r) with {p} came out disconnected")
    return g


def build_general(p: GeneralParams, budget: int = DEFAULT_BUDGET) -> Graph:
    """Q_n^-(d, r): cube edges at position x use D^-_x.  Disconnected graphs are flagged."""
    _check_budget(p, budget)
    g = Graph(p, general=True, adj=_adjacency(p, minus=True))
    g.connected = _is_connected(g.adj)
    return g


def ring_cube_incidence(a: BitVec, j: int, p: Params) -> list[int]:
    """Positions on the a-ring where a cube edge in direction j attaches.

    The positions do not depend on ``a``; it is accepted to mirror the
    ring being inspected.
    """
    if not 1 <= j <= p.n:
        raise ParamsError(f"direction must lie in 1..{p.n}")
    return sorted((j + l * p.n - 1) // p.d for l in range(p.multiplicity))


def cube_slot(j: int, x: int, p: GeneralParams, minus: bool = False) -> int | None:
    """The i in 1..d with j = i + dx (mod n) (or i - dx), if any."""
    sign = -1 if minus else 1
    i = coord(j - sign * p.d * x, p.n)
    return i if i <= p.d else None


def edge_orbit(u: Vertex, v: Vertex, p: Params) -> int:
    """0 for a ring edge, i for a cube edge in E_i; raises for non-edges."""
    if u.a == v.a:
        if (u.x - v.x) % p.r in (1, p.r - 1):
            return 0
        raise NotAnEdge(f"{u} and {v} are not adjacent")
    diff = (u.a ^ v.a).support()
    if u.x != v.x or len(diff) != 1:
        raise NotAnEdge(f"{u} and {v} are not adjacent")
    i = cube_slot(diff[0], u.x, p)
    if i is None:
        raise NotAnEdge(f"direction {diff[0]} is not available at position {u.x}")
    return i


def isom_to_rcr(v: Vertex, p: GeneralParams) -> Vertex:
    """(a, x) -> (a, -x), carrying Q_n^-(d,r) onto Q_n(d,r)."""
    if not p.divisible:
        raise ParamsError("the map (a,x) -> (a,r-x) is an isomorphism only when d*r = 0 (mod n)")
    return Vertex(v.a, (-v.x) % p.r)


def special(kind: str, n: int | None = None, d: int | None = None, r: int | None = None) -> Params:
    kind = kind.lower()
    if kind == "ccc":
        if n is None or n < 3:
            raise ParamsError("cube-connected cycles need n >= 3")
        return Params(n, 1, n)
    if kind == "cor":
        if d is None or r is None:
            raise ParamsError("cubes of rings need d and r")
        return Params(d * r, d, r)
    if kind == "hypercube":
        raise ParamsError("hypercubes have r = 1 and are not supported (ring length must be >= 3)")
    raise ParamsError(f"unknown family {kind!r}")


def _label(idx: int, p: GeneralParams) -> str:
    return str(p.vertex_at(int(idx)))


def _sorted_edges(g: Graph) -> list[tuple[str, str, int]]:
    p = g.params
    e = g.edge_array()
    out = []
    for u, v, slot in e.tolist():
        su, sv = _label(u, p), _label(v, p)
        if sv < su:
            su, sv = sv, su
        out.append((su, sv, 0 if slot == p.d else slot + 1))
    out.sort()
    return out


def export(g: Graph, fmt: str = "edgelist") -> str:
    p = g.params
    prefix = "rcr-general" if g.general else "rcr"
    header = f"{prefix} n={p.n} d={p.d} r={p.r}"
    edges = _sorted_edges(g)
    if fmt == "edgelist":
        lines = [header] + [f"{u} {v} {o}" for u, v, o in edges]
        return "\n".join(lines) + "\n"
    if fmt == "dot":
        lines = [f"// {header}", "graph rcr {"]
        lines += [f'  "{u}" -- "{v}" [orbit={o}];' for u, v, o in edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ParamsError(f"unknown export format {fmt!r}")


def incidence_positions(j: int, p: Params) -> list[int]:
    """Independent count of ring positions carrying direction j (by D(x) scan)."""
    return flippable_positions(j, p)
