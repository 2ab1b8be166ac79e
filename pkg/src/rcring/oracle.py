"""Brute-force ground truth used to check the closed forms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, ParamsError
from .group import GeneralParams, Vertex
from .topology import Graph, build_general

BISECTION_LIMIT = 28


@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: np.ndarray

    def __getitem__(self, v: int) -> int:
        return int(self.dist[v])


@dataclass(frozen=True)
class Census:
    base: Vertex
    counts: tuple[int, ...]  # counts[t] = number of vertices at distance t


def _src(g: Graph, src: Vertex | int) -> int:
    return src if isinstance(src, int) else g.params.index(src)


def bfs_distances(g: Graph, src: Vertex | int = 0) -> DistanceField:
    s = _src(g, src)
    dist = np.full(g.n_vertices, -1, dtype=np.int64)
    dist[s] = 0
    frontier = np.array([s], dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique(g.adj[frontier].ravel())
        nxt = nxt[dist[nxt] < 0]
        dist[nxt] = level
        frontier = nxt
    return DistanceField(s, dist)


def _vertex_transitive(g: Graph, multi_source: bool) -> None:
    if not g.is_cayley() and not multi_source:
        raise ParamsError("single-source shortcut is only valid on Q_n(d,r); pass multi_source=True")
    if not g.connected:
        raise ParamsError("graph is disconnected")


def bfs_diameter(g: Graph, multi_source: bool = False) -> int:
    _vertex_transitive(g, multi_source)
    if not multi_source:
        return int(bfs_distances(g, 0).dist.max())
    return max(int(bfs_distances(g, v).dist.max()) for v in range(g.n_vertices))


def bfs_total_distance(g: Graph, multi_source: bool = False) -> int:
    """Sum of distances from the identity; with multi_source, the maximum over all sources."""
    _vertex_transitive(g, multi_source)
    if not multi_source:
        return int(bfs_distances(g, 0).dist.sum())
    return max(int(bfs_distances(g, v).dist.sum()) for v in range(g.n_vertices))


def all_pairs_distance_sum(g: Graph) -> int:
    """Sum over unordered pairs; the Wiener index computed the slow way."""
    return sum(int(bfs_distances(g, v).dist.sum()) for v in range(g.n_vertices)) // 2


def enumerate_shortest_paths(
    g: Graph, u: Vertex | int, v: Vertex | int, cap: int = 10_000
) -> tuple[list[list[int]], bool]:
    """All shortest u-v paths as index lists, plus a flag set when ``cap`` cut the list short."""
    s, t = _src(g, u), _src(g, v)
    dt = bfs_distances(g, t).dist
    paths: list[list[int]] = []
    truncated = False

    def walk(path: list[int]) -> None:
        nonlocal truncated
        if truncated:
            return
        here = path[-1]
        if here == t:
            if len(paths) >= cap:
                truncated = True
                return
            paths.append(list(path))
            return
        for w in sorted(set(g.adj[here].tolist())):
            if dt[w] == dt[here] - 1:
                path.append(w)
                walk(path)
                path.pop()

    walk([s])
    return paths, truncated


def enumerate_short_paths(
    g: Graph, u: int, v: int, slack: int, cap: int = 10_000
) -> list[list[int]]:
    """Simple u-v paths of length at most dist(u, v) + slack."""
    dt = bfs_distances(g, v).dist
    limit = int(dt[u]) + slack
    out: list[list[int]] = []
    seen = {u}

    def walk(path: list[int]) -> None:
        if len(out) >= cap:
            return
        here = path[-1]
        if here == v:
            out.append(list(path))
            return
        for w in sorted(set(g.adj[here].tolist())):
            if w in seen or len(path) + dt[w] > limit:
                continue
            seen.add(w)
            path.append(w)
            walk(path)
            path.pop()
            seen.discard(w)

    walk([u])
    return out


def t_neighbour_census(g: Graph, base: Vertex) -> Census:
    dist = bfs_distances(g, base).dist
    if (dist < 0).any():
        raise ParamsError("graph is disconnected")
    return Census(base, tuple(int(c) for c in np.bincount(dist)))


def census_bases(p: GeneralParams) -> tuple[Vertex, Vertex]:
    return p.vertex(0, p.r - 1), p.vertex(0, (p.r - 1) // 2)


def non_transitivity_witness(
    p: GeneralParams, graph: Graph | None = None
) -> tuple[int, int, int] | None:
    """Smallest t where the two base vertices have different t-neighbour counts."""
    g = graph if graph is not None else build_general(p)
    if not g.connected:
        raise ParamsError(f"Q^-({p}) is disconnected (d*r < n)")
    b1, b2 = census_bases(p)
    c1 = t_neighbour_census(g, b1).counts
    c2 = t_neighbour_census(g, b2).counts
    for t in range(max(len(c1), len(c2))):
        x1 = c1[t] if t < len(c1) else 0
        x2 = c2[t] if t < len(c2) else 0
        if x1 != x2:
            return t, x1, x2
    return None


def cut_size(g: Graph, side: np.ndarray) -> int:
    """Number of edges with exactly one endpoint in ``side`` (a boolean mask)."""
    e = g.edge_array()
    return int((side[e[:, 0]] != side[e[:, 1]]).sum())


def brute_force_bisection(g: Graph, limit: int = BISECTION_LIMIT, chunk: int = 1 << 16) -> tuple[int, np.ndarray]:
    """Exact bisection width by enumerating halves that contain vertex 0."""
    nv = g.n_vertices
    if nv > limit:
        raise BudgetExceeded("exhaustive bisection (use the bisection bounds instead)", nv, limit)
    e = g.edge_array()
    return _min_bisection(nv, e[:, 0], e[:, 1], chunk)


def _min_bisection(nv: int, eu: np.ndarray, ev: np.ndarray, chunk: int) -> tuple[int, np.ndarray]:
    half = nv // 2
    best = None
    best_set: tuple[int, ...] = ()
    others = range(1, nv)
    it = combinations(others, half - 1)
    eu = eu.astype(np.uint64)
    ev = ev.astype(np.uint64)
    one = np.uint64(1)
    while True:
        block = [c for _, c in zip(range(chunk), it)]
        if not block:
            break
        arr = np.array(block, dtype=np.uint64).reshape(len(block), half - 1)
        masks = np.bitwise_or.reduce(one << arr, axis=1) if half > 1 else np.zeros(len(block), np.uint64)
        masks |= one
        cuts = np.zeros(len(block), dtype=np.int64)
        for a, b in zip(eu, ev):
            cuts += (((masks >> a) ^ (masks >> b)) & one).astype(np.int64)
        k = int(np.argmin(cuts))
        if best is None or cuts[k] < best:
            best = int(cuts[k])
            best_set = (0,) + tuple(block[k])
    side = np.zeros(nv, dtype=bool)
    side[list(best_set)] = True
    return int(best), side


def cycle_bisection(r: int) -> int:
    """Exact bisection of a bare r-cycle via the same enumerator."""
    idx = np.arange(r)
    return _min_bisection(r, idx, (idx + 1) % r, 1 << 14)[0]
