"""Network invariants: exact values from the router, closed forms, and bounds.

Bounds are evaluated in exact rationals where the expression allows it.
The large-parameter branches involve logarithms; the logarithmic factor is
computed in floating point and then carried as a rational. Those branches
need n >= 100, beyond the supported n <= 64, so they are only checked for
internal consistency.
For integer-valued quantities a fractional lower bound is reported as its
ceiling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import BudgetExceeded, VerificationError
from .group import Params, coord, popcount, rotate
from .oracle import cut_size
from .routing import hamming_weights, optimal_sequence, origin_l_table, origin_path
from .topology import DEFAULT_BUDGET, build_graph

Number = Fraction | float | int
LARGE_R = 1 << 9
LARGE_Q = 100
SIMULATION_LIMIT = 512


def _real(x: float) -> Fraction:
    """A logarithmic factor as an exact rational, so huge powers of two never meet a float."""
    return Fraction(x)


def _ceil(x: Number) -> int:
    return math.ceil(x) if not isinstance(x, int) else x


def _floor(x: Number) -> int:
    return math.floor(x) if not isinstance(x, int) else x


def _num(x: Number) -> float | int:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def half_square(r: int) -> int:
    """floor(r^2 / 2)."""
    return r * r // 2


# ---------------------------------------------------------------- diameter


def diameter_formula(p: Params) -> int:
    n, r = p.n, p.r
    if p.regime == "dr=n":
        return n + r if r == 3 else n + (3 * r) // 2 - 2
    return n + max(r // 2, 2 * p.qbar - 2)


# ---------------------------------------------------------------- total distance


@dataclass(frozen=True)
class TotalDistance:
    td: int
    sum_l: int
    sum_weight: int


def exact_total_distance(p: Params, budget: int = DEFAULT_BUDGET) -> TotalDistance:
    """Sum of router distances from the identity over every vertex."""
    if p.order > budget:
        raise BudgetExceeded("total distance", p.order, budget)
    l = origin_l_table(p)
    sum_l = int(l.sum())
    sum_weight = int(hamming_weights(p.n).sum()) * p.r
    if sum_weight != (1 << (p.n - 1)) * p.n * p.r:
        raise VerificationError(f"weight sum {sum_weight} != 2^(n-1) n r")
    return TotalDistance(sum_weight + sum_l, sum_l, sum_weight)


def alpha(p: Params) -> Number:
    n, r, q = p.n, p.r, p.qbar
    den = 2 * n * r + r * r + 8 * q * q
    if q >= LARGE_Q:
        return _real(12 * q**1.5 * math.log2(2 * q) / den)
    return Fraction(8 * q * q, den)


def beta(p: Params) -> Number:
    r, q = p.r, p.qbar
    den = r * r + 8 * q * q
    if q >= LARGE_Q:
        return _real(12 * q**1.5 * math.log2(2 * q) / den)
    return Fraction(8 * q * q, den)


@dataclass(frozen=True)
class Bounds:
    lo: Number
    hi: Number
    coefficient: str | None = None
    coefficient_value: Number | None = None

    def contains(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def to_json(self, method: str = "bound") -> dict[str, Any]:
        out: dict[str, Any] = {"lo": _ceil(self.lo), "hi": _floor(self.hi), "method": method}
        out["lo_exact"] = str(self.lo) if isinstance(self.lo, Fraction) else self.lo
        out["hi_exact"] = str(self.hi) if isinstance(self.hi, Fraction) else self.hi
        if self.coefficient:
            out[self.coefficient] = _num(self.coefficient_value)
        return out


def td_bounds(p: Params) -> Bounds:
    n, d, r = p.n, p.d, p.r
    if p.regime == "dr=n":
        if r >= LARGE_R:
            base = 2 ** (n - 2) * r * r * (2 * d + 5)
            lo = base * (1 - _real(20 * math.log2(r) ** 2 / (2 * n + 5 * r)))
            hi = base * (1 - Fraction(8 * (r - 1), 2 * n * r + 5 * r * r))
            return Bounds(lo, hi)
        lo = Fraction(2 ** (n - 2) * (2 * n * r + r * r))
        hi = Fraction(2 ** (n - 2) * (2 * n * r + 5 * r * r - 8 * r + 8))
        return Bounds(lo, hi)
    a = alpha(p)
    top = Fraction(2 ** (n - 1) * (n * r + half_square(r) + 4 * p.qbar**2))
    return Bounds(top * (1 - a), top, "alpha", a)


def sum_l_bounds(p: Params) -> Bounds:
    """Bounds on the ring cost sum when dr >= 2n."""
    b = beta(p)
    top = Fraction(2 ** (p.n - 1) * (half_square(p.r) + 4 * p.qbar**2))
    return Bounds(top * (1 - b), top, "beta", b)


def wiener(p: Params, td: int) -> int:
    twice = p.order * td
    if twice % 2:
        raise VerificationError("|V| * td is odd")
    return twice // 2


# ---------------------------------------------------------------- forwarding indices


def vertex_forwarding(p: Params, td: int) -> int:
    return td - (p.order - 1)


def xi_bounds(p: Params) -> Bounds:
    n, d, r = p.n, p.d, p.r
    if p.regime == "dr=n":
        if r >= LARGE_R:
            base = 2 ** (n - 2) * r * r * (2 * d + 5)
            lo = base * (1 - _real((4 * math.log2(r) ** 2 + 4) / (2 * n + 5 * r)))
            hi = base * (1 - Fraction(12 * r - 8, 2 * n * r + 5 * r * r))
            return Bounds(lo, hi)
        return Bounds(
            Fraction(2 ** (n - 2) * (2 * n * r + r * r - 4 * r)),
            Fraction(2 ** (n - 2) * (2 * n * r + 5 * r * r - 12 * r + 8)),
        )
    return td_bounds(p)


def _orbit_of(j: int, x: int, p: Params) -> int:
    return coord(j - p.d * x, p.n)


def origin_orbit_counts(p: Params, positions: str = "zero") -> np.ndarray:
    """Per cube orbit, the number of E_i edges summed over the router's origin paths.

    ``positions="zero"`` sums over targets (a, 0); ``"all"`` over every vertex.
    """
    totals = np.zeros(p.d + 1, dtype=np.int64)
    xs = [0] if positions == "zero" else range(p.r)
    for a in range(1 << p.n):
        for x in xs:
            seq = optimal_sequence(a, x, p)
            for j, xt in zip(seq.directions, seq.positions[1:]):
                totals[_orbit_of(j, xt % p.r, p)] += 1
    return totals


@dataclass
class OrbitLoads:
    sum_l: int
    cube_at_zero: list[int]  # index i-1 -> sum_a |P_(a,0) cap E_i|
    cube_all: list[int] | None  # index i-1 -> sum_v |P_v cap E_i|
    pi: int | None
    pi_bounds: Bounds | None
    pi_m_hi: int | None

    @property
    def exact(self) -> bool:
        return self.pi is not None


def pi_closed_bounds(p: Params) -> Bounds | None:
    """Closed bounds on pi when they exist for the instance's branch."""
    n, d, r = p.n, p.d, p.r
    if p.regime == "dr=n":
        if r <= 6:
            v = Fraction(2**n * r * r)
            return Bounds(v, v)
        hi = Fraction(2 ** (n - 2) * (5 * r * r - 8 * r + 8))
        if r < LARGE_R:
            return Bounds(Fraction(2**n * r * r), hi)
        lo = 2 ** (n - 2) * r * r * max(4, 5 * (1 - _real(4 * math.log2(r) ** 2 / r)))
        return Bounds(lo, hi)
    if p.n_divisible_by_d:
        b = beta(p)
        u = Fraction(n, d)
        top = half_square(r) + 4 * u * u
        lo = 2 ** (n - 1) * max(2 * n * Fraction(r, d), top * (1 - b))
        return Bounds(lo, 2 ** (n - 1) * top, "beta", b)
    a = alpha(p)
    lo = Fraction(2**n, d + 2) * (n * r + half_square(r) + 4 * p.qbar**2) * (1 - a)
    hi = 2 ** (n - 1) * max(4 * n * Fraction(r, d) + 2 * r, Fraction(half_square(r) + 4 * p.qbar**2))
    return Bounds(lo, hi, "alpha", a)


def edge_orbit_loads(p: Params, sum_l: int | None = None) -> OrbitLoads:
    """Ring and cube orbit loads of the routing built from the router's origin paths.

    The routing is invariant under left multiplication, so every edge of
    orbit E_i carries |V| * (E_i edges over all origin paths) / |E_i|.
    """
    if sum_l is None:
        sum_l = int(origin_l_table(p).sum())
    zero = origin_orbit_counts(p, "zero")[1:].tolist()
    n, r = p.n, p.r
    if p.n_divisible_by_d:
        expect = 2 ** (n - 1) * r if p.regime == "dr=n" else 2 ** (n - 1) * n // p.d
        if any(c != expect for c in zero):
            raise VerificationError(f"cube orbit loads at x=0 {zero} != {expect}")
        pi = max(sum_l, max(2 * r * c for c in zero))
        return OrbitLoads(sum_l, zero, None, pi, pi_closed_bounds(p), None)
    full = origin_orbit_counts(p, "all")[1:].tolist()
    pi_m_hi = max(sum_l, max(2 * c for c in full))
    return OrbitLoads(sum_l, zero, full, None, pi_closed_bounds(p), pi_m_hi)


@dataclass
class LoadSimulation:
    max_edge: int
    max_edge_by_orbit: list[int]
    min_edge_by_orbit: list[int]
    max_vertex: int
    min_vertex: int
    sub_orbit_uniform: bool


def _origin_paths_flat(p: Params) -> tuple[np.ndarray, np.ndarray]:
    paths = [origin_path(v // p.r, v % p.r, p).indices for v in range(p.order)]
    lens = np.array([len(q) for q in paths])
    return np.concatenate(paths), np.concatenate([[0], np.cumsum(lens)])


def routing_load_simulation(p: Params, limit: int = SIMULATION_LIMIT) -> LoadSimulation:
    """Translate every origin path by every vertex and count loads directly."""
    nv = p.order
    if nv > limit:
        raise BudgetExceeded("all-pairs routing simulation", nv, limit)
    flat, off = _origin_paths_flat(p)
    pid = np.repeat(np.arange(nv), np.diff(off))
    inner = np.ones(len(flat), dtype=bool)
    inner[off[:-1]] = False
    inner[off[1:] - 1] = False
    step = np.ones(len(flat) - 1, dtype=bool)
    step &= pid[1:] == pid[:-1]
    b, y = np.divmod(flat, p.r)
    edge_load = np.zeros(nv * nv, dtype=np.int64)
    vertex_load = np.zeros(nv, dtype=np.int64)
    mask = (1 << p.n) - 1
    for u in range(nv):
        a, x = divmod(u, p.r)
        s = (p.d * x) % p.n
        rb = ((b << s) | (b >> (p.n - s))) & mask if s else b
        w = (a ^ rb) * p.r + (x + y) % p.r
        vertex_load += np.bincount(w[inner], minlength=nv)
        lo = np.minimum(w[:-1], w[1:])[step]
        hi = np.maximum(w[:-1], w[1:])[step]
        edge_load += np.bincount(lo * nv + hi, minlength=nv * nv)
    g = build_graph(p)
    e = g.edge_array()
    loads = edge_load[np.minimum(e[:, 0], e[:, 1]) * nv + np.maximum(e[:, 0], e[:, 1])]
    orbit = g.edge_orbits()
    by_max = [int(loads[orbit == i].max()) for i in range(p.d + 1)]
    by_min = [int(loads[orbit == i].min()) for i in range(p.d + 1)]
    # cube edges at a fixed (position, direction) carry the same load for every a
    uniform = True
    ex = e[:, 0] % p.r
    for i in range(1, p.d + 1):
        for x in range(p.r):
            sel = (orbit == i) & (ex == x)
            if sel.any() and loads[sel].min() != loads[sel].max():
                uniform = False
    return LoadSimulation(
        int(loads.max()), by_max, by_min, int(vertex_load.max()), int(vertex_load.min()), uniform
    )


# ---------------------------------------------------------------- orbit proportionality


def path_orbit_counts(path: list[int], p: Params) -> tuple[int, ...]:
    counts = [0] * (p.d + 1)
    for s, t in zip(path, path[1:]):
        a, x = divmod(s, p.r)
        b, _ = divmod(t, p.r)
        if a == b:
            counts[0] += 1
        else:
            counts[_orbit_of((a ^ b).bit_length(), x, p)] += 1
    return tuple(counts)


@dataclass
class ProportionalityResult:
    passed: bool
    pairs_checked: int
    witness: dict[str, Any] | None = None


def _constructed_witness(p: Params) -> dict[str, Any]:
    """Two routes to (e_j, 0) that flip j at positions served by different cube orbits."""
    for j in range(1, p.n + 1):
        spots = [x for x in range(p.r) if (j - 1 - p.d * x) % p.n < p.d]
        spots.sort(key=lambda x: (min(x, p.r - x), x))
        y = spots[0]
        k = _orbit_of(j, y, p)
        for y2 in spots[1:]:
            k2 = _orbit_of(j, y2, p)
            if k2 != k:
                def route(pos: int) -> list[int]:
                    flip = 1 << (j - 1)
                    return _walk(0, pos, p.r) + [flip * p.r + xx for xx in _walk(pos, 0, p.r)]
                short, other = route(y), route(y2)
                return {
                    "source": str(p.vertex_at(0)),
                    "target": str(p.vertex_at((1 << (j - 1)) * p.r)),
                    "direction": j,
                    "orbit": k,
                    "shortest": [str(p.vertex_at(v)) for v in short],
                    "shortest_counts": list(path_orbit_counts(short, p)),
                    "other": [str(p.vertex_at(v)) for v in other],
                    "other_counts": list(path_orbit_counts(other, p)),
                    "constructed": True,
                }
    raise VerificationError("no direction is served by two cube orbits")


def _walk(u: int, v: int, r: int) -> list[int]:
    """Ring positions from u to v inclusive along the shorter arc."""
    fwd = (v - u) % r
    if fwd <= r - fwd:
        return [(u + k) % r for k in range(fwd + 1)]
    return [(u - k) % r for k in range(r - fwd + 1)]


def orbit_proportionality_check(
    p: Params, samples: int = 40, seed: int = 0, slack: int = 2, cap: int = 2000
) -> ProportionalityResult:
    """Sample vertex pairs and compare per-orbit edge counts across paths.

    All shortest paths must agree orbit by orbit, and no sampled longer path
    may use fewer edges of some orbit than a shortest one.  When the check
    is expected to fail and sampling finds nothing, an explicit witness is
    built from two single-flip routes.
    """
    from .oracle import enumerate_short_paths, enumerate_shortest_paths

    g = build_graph(p)
    rng = np.random.default_rng(seed)
    pairs = [(0, int(v)) for v in range(1, p.order)] if p.order - 1 <= samples else [
        (int(u), int(v)) for u, v in rng.integers(0, p.order, size=(samples, 2)) if u != v
    ]
    for u, v in pairs:
        shortest, _ = enumerate_shortest_paths(g, u, v, cap)
        ref = path_orbit_counts(shortest[0], p)
        for path in shortest[1:]:
            c = path_orbit_counts(path, p)
            if c != ref:
                return ProportionalityResult(False, len(pairs), _pair_witness(p, u, v, shortest[0], ref, path, c))
        for path in enumerate_short_paths(g, u, v, slack, cap):
            c = path_orbit_counts(path, p)
            if any(ci < ri for ci, ri in zip(c, ref)):
                return ProportionalityResult(False, len(pairs), _pair_witness(p, u, v, shortest[0], ref, path, c))
    if p.n_divisible_by_d:
        return ProportionalityResult(True, len(pairs))
    return ProportionalityResult(False, len(pairs), _constructed_witness(p))


def _pair_witness(p, u, v, sp, ref, other, c) -> dict[str, Any]:
    return {
        "source": str(p.vertex_at(u)),
        "target": str(p.vertex_at(v)),
        "shortest": [str(p.vertex_at(w)) for w in sp],
        "shortest_counts": list(ref),
        "other": [str(p.vertex_at(w)) for w in other],
        "other_counts": list(c),
        "constructed": False,
    }


# ---------------------------------------------------------------- bisection


@dataclass
class Bisection:
    name: str
    side: np.ndarray = field(repr=False)
    cut: int
    expected: int


def construction_cut(name: str, p: Params) -> int:
    n = p.n
    if name == "direction-cut":
        return 2 ** (n - 1) * p.d * p.r // n
    if name == "ring-half-cut":
        return 2 ** (n + 1)
    if name == "odd-ring-cut":
        return 2 ** (n + 1) + (2 ** (n - 1) if n == p.d else 0)
    raise ValueError(name)


def applicable_constructions(p: Params) -> list[str]:
    names = ["direction-cut"]
    names.append("ring-half-cut" if p.r % 2 == 0 else "odd-ring-cut")
    return names


def bisection_constructions(p: Params, budget: int = DEFAULT_BUDGET) -> list[Bisection]:
    """Build each construction's vertex half explicitly and count its cut."""
    g = build_graph(p, budget)
    idx = np.arange(p.order)
    a, x = np.divmod(idx, p.r)
    top = (a >> (p.n - 1)) & 1
    out = []
    for name in applicable_constructions(p):
        if name == "direction-cut":
            side = top == 1
        elif name == "ring-half-cut":
            side = x <= p.r // 2 - 1
        else:
            side = ((x >= 1) & (x <= (p.r - 1) // 2)) | ((x == 0) & (top == 0))
        if abs(2 * int(side.sum()) - p.order) > 1:
            raise VerificationError(f"{name} is not a bisection")
        cut = cut_size(g, side)
        expected = construction_cut(name, p)
        if cut != expected:
            raise VerificationError(f"{name}: counted {cut}, expected {expected}")
        out.append(Bisection(name, side, cut, expected))
    return out


@dataclass(frozen=True)
class BwBounds:
    lo_exact: Fraction
    lo: int
    hi: int
    best: str


def bw_bounds(p: Params) -> BwBounds:
    n, d, r = p.n, p.d, p.r
    if p.regime == "dr=n":
        if r <= 6:
            lo = Fraction(2 ** (n - 1))
        else:
            lo = Fraction(2 ** (n + 1)) / (5 - Fraction(8 * (r - 1), r * r))
    elif p.n_divisible_by_d:
        lo = Fraction(2 ** (n + 1) * r * r) / (r * r + 8 * Fraction(n, d) ** 2)
    else:
        lo = 2**n * min(Fraction(d * r, 4 * n + 2 * d), Fraction(2 * r * r, r * r + 8 * p.qbar**2))
    cuts = {name: construction_cut(name, p) for name in applicable_constructions(p)}
    best = min(cuts, key=lambda k: (cuts[k], k))
    hi = cuts[best]
    if math.ceil(lo) > hi:
        raise VerificationError(f"bisection bounds cross: {lo} > {hi}")
    return BwBounds(lo, math.ceil(lo), hi, best)


# ---------------------------------------------------------------- report


@dataclass
class MetricsReport:
    params: Params
    diameter: int
    td: TotalDistance
    td_bounds: Bounds
    wiener: int
    xi: int
    xi_bounds: Bounds
    loads: OrbitLoads
    bw: BwBounds
    sum_l_bounds: Bounds | None = None
    diameter_oracle: int | None = None
    td_oracle: int | None = None
    simulation: LoadSimulation | None = None
    bw_oracle: int | None = None
    notes: list[str] = field(default_factory=list)

    def check(self) -> list[str]:
        """Internal consistency; returns a list of violations (empty when sound)."""
        bad = []
        if self.bw.lo > self.bw.hi:
            bad.append("bisection lower bound exceeds construction")
        if self.diameter_oracle is not None and self.diameter_oracle != self.diameter:
            bad.append(f"diameter formula {self.diameter} != BFS {self.diameter_oracle}")
        if self.td_oracle is not None and self.td_oracle != self.td.td:
            bad.append(f"td {self.td.td} != BFS {self.td_oracle}")
        if self.simulation is not None:
            if self.simulation.max_vertex != self.xi:
                bad.append(f"xi {self.xi} != simulated vertex load {self.simulation.max_vertex}")
            target = self.loads.pi if self.loads.exact else self.loads.pi_m_hi
            if self.simulation.max_edge != target:
                bad.append(f"edge load {self.simulation.max_edge} != orbit formula {target}")
        if self.bw_oracle is not None and not self.bw.lo <= self.bw_oracle <= self.bw.hi:
            bad.append(f"brute-force bisection {self.bw_oracle} outside [{self.bw.lo}, {self.bw.hi}]")
        return bad

    def bound_misses(self) -> list[str]:
        """Stated bounds that the exact values fall outside of."""
        out = []
        checks = [("td", self.td.td, self.td_bounds), ("xi", self.xi, self.xi_bounds)]
        if self.sum_l_bounds is not None:
            checks.append(("sum_l", self.td.sum_l, self.sum_l_bounds))
        if self.loads.exact and self.loads.pi_bounds is not None:
            checks.append(("pi", self.loads.pi, self.loads.pi_bounds))
        for name, value, b in checks:
            if not b.contains(value):
                out.append(f"{name} {value} outside the stated bounds [{_ceil(b.lo)}, {_floor(b.hi)}]")
        return out

    def to_dict(self) -> dict[str, Any]:
        p = self.params
        out: dict[str, Any] = {
            "params": {"n": p.n, "d": p.d, "r": p.r, "vertices": p.order},
            "flags": {
                "n_divisible_by_d": p.n_divisible_by_d,
                "regime": p.regime,
                "qbar": p.qbar,
                "k": p.k,
            },
            "diameter": {"value": self.diameter, "method": "formula"},
            "td": {"value": self.td.td, "method": "router-exact"},
            "td_bounds": self.td_bounds.to_json(),
            "sum_weight": {"value": self.td.sum_weight, "method": "router-exact"},
            "sum_l": {"value": self.td.sum_l, "method": "router-exact"},
            "wiener": {"value": self.wiener, "method": "router-exact"},
            "xi": {"value": self.xi, "method": "router-exact"},
            "xi_bounds": self.xi_bounds.to_json(),
        }
        if self.sum_l_bounds is not None:
            out["sum_l_bounds"] = self.sum_l_bounds.to_json()
        if self.loads.exact:
            out["pi"] = {"value": self.loads.pi, "method": "router-exact"}
            if self.loads.pi_bounds is not None:
                out["pi_bounds"] = self.loads.pi_bounds.to_json()
        else:
            assert self.loads.pi_bounds is not None
            out["pi"] = self.loads.pi_bounds.to_json()
            out["pi_m_hi"] = {"value": self.loads.pi_m_hi, "method": "router-exact"}
        out["orbit_loads"] = {
            "ring": self.loads.sum_l,
            "cube_at_zero": self.loads.cube_at_zero,
            "method": "router-exact",
        }
        out["bw"] = {
            "lo": self.bw.lo,
            "hi": self.bw.hi,
            "lo_exact": str(self.bw.lo_exact),
            "method": "bound",
        }
        out["bw_construction"] = {"value": self.bw.hi, "name": self.bw.best, "method": "formula"}
        if self.diameter_oracle is not None:
            out["diameter_oracle"] = {"value": self.diameter_oracle, "method": "oracle"}
        if self.td_oracle is not None:
            out["td_oracle"] = {"value": self.td_oracle, "method": "oracle"}
        if self.simulation is not None:
            out["edge_load_simulated"] = {"value": self.simulation.max_edge, "method": "simulation"}
            out["vertex_load_simulated"] = {"value": self.simulation.max_vertex, "method": "simulation"}
        if self.bw_oracle is not None:
            out["bw_oracle"] = {"value": self.bw_oracle, "method": "oracle"}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def build_report(p: Params, oracle: str = "none", budget: int = DEFAULT_BUDGET) -> MetricsReport:
    """Assemble every invariant for ``p``; ``oracle`` is none, basic or full."""
    from .oracle import BISECTION_LIMIT, bfs_distances, brute_force_bisection

    td = exact_total_distance(p, budget)
    loads = edge_orbit_loads(p, td.sum_l)
    report = MetricsReport(
        params=p,
        diameter=diameter_formula(p),
        td=td,
        td_bounds=td_bounds(p),
        wiener=wiener(p, td.td),
        xi=vertex_forwarding(p, td.td),
        xi_bounds=xi_bounds(p),
        loads=loads,
        bw=bw_bounds(p),
        sum_l_bounds=sum_l_bounds(p) if p.regime == "dr>=2n" else None,
    )
    if oracle in ("basic", "full"):
        g = build_graph(p, budget)
        dist = bfs_distances(g).dist
        report.diameter_oracle = int(dist.max())
        report.td_oracle = int(dist.sum())
    if oracle == "full":
        if p.order <= SIMULATION_LIMIT:
            report.simulation = routing_load_simulation(p)
        else:
            report.notes.append(f"routing simulation skipped: {p.order} > {SIMULATION_LIMIT} vertices")
        if p.order <= BISECTION_LIMIT:
            report.bw_oracle = brute_force_bisection(build_graph(p))[0]
        else:
            report.notes.append(f"exhaustive bisection skipped: {p.order} > {BISECTION_LIMIT} vertices")
    report.notes.extend(report.bound_misses())
    return report


__all__ = [
    "Bisection",
    "Bounds",
    "BwBounds",
    "LoadSimulation",
    "MetricsReport",
    "OrbitLoads",
    "TotalDistance",
    "alpha",
    "beta",
    "bisection_constructions",
    "build_report",
    "bw_bounds",
    "diameter_formula",
    "edge_orbit_loads",
    "exact_total_distance",
    "orbit_proportionality_check",
    "path_orbit_counts",
    "pi_closed_bounds",
    "popcount",
    "rotate",
    "routing_load_simulation",
    "sum_l_bounds",
    "td_bounds",
    "vertex_forwarding",
    "wiener",
    "xi_bounds",
]
