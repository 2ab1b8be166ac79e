"""Property harness: run every router, formula and bound check over a parameter sweep."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import VerificationError
from .group import GeneralParams, Params, reverse_bits, rotate
from .metrics import (
    bisection_constructions,
    bw_bounds,
    diameter_formula,
    exact_total_distance,
    sum_l_bounds,
    td_bounds,
)
from .oracle import (
    BISECTION_LIMIT,
    bfs_distances,
    brute_force_bisection,
    census_bases,
    non_transitivity_witness,
    t_neighbour_census,
)
from .routing import (
    distance_from_origin,
    optimal_sequence,
    origin_distance_table,
    origin_l_table,
    realize_paths,
    validate_paths,
)
from .topology import build_general, build_graph, ring_cube_incidence

MAX_ORDER = 4096
PATH_CHUNK = 1 << 14


def default_sweep(max_order: int = MAX_ORDER) -> list[Params]:
    """Every (n, d, r) with dr divisible by n, r >= 3 and 2^n r <= max_order."""
    out = []
    for n in range(2, max_order.bit_length()):
        for d in range(1, n + 1):
            for r in range(3, (max_order >> n) + 1):
                if (d * r) % n == 0:
                    out.append(Params(n, d, r))
    return out


def general_sweep(max_order: int = MAX_ORDER) -> list[GeneralParams]:
    """Connected non-divisible instances with n >= 2d."""
    out = []
    for n in range(2, max_order.bit_length()):
        for d in range(1, n // 2 + 1):
            for r in range(3, (max_order >> n) + 1):
                if (d * r) % n and d * r >= n:
                    out.append(GeneralParams(n, d, r))
    return out


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class InstanceResult:
    n: int
    d: int
    r: int
    family: str
    checks: list[Check] = field(default_factory=list)
    values: dict[str, int | float | str] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _first_mismatch(p: Params, got: np.ndarray, want: np.ndarray) -> str:
    bad = np.flatnonzero(got != want)
    if not bad.size:
        return ""
    v = int(bad[0])
    return f"{len(bad)} mismatches; first {p.vertex_at(v)}: got {int(got[v])}, BFS {int(want[v])}"


def _check_structure(p: Params, g) -> Check:
    problems = []
    nv, ne = p.order, g.n_edges
    if g.n_vertices != nv:
        problems.append(f"|V| = {g.n_vertices}")
    if ne != (1 << (p.n - 1)) * p.r * (p.d + 2):
        problems.append(f"|E| = {ne}")
    if not (g.degrees() == p.d + 2).all():
        problems.append("not regular")
    if not g.connected:
        problems.append("disconnected")
    sizes = np.bincount(g.edge_orbits(), minlength=p.d + 1)
    if sizes[0] != nv or any(s != nv // 2 for s in sizes[1:]):
        problems.append(f"orbit sizes {sizes.tolist()}")
    # each ring meets each direction's cube edges at dr/n positions
    e = g.edge_array()
    cube = e[:, 2] < p.d
    ua, ux = np.divmod(e[cube, 0], p.r)
    j = (np.log2(ua ^ (e[cube, 1] // p.r))).astype(np.int64) + 1
    for a in (0, (1 << p.n) - 1):
        for jj in range(1, p.n + 1):
            # edges leaving a-ring in direction jj appear once from each endpoint ring
            hits = np.zeros(p.r, dtype=bool)
            sel = (j == jj) & ((ua == a) | ((ua ^ (1 << (jj - 1))) == a))
            hits[ux[sel]] = True
            want = ring_cube_incidence(a, jj, p)
            if sorted(np.flatnonzero(hits).tolist()) != want or len(want) != p.multiplicity:
                problems.append(f"ring incidence a={a} j={jj}")
    return Check("structure", not problems, "; ".join(problems))


def _check_symmetry(p: Params, l: np.ndarray) -> Check:
    a = np.arange(1 << p.n)
    mirror = np.array([rotate(reverse_bits(int(v), p.n), p.d, p.n) for v in a])
    flipped = l[mirror][:, (-np.arange(p.r)) % p.r]
    bad = np.argwhere(flipped != l)
    if bad.size:
        ai, x = bad[0]
        return Check("symmetry", False, f"l({p.vertex(int(ai), int(x))}) = {l[ai, x]} but mirror gives {flipped[ai, x]}")
    return Check("symmetry", True)


def _check_paths(p: Params, dist: np.ndarray) -> Check:
    nbad = 0
    first = ""
    for start in range(0, p.order, PATH_CHUNK):
        idx = np.arange(start, min(start + PATH_CHUNK, p.order))
        seqs = [optimal_sequence(int(v) // p.r, int(v) % p.r, p) for v in idx]
        flat, off = realize_paths(seqs, p)
        bad = validate_paths(flat, off, p, idx)
        bad |= np.diff(off) - 1 != dist[idx]
        if bad.any():
            nbad += int(bad.sum())
            if not first:
                v = int(idx[np.flatnonzero(bad)[0]])
                first = f"first bad target {p.vertex_at(v)}"
    return Check("paths", nbad == 0, f"{nbad} bad paths; {first}" if nbad else "")


def verify_instance(p: Params, paths: bool = True, scalar: bool = True) -> InstanceResult:
    """All divisible-instance properties; ``scalar`` also checks the per-vertex router."""
    t0 = time.perf_counter()
    res = InstanceResult(p.n, p.d, p.r, "Q")
    g = build_graph(p)
    res.checks.append(_check_structure(p, g))
    dist = bfs_distances(g).dist

    table = origin_distance_table(p)
    res.checks.append(Check("router=bfs (bulk)", *_ok(_first_mismatch(p, table, dist))))
    if scalar:
        got = np.array(
            [distance_from_origin(v // p.r, v % p.r, p) for v in range(p.order)], dtype=np.int64
        )
        res.checks.append(Check("router=bfs", *_ok(_first_mismatch(p, got, dist))))

    diam, bfs_diam = diameter_formula(p), int(dist.max())
    res.checks.append(Check("diameter", diam == bfs_diam, f"formula {diam}, BFS {bfs_diam}"))
    if paths:
        res.checks.append(_check_paths(p, dist))

    td = exact_total_distance(p)
    bfs_td = int(dist.sum())
    res.checks.append(Check("td=bfs", td.td == bfs_td, f"router {td.td}, BFS {bfs_td}"))
    want_w = (1 << (p.n - 1)) * p.n * p.r
    res.checks.append(Check("weight sum", td.sum_weight == want_w, f"{td.sum_weight} vs {want_w}"))
    b = td_bounds(p)
    res.checks.append(
        Check("td bounds", b.contains(td.td), f"td {td.td}, bounds [{b.lo}, {b.hi}]")
    )
    res.checks.append(_check_symmetry(p, origin_l_table(p)))

    try:
        cons = bisection_constructions(p)
        res.checks.append(Check("bisection constructions", True, ", ".join(f"{c.name}={c.cut}" for c in cons)))
    except VerificationError as exc:
        res.checks.append(Check("bisection constructions", False, str(exc)))
    bw = bw_bounds(p)
    if p.order <= BISECTION_LIMIT:
        exact = brute_force_bisection(g)[0]
        res.values["bw_oracle"] = exact
        res.checks.append(Check("bw bounds", bw.lo <= exact <= bw.hi, f"{bw.lo} <= {exact} <= {bw.hi}"))

    c1, c2 = (t_neighbour_census(g, v).counts for v in census_bases(p))
    res.checks.append(Check("census agrees", c1 == c2, "" if c1 == c2 else f"{c1} vs {c2}"))

    res.values.update(
        vertices=p.order,
        regime=p.regime,
        diameter=diam,
        td=td.td,
        td_lo=float(b.lo),
        td_hi=float(b.hi),
        sum_l=td.sum_l,
        bw_lo=bw.lo,
        bw_hi=bw.hi,
    )
    if p.regime == "dr>=2n":
        s = sum_l_bounds(p)
        res.values.update(sum_l_lo=float(s.lo), sum_l_hi=float(s.hi))
    res.seconds = time.perf_counter() - t0
    return res


def verify_general(p: GeneralParams) -> InstanceResult:
    t0 = time.perf_counter()
    res = InstanceResult(p.n, p.d, p.r, "Q-")
    g = build_general(p)
    w = non_transitivity_witness(p, g)
    if w is None:
        res.checks.append(Check("census differs", False, "censuses agree for every t"))
    else:
        t, c1, c2 = w
        res.checks.append(Check("census differs", True, f"t={t}: {c1} vs {c2}"))
        res.values.update(t=t, count_r_minus_1=c1, count_mid=c2)
    res.values["vertices"] = p.order
    res.seconds = time.perf_counter() - t0
    return res


def _ok(mismatch: str) -> tuple[bool, str]:
    return not mismatch, mismatch


def _run_one(job: tuple[str, int, int, int, bool, bool]) -> InstanceResult:
    family, n, d, r, paths, scalar = job
    if family == "Q-":
        return verify_general(GeneralParams(n, d, r))
    return verify_instance(Params(n, d, r), paths, scalar)


def run_sweep(
    instances: Iterable[GeneralParams],
    jobs: int = 1,
    paths: bool = True,
    scalar: bool = True,
    progress: Callable[[InstanceResult], None] | None = None,
) -> list[InstanceResult]:
    """Verify every instance; results are in input order whatever ``jobs`` is."""
    work = [
        ("Q" if isinstance(p, Params) else "Q-", p.n, p.d, p.r, paths, scalar) for p in instances
    ]
    if jobs <= 1:
        results = []
        for job in work:
            res = _run_one(job)
            if progress:
                progress(res)
            results.append(res)
        return results
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = []
        for res in pool.map(_run_one, work, chunksize=8):
            if progress:
                progress(res)
            results.append(res)
        return results


@dataclass
class SweepSummary:
    instances: int
    passed: int
    failed_checks: dict[str, int]
    first_failures: dict[str, str]
    seconds: float

    @property
    def ok(self) -> bool:
        return self.passed == self.instances


def summarize(results: list[InstanceResult]) -> SweepSummary:
    failed: dict[str, int] = {}
    first: dict[str, str] = {}
    for res in results:
        for c in res.failures():
            failed[c.name] = failed.get(c.name, 0) + 1
            # instances come smallest-first, so the first hit is a minimal counterexample
            first.setdefault(c.name, f"{res.family}_{res.n}({res.d},{res.r}): {c.detail}")
    return SweepSummary(
        len(results),
        sum(r.passed for r in results),
        failed,
        first,
        sum(r.seconds for r in results),
    )


def iter_rows(results: list[InstanceResult]) -> Iterator[dict[str, object]]:
    for res in results:
        row: dict[str, object] = {"family": res.family, "n": res.n, "d": res.d, "r": res.r}
        row.update(res.values)
        row["passed"] = res.passed
        row["failed"] = ";".join(c.name for c in res.failures())
        yield row


def to_csv(results: list[InstanceResult]) -> str:
    rows = list(iter_rows(results))
    keys: list[str] = []
    for row in rows:
        keys.extend(k for k in row if k not in keys)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def result_dict(res: InstanceResult) -> dict[str, object]:
    return asdict(res) | {"passed": res.passed}
