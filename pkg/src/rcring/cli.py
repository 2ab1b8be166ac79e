"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import BudgetExceeded, ParamsError, RcrError, VerificationError
from .group import GeneralParams, Params
from .topology import DEFAULT_BUDGET, build_general, build_graph, export, special

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_format() -> str:
    return "text" if sys.stdout.isatty() else "json"


def _params_args(sp: argparse.ArgumentParser, general: bool = True) -> None:
    g = sp.add_argument_group("instance")
    g.add_argument("--n", type=int, help="cube dimension")
    g.add_argument("--d", type=int, help="cube edges per ring vertex")
    g.add_argument("--r", type=int, help="ring length")
    g.add_argument("--family", choices=["ccc", "cor"], help="ccc: --n; cor: --d --r")
    if general:
        g.add_argument("--general", action="store_true", help="use the general family Q^-_n(d,r)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="vertex budget (default %(default)s)")


def _params(args: argparse.Namespace) -> GeneralParams:
    if args.family:
        return special(args.family, args.n, args.d, args.r)
    missing = [k for k in ("n", "d", "r") if getattr(args, k) is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{k}" for k in missing))
    if getattr(args, "general", False):
        return GeneralParams(args.n, args.d, args.r)
    try:
        return Params(args.n, args.d, args.r)
    except ParamsError as exc:
        if (args.d * args.r) % args.n:
            raise ParamsError(f"{exc} (hint: use --general for Q^-_n(d,r))") from None
        raise


def _cayley(args: argparse.Namespace) -> Params:
    p = _params(args)
    if not isinstance(p, Params):
        raise UsageError("this command needs the Cayley family Q_n(d,r); drop --general")
    return p


def _emit(args: argparse.Namespace, payload: dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _table(rows: list[tuple[str, Any]]) -> str:
    w = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


# ---------------------------------------------------------------- commands


def cmd_gen(args: argparse.Namespace) -> int:
    p = _params(args)
    g = build_general(p, args.budget) if args.general else build_graph(p, args.budget)  # type: ignore[arg-type]
    if args.general and not g.connected:
        print(f"warning: Q^-_{p.n}({p.d},{p.r}) is disconnected (d*r < n)", file=sys.stderr)
    text = export(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_route(args: argparse.Namespace) -> int:
    from .oracle import bfs_distances
    from .routing import check_path, shortest_path

    p = _cayley(args)
    if p.order > args.budget:
        raise BudgetExceeded("route", p.order, args.budget)
    u, v = p.parse_vertex(args.src), p.parse_vertex(args.dst)
    path = shortest_path(u, v, p)
    payload: dict[str, Any] = {
        "src": str(u),
        "dst": str(v),
        "length": path.length,
        "path": [str(w) for w in path.vertices()],
        "cube_directions": path.cube_directions(),
    }
    status = EXIT_OK
    if args.verify:
        check_path(path)
        bfs = int(bfs_distances(build_graph(p, args.budget), u).dist[p.index(v)])
        payload["bfs_length"] = bfs
        if bfs != path.length:
            payload["mismatch"] = True
            status = EXIT_VERIFY
    text = " -> ".join(payload["path"]) + f"\nlength {path.length}"
    if args.verify:
        text += f" (BFS {payload['bfs_length']})"
    _emit(args, payload, text)
    return status


def cmd_diam(args: argparse.Namespace) -> int:
    from .metrics import diameter_formula
    from .oracle import bfs_diameter

    p = _cayley(args)
    diam = diameter_formula(p)
    payload: dict[str, Any] = {"n": p.n, "d": p.d, "r": p.r, "diameter": diam, "method": "formula"}
    rows = [("instance", f"Q_{p.n}({p.d},{p.r})"), ("diameter", diam)]
    status = EXIT_OK
    if args.oracle:
        bfs = bfs_diameter(build_graph(p, args.budget))
        payload["diameter_oracle"] = bfs
        rows.append(("BFS", bfs))
        if bfs != diam:
            status = EXIT_VERIFY
    _emit(args, payload, _table(rows))
    return status


def cmd_metrics(args: argparse.Namespace) -> int:
    from .metrics import build_report, orbit_proportionality_check

    p = _cayley(args)
    report = build_report(p, args.oracle, args.budget)
    payload = report.to_dict()
    if args.oracle == "full":
        op = orbit_proportionality_check(p, seed=args.seed)
        payload["orbit_proportional"] = {
            "value": op.passed,
            "pairs_checked": op.pairs_checked,
            "witness": op.witness,
            "method": "oracle",
        }
    problems = report.check()
    if problems:
        payload["verification_failures"] = problems
    if args.out:
        from .plotting import distance_profile, orbit_loads

        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"rcr_{p.n}_{p.d}_{p.r}"
        (out / f"{stem}.json").write_text(json.dumps(payload, indent=2) + "\n")
        distance_profile(p, out / f"{stem}_distances.png")
        orbit_loads(report, out / f"{stem}_loads.png")
    rows = [(k, _short(v)) for k, v in payload.items() if k not in ("params",)]
    _emit(args, payload, f"Q_{p.n}({p.d},{p.r})  |V|={p.order}\n" + _table(rows))
    return EXIT_VERIFY if problems else EXIT_OK


def _short(v: Any) -> str:
    if isinstance(v, dict):
        if "value" in v:
            return f"{v['value']} ({v.get('method', '')})"
        if "lo" in v and "hi" in v:
            return f"[{v['lo']}, {v['hi']}] ({v.get('method', '')})"
        return json.dumps(v)
    return str(v)


def cmd_bisect(args: argparse.Namespace) -> int:
    from .metrics import bisection_constructions, bw_bounds
    from .oracle import BISECTION_LIMIT, brute_force_bisection

    p = _cayley(args)
    cons = bisection_constructions(p, args.budget)
    bw = bw_bounds(p)
    payload: dict[str, Any] = {
        "n": p.n,
        "d": p.d,
        "r": p.r,
        "lo": bw.lo,
        "lo_exact": str(bw.lo_exact),
        "hi": bw.hi,
        "best": bw.best,
        "constructions": {c.name: c.cut for c in cons},
    }
    rows = [("lower bound", f"{bw.lo} ({bw.lo_exact})")]
    rows += [(c.name, c.cut) for c in cons]
    status = EXIT_OK
    if args.oracle:
        if p.order > BISECTION_LIMIT:
            raise BudgetExceeded("exhaustive bisection", p.order, BISECTION_LIMIT)
        exact, side = brute_force_bisection(build_graph(p, args.budget))
        payload["bw_oracle"] = exact
        payload["witness"] = [str(p.vertex_at(i)) for i in range(p.order) if side[i]]
        rows.append(("exact", exact))
        if not bw.lo <= exact <= bw.hi:
            status = EXIT_VERIFY
    _emit(args, payload, _table(rows))
    return status


def cmd_verify(args: argparse.Namespace) -> int:
    from .sweep import default_sweep, general_sweep, result_dict, run_sweep, summarize, to_csv

    if args.only:
        instances: list[GeneralParams] = []
        for spec in args.only:
            try:
                n, d, r = (int(t) for t in spec.split(","))
            except ValueError:
                raise UsageError(f"--only expects n,d,r (got {spec!r})") from None
            instances.append(Params(n, d, r) if (d * r) % n == 0 else GeneralParams(n, d, r))
    else:
        instances = list(default_sweep(args.max_order))
        if args.include_general:
            instances += general_sweep(args.max_order)
    big = [p for p in instances if p.order > args.budget]
    if big:
        raise BudgetExceeded("verify sweep", max(p.order for p in big), args.budget)

    def tick(res):
        if args.progress:
            mark = "ok" if res.passed else "FAIL " + ",".join(c.name for c in res.failures())
            print(f"{res.family}_{res.n}({res.d},{res.r}) {mark}", file=sys.stderr)

    results = run_sweep(instances, args.jobs, paths=not args.no_paths, scalar=not args.no_scalar, progress=tick)
    s = summarize(results)
    payload = {
        "instances": s.instances,
        "passed": s.passed,
        "failed_checks": s.failed_checks,
        "first_failures": s.first_failures,
        "seconds": round(s.seconds, 2),
    }
    if args.out:
        from .plotting import td_against_bounds
        from .sweep import iter_rows

        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.csv").write_text(to_csv(results))
        (out / "sweep.json").write_text(json.dumps([result_dict(r) for r in results], indent=1) + "\n")
        td_against_bounds(list(iter_rows(results)), out / "td_bounds.png")
    rows = [("instances", s.instances), ("passed", s.passed)]
    rows += [(f"FAIL {k}", f"{v} instances; first {s.first_failures[k]}") for k, v in s.failed_checks.items()]
    _emit(args, payload, _table(rows))
    return EXIT_OK if s.ok else EXIT_VERIFY


def cmd_census(args: argparse.Namespace) -> int:
    from .oracle import census_bases, t_neighbour_census

    p = _params(args)
    g = build_general(p, args.budget) if args.general else build_graph(p, args.budget)  # type: ignore[arg-type]
    if not g.connected:
        raise ParamsError(f"Q^-_{p.n}({p.d},{p.r}) is disconnected (d*r < n)")
    rows = [t_neighbour_census(g, b) for b in census_bases(p)]
    width = max(len(c.counts) for c in rows)
    counts = [list(c.counts) + [0] * (width - len(c.counts)) for c in rows]
    differ = [t for t in range(width) if counts[0][t] != counts[1][t]]
    payload = {
        "n": p.n,
        "d": p.d,
        "r": p.r,
        "general": bool(args.general),
        "rows": [{"base": str(c.base), "counts": cnt} for c, cnt in zip(rows, counts)],
        "differing_t": differ,
    }
    cell = max(len(str(v)) for row in counts for v in row) + 1
    head = "base".ljust(10) + "".join(str(t).rjust(cell) for t in range(width))
    lines = [head]
    for c, cnt in zip(rows, counts):
        lines.append(str(c.base).ljust(10) + "".join(str(v).rjust(cell) for v in cnt))
    mark = "".join(("*" if t in differ else " ").rjust(cell) for t in range(width))
    lines.append(" " * 10 + mark)
    lines.append(f"first differing t: {differ[0]}" if differ else "censuses agree for every t")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rcring", description="Recursive cubes of rings: build, route, measure, verify.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("gen", help="export the graph as an edge list or DOT")
    _params_args(sp)
    sp.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")
    sp.add_argument("--out", help="write to this file instead of stdout")
    sp.set_defaults(func=cmd_gen)

    fmt = {"choices": ["json", "text"], "default": None}

    sp = sub.add_parser("route", help="shortest path between two vertices")
    _params_args(sp, general=False)
    sp.add_argument("--src", required=True, help='vertex as "bits@x"')
    sp.add_argument("--dst", required=True, help='vertex as "bits@x"')
    sp.add_argument("--verify", action="store_true", help="re-check the length against BFS")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_route)

    sp = sub.add_parser("diam", help="diameter")
    _params_args(sp, general=False)
    sp.add_argument("--oracle", action="store_true", help="also run BFS")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_diam)

    sp = sub.add_parser("metrics", help="full invariant report")
    _params_args(sp, general=False)
    sp.add_argument(
        "--oracle", nargs="?", const="full", default="none", choices=["none", "basic", "full"],
        help="basic: BFS diameter and td; full: also load simulation, bisection, orbit check",
    )
    sp.add_argument("--seed", type=int, default=0, help="sampling seed for the orbit check")
    sp.add_argument("--out", help="directory for the JSON report and figures")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("bisect", help="bisection bounds and constructions")
    _params_args(sp, general=False)
    sp.add_argument("--oracle", action="store_true", help="exhaustive search (small instances only)")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_bisect)

    sp = sub.add_parser("verify", help="run the property suite over a sweep")
    sp.add_argument("--max-order", type=int, default=4096, help="largest 2^n r (default %(default)s)")
    sp.add_argument("--include-general", action="store_true", help="add non-divisible Q^- instances")
    sp.add_argument("--only", action="append", metavar="N,D,R", help="verify just these instances")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--no-paths", action="store_true", help="skip per-vertex path realization")
    sp.add_argument("--no-scalar", action="store_true", help="check the bulk router only")
    sp.add_argument("--progress", action="store_true", help="one line per instance on stderr")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--out", help="directory for sweep.csv, sweep.json and a figure")
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("census", help="t-neighbour counts at two base vertices")
    _params_args(sp)
    sp.add_argument("--format", **fmt)
    sp.set_defaults(func=cmd_census)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = _default_format()
    try:
        return args.func(args)
    except (UsageError, ParamsError) as exc:
        print(f"rcring {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"rcring {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VerificationError, RcrError) as exc:
        print(f"rcring {args.command}: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
