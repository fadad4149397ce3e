"""Command-line entry point.

Exit codes: 0 success, 1 unreachable or failed verification, 2 usage error,
3 state budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import constants
from .fs import (IllegalMove, StateBudgetExceeded, UnsupportedInstance, check_config, format_config,
                 format_moves, is_complete, parse_config, parse_moves, replay, report_ok,
                 report_unreachable, same_component, star_center, state_budget)
from .graph import Graph, GraphError, family, read_edge_list

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
STRATEGIES = ("auto", "star", "kn", "dense3", "dense-exchange", "oracle")


class UsageError(Exception):
    pass


def err(msg):
    print(msg, file=sys.stderr)


# ------------------------------------------------------------ inputs

def _family_spec(spec: str):
    name, _, rest = spec.partition(":")
    params = tuple(int(t) for t in rest.split(",")) if rest else None
    return name, params


def load_graph(spec: str, n=None) -> Graph:
    """A file path, or family[:params] such as star, theta:1,2,2, grid:4."""
    if os.path.exists(spec):
        return read_edge_list(spec)
    name, params = _family_spec(spec)
    if name == "theta" and params:
        return family(name, 0, params)
    if name == "grid" and params:
        return family(name, params[0] ** 2, params)
    if n is None:
        raise UsageError(f"graph {spec!r} needs --n or a file-based partner graph")
    return family(name, n, params)


def load_pair(args):
    """Resolve --x and --y; a file or parametrised family fixes n for the other one."""
    n = args.n
    X = Y = None
    for attr in ("x", "y"):
        try:
            g = load_graph(getattr(args, attr), n)
        except UsageError:
            continue
        n = n or g.n
        if attr == "x":
            X = g
        else:
            Y = g
    X = X or load_graph(args.x, n)
    Y = Y or load_graph(args.y, n)
    if X.n != Y.n:
        raise UsageError(f"X has {X.n} vertices but Y has {Y.n}")
    return X, Y


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def load_config(path: str, n: int) -> tuple:
    return check_config(parse_config(read_text(path)), n)


def parse_range(text: str) -> list:
    for sep in ("..", "-"):
        if sep in text:
            a, b = text.split(sep)
            return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


# ------------------------------------------------------------ solving

def _swap_labels(c, a, b):
    c = list(c)
    c[a], c[b] = c[b], c[a]
    return tuple(c)


def _solve_star(X, Y, start, target):
    from .star.solver import solve_star
    ctr = star_center(X)
    if ctr is None:
        raise UsageError("strategy star needs X to be a star")
    # relabel so the centre is person 0; moves are positions so they carry over
    rep = solve_star(Y, _swap_labels(start, 0, ctr), _swap_labels(target, 0, ctr))
    if rep.reachable:
        rep.sequence.start = tuple(start)
    return rep


def _solve_kn(X, Y, start, target):
    from .kn import solve_kn
    if not is_complete(X):
        raise UsageError("strategy kn needs X complete")
    return solve_kn(Y, start, target)


def _solve_oracle(X, Y, start, target):
    from .oracle import geodesic
    budget = math.factorial(X.n)
    if budget > state_budget():
        raise StateBudgetExceeded(f"{X.n}! states exceed the oracle budget")
    moves = geodesic(X, Y, start, target)
    if moves is None:
        return report_unreachable(budget, "oracle")
    return report_ok(start, moves, budget, "oracle")


def choose_strategy(X: Graph, Y: Graph) -> str:
    """auto: star X -> star, complete X -> kn, then the two degree conditions, then the oracle."""
    from .dense import exchange_condition, three_swap_condition
    from .graph import is_connected
    if is_complete(X):
        return "kn"
    if star_center(X) is not None:
        return "star"
    if is_connected(X) and is_connected(Y):
        if three_swap_condition(X, Y):
            return "dense3"
        if exchange_condition(X, Y):
            return "dense-exchange"
    return "oracle"


def solve(X, Y, start, target, strategy="auto"):
    from .dense import solve_dense_3swap, solve_dense_exchange
    if strategy == "auto":
        strategy = choose_strategy(X, Y)
    fn = {"star": _solve_star, "kn": _solve_kn, "dense3": solve_dense_3swap,
          "dense-exchange": solve_dense_exchange, "oracle": _solve_oracle}[strategy]
    return fn(X, Y, start, target)


def cmd_solve(args):
    from .dense import DegreeConditionViolated
    X, Y = load_pair(args)
    if args.from_ == "-" and args.to == "-":
        raise UsageError("only one of --from/--to may read standard input")
    start = load_config(args.from_, X.n)
    target = load_config(args.to, X.n)
    try:
        rep = solve(X, Y, start, target, args.strategy)
    except DegreeConditionViolated as e:
        raise UsageError(str(e))
    err(f"solver: {rep.solver_id}")
    if args.json:
        d = rep.as_dict()
        d["start"] = list(start)
        d["target"] = list(target)
        print(json.dumps(d, sort_keys=True))
    elif rep.reachable:
        text = format_moves(rep.sequence.moves)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        print("unreachable")
    return EXIT_OK if rep.reachable else EXIT_FAIL


def cmd_verify(args):
    X, Y = load_pair(args)
    start = load_config(args.start, X.n)
    moves = parse_moves(read_text(args.moves))
    try:
        final = replay(X, Y, start, moves)
    except IllegalMove as e:
        if args.json:
            print(json.dumps({"ok": False, "illegal_index": e.index, "reason": str(e)}, sort_keys=True))
        else:
            print(f"illegal move at index {e.index}")
        err(str(e))
        return EXIT_FAIL
    ok = True
    if args.to:
        ok = final == load_config(args.to, X.n)
    if args.json:
        print(json.dumps({"ok": ok, "final": list(final), "length": len(moves)}, sort_keys=True))
    else:
        sys.stdout.write(format_config(final))
    if not ok:
        err("final configuration differs from --to")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args):
    X, Y = load_pair(args)
    a = load_config(args.a, X.n)
    b = load_config(args.b, X.n)
    try:
        verdict, kind = same_component(X, Y, a, b)
    except UnsupportedInstance as e:
        raise StateBudgetExceeded(str(e))
    if args.json:
        print(json.dumps({"same_component": verdict, "certificate": kind}, sort_keys=True))
    else:
        print(f"{'same' if verdict else 'different'} {kind}")
    return EXIT_OK if verdict else EXIT_FAIL


# ------------------------------------------------------------ oracle / experiments

def _emit_rows(rows, fieldnames, out, header=None, plot=None, as_json=False):
    from .experiments import write_csv
    if out:
        write_csv(out, rows, header, fieldnames)
        if plot:
            from . import plotting
            path = plot(rows, plotting.figure_path(out))
            err(f"figure: {path}")
    if as_json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
    elif not out:
        print(",".join(fieldnames))
        for r in rows:
            print(",".join("" if r.get(k) is None else str(r.get(k)) for k in fieldnames))


def cmd_oracle(args):
    from . import oracle
    from .plotting import plot_components, plot_growth
    plot = None if args.no_plot else True
    if args.what == "components":
        X, Y = load_pair(args)
        comps = oracle.components(X, Y, diameters=not args.no_diameters)
        rows = [{"n": X.n, "component_id": c.component_id, "size": c.size, "diameter": c.diameter}
                for c in comps]
        _emit_rows(rows, ["n", "component_id", "size", "diameter"], args.out,
                   plot=plot and plot_components, as_json=args.json)
        return EXIT_OK
    if args.what == "distance":
        X, Y = load_pair(args)
        a = load_config(args.a, X.n)
        b = load_config(args.b, X.n)
        d = oracle.distance(X, Y, a, b)
        if args.json:
            print(json.dumps({"distance": d, "reachable": d is not None}, sort_keys=True))
        else:
            print("unreachable" if d is None else d)
        return EXIT_OK if d is not None else EXIT_FAIL
    rows = [{"n": n, "diameter": d} for n, d in oracle.diameter_sweep(args.x, args.y, parse_range(args.n_range))]
    _emit_rows(rows, ["n", "diameter"], args.out,
               plot=plot and (lambda r, p: plot_growth(r, p, title=f"FS({args.x}, {args.y})")),
               as_json=args.json)
    return EXIT_OK


def cmd_experiment(args):
    from . import experiments as ex
    from . import plotting
    plot = not args.no_plot
    if args.what == "random":
        if args.n is None:
            raise UsageError("experiment random needs --n")
        cfg = ex.ExperimentConfig(n=args.n, p=args.p, q=args.q, trials=args.trials, seed=args.seed,
                                  c_constant=args.c_constant)
        records = ex.run_random_campaign(cfg)
        rows = [r.row() for r in records]
        header = cfg.header()
        if args.out:
            ex.write_csv(args.out, rows, header)
            if plot:
                err(f"figure: {plotting.plot_trials(rows, plotting.figure_path(args.out))}")
        if args.jsonl:
            ex.write_jsonl(args.jsonl, rows, header)
        print(json.dumps({"header": header, "summary": ex.summarize(records)}, sort_keys=True))
        return EXIT_OK
    ns = parse_range(args.n_range)
    if args.what == "bn":
        rows = ex.bn_campaign(ns)
        _emit_rows(rows, ["n", "diameter"], args.out, {"generator": "exact oracle"},
                   plot=plot and (lambda r, p: plotting.plot_growth(r, p, title="FS(Star_n, B_n)", ref_power=3)),
                   as_json=args.json)
    else:
        rows = ex.reversal_campaign(ns)
        _emit_rows(rows, ["n", "distance", "solver_length", "binom"], args.out, {"generator": "exact oracle"},
                   plot=plot and plotting.plot_reversal, as_json=args.json)
    return EXIT_OK


def cmd_bench(args):
    from .bench import measure
    values = measure(seed=args.seed, hosts=args.hosts, log=err)
    path = args.out or constants.constants_path()
    constants.save_constants(values, path)
    print(json.dumps(values, sort_keys=True))
    err(f"constants written to {path}")
    return EXIT_OK


# ------------------------------------------------------------ parser

def _pair_args(p):
    p.add_argument("--x", required=True, help="friendship graph: edge-list file or family[:params]")
    p.add_argument("--y", required=True, help="movement graph: edge-list file or family[:params]")
    p.add_argument("--n", type=int, help="vertex count when both graphs are bare family names")
    p.add_argument("--json", action="store_true")


def build_parser():
    ap = argparse.ArgumentParser(prog="fsgraphs", description="Routing and exact search in friends-and-strangers graphs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="find a friendly-swap sequence")
    _pair_args(p)
    p.add_argument("--from", dest="from_", required=True, help="start configuration file or -")
    p.add_argument("--to", required=True, help="target configuration file or -")
    p.add_argument("--strategy", choices=STRATEGIES, default="auto")
    p.add_argument("--out", help="write the move file here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="replay a move file")
    _pair_args(p)
    p.add_argument("--start", required=True)
    p.add_argument("--moves", required=True)
    p.add_argument("--to", help="expected final configuration")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="decide whether two configurations are connected")
    _pair_args(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("oracle", help="exhaustive search for small n")
    osub = p.add_subparsers(dest="what", required=True)
    q = osub.add_parser("components")
    _pair_args(q)
    q.add_argument("--no-diameters", action="store_true")
    q = osub.add_parser("distance")
    _pair_args(q)
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q = osub.add_parser("sweep")
    q.add_argument("--x", required=True, help="family name for X")
    q.add_argument("--y", required=True, help="family name for Y")
    q.add_argument("--n-range", required=True, help="e.g. 4..7")
    q.add_argument("--json", action="store_true")
    for q in osub.choices.values():
        q.add_argument("--out", help="CSV path; a figure is written next to it")
        q.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("experiment", help="random-graph trials and exact campaigns")
    esub = p.add_subparsers(dest="what", required=True)
    q = esub.add_parser("random")
    q.add_argument("--n", type=int)
    q.add_argument("--p", type=float)
    q.add_argument("--q", type=float)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--c-constant", type=float, default=10.0)
    q.add_argument("--jsonl", help="also write JSON lines here")
    for name in ("bn", "reversal"):
        q = esub.add_parser(name)
        q.add_argument("--n-range", required=True)
        q.add_argument("--json", action="store_true")
    for q in esub.choices.values():
        q.add_argument("--out", help="CSV path; a figure is written next to it")
        q.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bench", help="measure length constants and write the constants file")
    p.add_argument("--out", help="defaults to FS_CONSTANTS or the packaged file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hosts", type=int, default=1500)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, FileNotFoundError) as e:
        err(f"error: {e}")
        return EXIT_USAGE
    except StateBudgetExceeded as e:
        err(f"budget exceeded: {e}")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
