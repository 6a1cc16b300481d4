"""Command-line driver: ``vshape solve|gen|oracle|bench``.

Exit status is 0 on success, 2 for bad input or arguments, 3 when an internal
check fails.
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from .errors import EmptyInput, InvalidParameter, ParseError, TooLarge, VShapeError
from .io import ResultRecord, emit_result, parse_points, write_points
from .vshape import balance, contains_all, widths


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _threads(value):
    if value is None:
        value = os.environ.get("VSHAPE_THREADS")
    if value in (None, ""):
        return None
    n = int(value)
    if n < 1:
        raise InvalidParameter("thread count must be positive")
    return n


def _params(pairs):
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InvalidParameter(f"generator parameter {item!r} is not key=value")
        k, v = item.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def _solve(args):
    from .approx import PlugMode, approx_vshape
    from .exact import SolveReport, solve_exact
    from .ptas import solve_ptas

    P = parse_points(args.input, args.input_format)
    threads = _threads(args.threads)
    t0 = time.perf_counter()
    if args.algorithm == "exact":
        rep = solve_exact(P, balanced=args.balanced, enumerate_optima=args.all_optima,
                          index_tier=args.index_tier, threads=threads)
    elif args.algorithm == "approx":
        mode = PlugMode.EXACT_SMALL if len(P) <= 40 else PlugMode.HEURISTIC
        v, g = approx_vshape(P, mode)
        if args.balanced:
            v = balance(v)
        rep = SolveReport(v, widths(v)[2], None, 1, algorithm="approx", balanced=args.balanced,
                          guarantee=g, stats={"plug": mode.value})
    else:
        rep = solve_ptas(P, args.epsilon, anchor_mode=args.anchor_mode, coreset=args.coreset,
                         threads=threads)
        if args.balanced:
            rep.best, rep.balanced = balance(rep.best), True
            rep.width = widths(rep.best)[2]
    secs = time.perf_counter() - t0
    scale = max(1.0, float(np.abs(P).max()))
    if not contains_all(rep.best, P, 1e-9 * scale):
        raise AssertionError("solver output does not cover the input")
    rec = ResultRecord.from_report(rep, secs, len(P))
    data = emit_result(rec, P, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())
    return 0


def _gen(args):
    from .generate import gen_instance

    params = _params(args.param)
    if args.n is not None:
        params["n"] = args.n
    if args.k is not None:
        params["k"] = args.k
    if args.sigma is not None:
        params["sigma"] = args.sigma
    P = gen_instance(args.kind, params, args.seed)
    meta = {"generator": args.kind, "seed": args.seed, **params}
    text = write_points(P, args.format, meta)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


def _oracle(args):
    from .oracle import brute_force_optimum, grid_search_optimum

    P = parse_points(args.input, args.input_format)
    res = brute_force_optimum(P, override=args.override)
    doc = {"width": res.width, "parallel_limit": res.parallel_limit, "infimum": res.infimum,
           "witnesses": len(res.witnesses)}
    if args.grid:
        doc["grid_width"] = grid_search_optimum(P)
    print(json.dumps(doc, indent=2))
    return 0


def _bench(args):
    from .approx import PlugMode, approx_vshape
    from .exact import solve_exact
    from .generate import gen_instance
    from .ptas import solve_ptas

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'algorithm':<8} {'kind':<13} {'n':>8} {'seconds':>9} {'width':>12}")
    prev = None
    for n in sizes:
        P = gen_instance(args.kind, {"n": n}, args.seed)
        t0 = time.perf_counter()
        if args.algorithm == "exact":
            w = solve_exact(P).width
        elif args.algorithm == "approx":
            w = approx_vshape(P, PlugMode.HEURISTIC if n > 40 else PlugMode.EXACT_SMALL)[0].width
        else:
            w = solve_ptas(P, args.epsilon, anchor_mode="diametral").width
        dt = time.perf_counter() - t0
        growth = ""
        if prev is not None and prev[1] > 0:
            growth = f"  x{dt / prev[1]:.2f} for x{n / prev[0]:.1f} points"
        print(f"{args.algorithm:<8} {args.kind:<13} {n:>8} {dt:>9.3f} {w:>12.6g}{growth}")
        prev = (n, dt)
    return 0


def build_parser():
    p = _Parser(prog="vshape", description="Minimum-width V-shapes covering planar point sets.")
    p.add_argument("--threads", help="worker count (falls back to VSHAPE_THREADS)")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("input")
    s.add_argument("--input-format", choices=["csv", "json"])
    s.add_argument("--algorithm", choices=["exact", "approx", "ptas"], default="exact")
    s.add_argument("--epsilon", type=float, default=0.1)
    s.add_argument("--balanced", action="store_true")
    s.add_argument("--all-optima", action="store_true")
    s.add_argument("--index-tier", type=int, choices=[1, 2], default=1)
    s.add_argument("--anchor-mode", choices=["all", "diametral"], default="all")
    s.add_argument("--coreset", choices=["exact", "kernel"], default="exact")
    s.add_argument("--format", choices=["json", "svg"], default="json")
    s.add_argument("--out")
    s.add_argument("--threads", default=argparse.SUPPRESS)
    s.set_defaults(fn=_solve)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("kind", choices=["uniform", "noisy_corner", "two_kgon"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--sigma", type=float)
    g.add_argument("--param", action="append", metavar="KEY=VALUE", help="extra generator argument")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=["csv", "json"], default="csv")
    g.add_argument("--out")
    g.set_defaults(fn=_gen)

    o = sub.add_parser("oracle", help="brute-force certification of a small instance")
    o.add_argument("input")
    o.add_argument("--input-format", choices=["csv", "json"])
    o.add_argument("--override", action="store_true", help="lift the n <= 12 guard")
    o.add_argument("--grid", action="store_true", help="also run the fine-grid oracle")
    o.set_defaults(fn=_oracle)

    b = sub.add_parser("bench", help="timing table over generated sizes")
    b.add_argument("--algorithm", choices=["exact", "approx", "ptas"], default="exact")
    b.add_argument("--kind", choices=["uniform", "noisy_corner"], default="uniform")
    b.add_argument("--sizes", default="100,200,400,800")
    b.add_argument("--epsilon", type=float, default=0.1)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(fn=_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "threads", None) is not None or "VSHAPE_THREADS" in os.environ:
            _threads(getattr(args, "threads", None))
        return args.fn(args)
    except (ParseError, EmptyInput, InvalidParameter, TooLarge, OSError, ValueError) as e:
        print(f"vshape: input error: {e}", file=sys.stderr)
        return 2
    except (AssertionError, VShapeError) as e:
        print(f"vshape: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
