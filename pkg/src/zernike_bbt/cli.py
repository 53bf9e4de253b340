"""``zernike-bbt`` command line: eval, coeffs, verify, flops, bench.

Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .complexity import (
    BBTRA_COST_GUARD,
    Algorithm,
    CostGuardExceeded,
    instrument_bbtia,
    instrument_bbtra,
    predict_bbtra_per_leaf,
    predict_flops,
)
from .core import InvalidIndex, make_index
from .methods import TREE_RECURSIONS, Method, evaluator
from .reference import coefficients, eval_reference

RHO_GRID = tuple(i / 10 for i in range(11))
TREE_RECURSION_P_CAP = 20


def format_value(x: float) -> str:
    """Shortest round-trip decimal; ``1.0`` prints as ``1``."""
    s = repr(float(x))
    if s.endswith(".0"):
        s = s[:-2]
    if float(s) != x:
        s = f"{x:.17g}"
    return s


def _method_list(text: str) -> list[Method]:
    try:
        return [Method(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_eval(args) -> int:
    idx = make_index(args.n, args.m)
    print(format_value(evaluator(args.algorithm)(idx, args.rho)))
    return 0


def cmd_coeffs(args) -> int:
    poly = coefficients(make_index(args.n, args.m))
    for s, (power, c) in enumerate(zip(poly.powers(), poly.coeffs)):
        print(f"{s},{power},{c}")
    return 0


def verify_sweep(n_max: int, methods=None):
    """Yield ``(method, n, m, rho, deviation)`` for every checked point."""
    methods = [m for m in (methods or Method) if m is not Method.REFERENCE]
    for n in range(n_max + 1):
        for m in range(n % 2, n + 1, 2):
            idx = make_index(n, m)
            refs = [eval_reference(idx, rho) for rho in RHO_GRID]
            for method in methods:
                if method in TREE_RECURSIONS:
                    if idx.p > TREE_RECURSION_P_CAP:
                        continue
                    fn = evaluator(method, share_subtrees=True)
                elif method is Method.BBTRA and idx.p > BBTRA_COST_GUARD:
                    continue
                else:
                    fn = evaluator(method)
                for rho, ref in zip(RHO_GRID, refs):
                    yield method, n, m, rho, abs(fn(idx, rho) - ref)


def cmd_verify(args) -> int:
    worst = {}
    for method, n, m, rho, dev in verify_sweep(args.n_max):
        if method not in worst or dev > worst[method][0]:
            worst[method] = (dev, n, m, rho)
    print(f"{'algorithm':<22} {'max |dev|':>12}  worst (n, m, rho)")
    for method, (dev, n, m, rho) in worst.items():
        print(f"{method.value:<22} {dev:12.3e}  ({n}, {m}, {rho})")
    print(
        f"note: tree recursions checked for n - |m| <= {TREE_RECURSION_P_CAP}, "
        f"bbtra for n - |m| <= {BBTRA_COST_GUARD}"
    )
    breaches = {k: v for k, v in worst.items() if v[0] > args.tolerance}
    if breaches:
        method, (dev, n, m, rho) = max(breaches.items(), key=lambda kv: kv[1][0])
        print(
            f"FAIL: {method.value} deviates by {dev:.3e} > {args.tolerance:g} "
            f"at n={n}, m={m}, rho={rho}",
            file=sys.stderr,
        )
        return 1
    print(f"OK: all deviations within {args.tolerance:g}")
    return 0


def cmd_flops(args) -> int:
    idx = make_index(args.n, args.m)
    algorithm = Algorithm(args.algorithm)
    if algorithm is Algorithm.BBTRA:
        counter = instrument_bbtra(idx)
    else:
        counter = instrument_bbtia(idx)
    measured = counter.flops()
    predicted = predict_flops(algorithm, idx)
    rows = [("measured", measured), ("predicted", predicted)]
    if algorithm is Algorithm.BBTRA:
        rows.append(("per-leaf", predict_bbtra_per_leaf(idx)))
    print(f"{'':<10} {'mults':>8} {'adds':>8} {'total':>8}")
    for name, fv in rows:
        print(f"{name:<10} {fv.mults:>8} {fv.adds:>8} {fv.total:>8}")
    print(f"pow loop multiplications actually executed: {counter.pow_mults_actual}")
    if algorithm is Algorithm.BBTRA:
        ok = measured == predicted
    else:
        ok = measured.adds == predicted.adds
    if not ok:
        print("MISMATCH between measured and closed-form counts", file=sys.stderr)
        return 1
    return 0


def cmd_bench(args) -> int:
    config = bench.BenchConfig(
        n_values=args.n,
        rho=args.rho,
        repetitions=args.reps,
        algorithms=args.algorithms,
        time_budget_per_point=args.budget,
    )

    def progress(r):
        if args.verbose:
            shown = "timed out" if r.mean_time_ns is None else f"{r.mean_time_ns:.1f} ns"
            print(f"{r.algorithm} n={r.n} m={r.m}: {shown}", file=sys.stderr)

    records = bench.run_benchmark(config, progress)
    try:
        if args.out == "-":
            bench.emit_csv(records, sys.stdout)
        else:
            bench.emit_csv(records, args.out)
        if args.plot_out:
            _write_plot_data(records, Path(args.plot_out))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_ordering(records, config)
    return 0


def semilog_csv_path(plot_path: Path) -> Path:
    return plot_path.with_name(plot_path.stem + "_semilog.csv")


def _write_plot_data(records, path: Path) -> None:
    blocks, rows = [], []
    for n in sorted({r.n for r in records}):
        try:
            series = bench.emit_semilog_series([r for r in records if r.n == n])
        except bench.EmptySeries:
            continue
        blocks.append(bench.series_gnuplot(series, n))
        rows += bench.series_csv(series, n).splitlines(keepends=True)[1:]
    path.write_text("\n\n".join(blocks), encoding="utf-8")
    header = "n,algorithm,n_minus_m,log10_mean_time_ns\n"
    semilog_csv_path(path).write_text(header + "".join(rows), encoding="utf-8")


def _print_ordering(records, config) -> None:
    def shown(r):
        if r.mean_time_ns is None:
            return f"{r.algorithm} (> {config.time_budget_per_point:g} s)"
        return f"{r.algorithm} ({r.mean_time_ns / 1e3:.3g} us)"

    for n in config.n_values:
        at_n = [r for r in records if r.n == n]
        p_max = max(r.n - r.m for r in at_n)
        point = sorted(
            (r for r in at_n if r.n - r.m == p_max),
            key=lambda r: float("inf") if r.mean_time_ns is None else r.mean_time_ns,
        )
        print(
            f"n={n}, n-m={p_max}, fastest first: " + ", ".join(map(shown, point)),
            file=sys.stderr,
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zernike-bbt", description="Zernike radial polynomials R_n^m(rho)."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate R_n^m(rho)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("rho", type=float)
    p.add_argument("--algorithm", type=Method, choices=list(Method), default=Method.BBTIA)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="exact coefficients: s,power,c_s")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", help="compare every evaluator with the reference")
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flops", help="measured vs closed-form flop counts")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm], default="bbtia")
    p.set_defaults(func=cmd_flops)

    p = sub.add_parser("bench", help="running-time sweep over m at fixed n")
    p.add_argument("--n", type=_int_list, default=[28, 29], help="comma-separated n values")
    p.add_argument("--rho", type=float, default=0.5)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--algorithms", type=_method_list, default=list(Method))
    p.add_argument("--budget", type=float, default=120.0, help="seconds per point")
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--plot-out", help="gnuplot data path; a <stem>_semilog.csv twin is written next to it")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.n_max < 0:
        parser.error("--n-max must be non-negative")
    if args.command == "bench" and (args.reps < 1 or not args.n or not args.algorithms):
        parser.error("bench needs --reps >= 1, at least one n and one algorithm")
    try:
        return args.func(args)
    except (InvalidIndex, CostGuardExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
