"""Command-line interface: ``saft <transform|analyze|reconstruct|benchmark>``.

Exit codes: 0 success, 1 acceptance failure, 2 I/O error, 3 validation error.
The environment variable ``SAFT_THREADS`` caps the BLAS/FFT thread pools.
"""
from __future__ import annotations

import argparse
import contextlib
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .core import ParamSet
from .errors import SaftError
from .fixtures import (DEFAULT_SEED, LOCAL_INTERVAL, LOCAL_NUM_POINTS, LOCAL_ROWS,
                       data_path, local_setup)
from .generators import Generator, make_generator
from .grids import Signal, UniformGrid
from .io import (atomic_write_text, dump_params, load_params, read_samples, read_signal,
                 read_spectrum, write_json, write_signal, write_spectrum)
from .sampling import (interpolating_kernel, local_reconstruct, reconstruct_uniform,
                       shannon_saft)
from .siv import (bernstein_constant, bspline_gramian_comparison, classify_system,
                  phi_dagger, u_operator_bounds)
from .transform import isaft, matched_frequency_grid, saft_fast, saft_quadrature
from .zak import zak_points

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_VALIDATION = 0, 1, 2, 3
CLI_GENERATORS = ("chirped_sinc", "bspline2", "bspline2c", "tabulated")
BENCHMARK_THRESHOLD = 1e-9


class UsageError(Exception):
    """Invalid command-line option values (maps to exit 3)."""


def _err(msg: str) -> None:
    print(f"saft: error: {msg}", file=sys.stderr)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------
def _params(arg) -> ParamSet:
    return load_params(arg if arg is not None else data_path("a2b3.json"))


def _grid_from_args(start, step, count, what: str):
    given = [v is not None for v in (start, step, count)]
    if not any(given):
        return None
    if not all(given):
        raise UsageError(f"--{what}-start, --{what}-step and --{what}-count go together")
    return UniformGrid(float(start), float(step), int(count))


def _generator(name: str, tab: str | None = None) -> Generator:
    if name not in CLI_GENERATORS:
        raise UsageError(f"unknown generator {name!r}; choose from {', '.join(CLI_GENERATORS)}")
    if name == "tabulated":
        if tab is None:
            raise UsageError("--gen tabulated needs --gen-samples FILE")
        return Generator("tabulated", samples=read_signal(tab))
    return make_generator(name)


def _resolved(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


@contextlib.contextmanager
def _thread_limit():
    n = os.environ.get("SAFT_THREADS")
    if not n:
        yield
        return
    try:
        limit = int(n)
        if limit < 1:
            raise ValueError
    except ValueError:
        raise UsageError(f"SAFT_THREADS must be a positive integer, got {n!r}") from None
    from threadpoolctl import threadpool_limits
    from scipy import fft as sfft
    with threadpool_limits(limits=limit), sfft.set_workers(limit):
        yield


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------
def cmd_transform(args) -> int:
    A = _params(args.params)
    report = {"command": "transform", "params": dump_params(A), "config": _resolved(args)}
    if args.inverse:
        F = read_spectrum(args.input)
        T = _grid_from_args(args.t_start, args.t_step, args.t_count, "t")
        if T is None:
            n = F.grid.count
            dt = 2.0 * math.pi * abs(A.b) / (n * F.grid.step)
            T = UniformGrid(-dt * (n // 2), dt, n)
        f = isaft(A, F, T, method="quadrature" if args.oracle else "fast")
        if args.oracle:
            report["oracle_defect"] = float(np.max(np.abs(
                f.values - isaft(A, F, T, method="fast").values)))
        write_signal(args.out, f)
        report["output"] = {"kind": "signal", "grid": T.as_dict()}
    else:
        f = read_signal(args.input)
        W = _grid_from_args(args.omega_start, args.omega_step, args.omega_count, "omega")
        if W is None:
            W = matched_frequency_grid(A, f.grid)
        if args.oracle:
            F = saft_quadrature(A, f, W)
            report["oracle_defect"] = float(np.max(np.abs(F.values - saft_fast(A, f, W).values)))
        else:
            F = saft_fast(A, f, W)
        write_spectrum(args.out, F)
        report["output"] = {"kind": "spectrum", "grid": W.as_dict()}
    if args.report:
        write_json(args.report, report)
    if args.oracle:
        print(f"oracle defect: {report['oracle_defect']:.3e}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------
def _dagger_crosscheck(A, gen, n_points=9):
    """phi_dagger against sqrt(2 pi |b|) eta Z phi(0, omega) on a few points."""
    w = np.linspace(A.p - A.half_width, A.p + A.half_width, n_points)
    direct = phi_dagger(A, gen, w)
    if gen.kind == "tabulated":
        tab = gen.samples
        K = int(math.ceil(max(abs(tab.grid.start), abs(tab.grid.stop)))) + 1
    else:
        K = 30 if gen.kind == "chirped_sinc" else 3
        g = UniformGrid.from_step(-K - 1.0, K + 1.0, 0.125)
        tab = Signal(g, gen.evaluate(g.points, A))
    z = zak_points(A, tab, [0.0], w, K, warn=False)[0]
    from .core import eta
    via_zak = math.sqrt(2.0 * math.pi * abs(A.b)) * eta(A, w) * z
    return [{"omega": float(wi), "phi_dagger": d, "via_zak": v, "defect": float(abs(d - v))}
            for wi, d, v in zip(w, direct, via_zak)]


def cmd_analyze(args) -> int:
    gen = _generator(args.gen, args.gen_samples)
    A = _params(args.params)
    cls = classify_system(A, gen, args.resolution, tol=args.tol)
    out = cls.to_dict()
    out["generator"] = gen.name
    out["params"] = dump_params(A)
    if cls.verdict != "degenerate":
        lo, hi = u_operator_bounds(A, gen, args.resolution)
        out["u_operator_bounds"] = {"lower": lo, "upper": hi}
        b = bernstein_constant(A, gen, args.resolution)
        out["bernstein"] = {"M": b.M, "in_class_A": b.in_class_A, "argmax": b.argmax,
                            "method": b.method}
        out["phi_dagger_crosscheck"] = _dagger_crosscheck(A, gen)
        if gen.kind == "bspline2" and not gen.centered:
            out["gramian_closed_vs_quadrature"] = bspline_gramian_comparison(A, 0)
    if args.out:
        write_json(args.out, out)
    print(f"verdict: {cls.verdict}  m={cls.m:.6g}  M={cls.M:.6g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------
def cmd_reconstruct(args) -> int:
    A = _params(args.params)
    samples = read_samples(args.samples)
    report = {"command": "reconstruct", "mode": args.mode, "params": dump_params(A),
              "config": _resolved(args)}
    T = _grid_from_args(args.t_start, args.t_step, args.t_count, "t")
    truth = read_signal(args.truth) if args.truth else None
    if T is None:
        T = truth.grid if truth is not None else UniformGrid.from_step(-10.0, 10.0, 0.01)
    if args.mode == "uniform":
        gen = _generator(args.gen or "chirped_sinc", args.gen_samples)
        sym, S = interpolating_kernel(A, gen)
        out = reconstruct_uniform(A, S, samples, T)
        # residual at the sample points themselves
        pts = samples.points
        vals = np.zeros(pts.size, dtype=complex)
        for n, v in zip(samples.integer_indices(), samples.values):
            vals += v * np.exp(-1j * (A.a / A.b) * n * (pts - n)) * S(pts - n)
        report["sample_residual_max"] = float(np.max(np.abs(vals - samples.values))) if pts.size else 0.0
        report["filter_coefficients"] = {str(k): v for k, v in sym.coeffs.items()}
    elif args.mode == "shannon":
        out = Signal(T, shannon_saft(A, samples, T.points))
        if args.at:
            report["at"] = [{"t": t, "value": shannon_saft(A, samples, t)} for t in args.at]
    else:  # local
        if args.interval is None or args.M is None:
            raise UsageError("local mode requires --interval A B and --M")
        gen = _generator(args.gen or "bspline2c", args.gen_samples)
        rep = local_reconstruct(A, gen, samples, tuple(args.interval), args.M,
                                enforce_count=not args.allow_count_violation,
                                rank_slack=args.rank_slack,
                                dense_step=T.step)
        report.update(rep.to_dict())
        g = rep.dense_grid
        out = Signal(g, rep.reconstruction)
        if truth is not None:
            T = truth.grid
            from .sampling import synthesize
            coeffs = {int(k): c for k, c in zip(rep.indices, rep.coefficients) if c != 0}
            out = Signal(T, synthesize(A, gen, coeffs, T.points))
    if truth is not None:
        if truth.grid.count != out.grid.count or not np.allclose(truth.points, out.points,
                                                                 rtol=0, atol=1e-9):
            raise UsageError("--truth grid must match the output grid")
        err = np.abs(out.values - truth.values)
        report["residual_max"] = float(np.max(err))
        report["residual_l2"] = float(math.sqrt(np.sum(err ** 2) * truth.grid.step))
    write_signal(args.out, out)
    if args.report:
        write_json(args.report, report)
    if "residual_max" in report:
        print(f"residual_max: {report['residual_max']:.3e}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# benchmark
# ---------------------------------------------------------------------------
def run_benchmark(rows=LOCAL_ROWS, seed: int = DEFAULT_SEED, outdir=None,
                  threshold: float = BENCHMARK_THRESHOLD):
    """Run the local-reconstruction benchmark; returns the list of row dicts."""
    A, gen, coeffs, samples = local_setup(seed)
    results = []
    for M in rows:
        t0 = time.perf_counter()
        rep = local_reconstruct(A, gen, samples, LOCAL_INTERVAL, int(M),
                                enforce_count=False, truth=coeffs)
        results.append({
            "M": int(M),
            "error": rep.error_max,
            "residual_max": rep.residual_max,
            "unknowns": rep.config["N_unknowns"],
            "rank": rep.rank,
            "active_columns": rep.active_columns,
            "count_condition_met": rep.count_condition_met,
            "count_required": rep.config["count_required"],
            "seconds": time.perf_counter() - t0,
            "passed": bool(rep.error_max <= threshold),
            "_report": rep,
        })
    if outdir is not None:
        d = Path(outdir)
        d.mkdir(parents=True, exist_ok=True)
        atomic_write_text(d / "errors.csv", "M,error\n" + "".join(
            f"{r['M']},{r['error']:.17g}\n" for r in results))
        first = results[0]["_report"]
        write_signal(d / "original.csv", Signal(first.dense_grid, first.truth))
        for r in results:
            rep = r["_report"]
            write_signal(d / f"reconstructed_M{r['M']}.csv",
                         Signal(rep.dense_grid, rep.reconstruction))
        f = Signal(first.dense_grid, first.truth)
        write_spectrum(d / "saft.csv", saft_fast(A, f))
        write_json(d / "report.json", {
            "command": "benchmark",
            "params": dump_params(A),
            "generator": gen.name,
            "interval": list(LOCAL_INTERVAL),
            "num_samples": LOCAL_NUM_POINTS,
            "seed": seed,
            "threshold": threshold,
            "rows": [{k: v for k, v in r.items() if k != "_report"} for r in results],
        })
    return results


def cmd_benchmark(args) -> int:
    rows = args.rows or list(LOCAL_ROWS)
    for m in rows:
        if m < 1:
            raise UsageError("--rows values must be positive integers")
    results = run_benchmark(rows, args.seed, args.outdir, args.threshold)
    print("M,error")
    for r in results:
        print(f"{r['M']},{r['error']:.6e}")
    if not all(r["passed"] for r in results):
        _err(f"benchmark error above {args.threshold:g}")
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="saft",
        description="Special affine Fourier transform toolkit: transforms, "
                    "shift-invariant space analysis and sampling.",
        epilog="Exit codes: 0 ok, 1 acceptance failure, 2 I/O error, 3 validation "
               "error. SAFT_THREADS caps internal thread pools.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    params_help = ("parameter JSON file {a,b,c,d,p,q} (missing c is derived), or "
                   "preset:NAME[:VALUE]; default: bundled a=2,b=3,d=4,p=q=0")

    t = sub.add_parser("transform", help="forward or inverse SAFT of a CSV file")
    t.add_argument("--params", help=params_help)
    t.add_argument("--in", dest="input", required=True,
                   help="input CSV (t,re,im; omega,re,im with --inverse)")
    t.add_argument("--out", required=True, help="output CSV")
    t.add_argument("--inverse", action="store_true", help="inverse transform")
    t.add_argument("--oracle", action="store_true",
                   help="use the direct quadrature path and report the fast-vs-oracle defect")
    t.add_argument("--report", help="optional JSON report")
    for ax in ("omega", "t"):
        t.add_argument(f"--{ax}-start", type=float, help=f"output {ax} grid start")
        t.add_argument(f"--{ax}-step", type=float, help=f"output {ax} grid step")
        t.add_argument(f"--{ax}-count", type=int, help=f"output {ax} grid size")
    t.set_defaults(func=cmd_transform)

    a = sub.add_parser("analyze", help="classify a generator system")
    a.add_argument("--gen", required=True, help=f"generator: {', '.join(CLI_GENERATORS)}")
    a.add_argument("--gen-samples", help="t,re,im CSV for --gen tabulated")
    a.add_argument("--params", help=params_help)
    a.add_argument("--resolution", type=int, default=1024, help="omega grid size (default 1024)")
    a.add_argument("--tol", type=float, default=1e-8, help="support threshold (default 1e-8)")
    a.add_argument("--out", help="JSON report path (default: summary only)")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reconstruct", help="reconstruct a signal from samples")
    r.add_argument("--mode", required=True, choices=("uniform", "shannon", "local"))
    r.add_argument("--params", help=params_help)
    r.add_argument("--samples", required=True, help="x,re,im CSV")
    r.add_argument("--out", required=True, help="output t,re,im CSV")
    r.add_argument("--report", help="JSON report path")
    r.add_argument("--gen", help="generator (uniform: chirped_sinc; local: bspline2c)")
    r.add_argument("--gen-samples", help="t,re,im CSV for --gen tabulated")
    r.add_argument("--truth", help="t,re,im CSV of the true signal on the output grid")
    r.add_argument("--interval", type=float, nargs=2, metavar=("A", "B"),
                   help="local mode: reconstruction interval")
    r.add_argument("--M", type=int, help="local mode: window extension")
    r.add_argument("--rank-slack", type=int, default=0, help="local mode: allowed rank deficit")
    r.add_argument("--allow-count-violation", action="store_true",
                   help="local mode: proceed when #X < 2M + B - A - 1")
    r.add_argument("--at", type=float, nargs="+", help="shannon mode: report values at these t")
    r.add_argument("--t-start", type=float)
    r.add_argument("--t-step", type=float)
    r.add_argument("--t-count", type=int)
    r.set_defaults(func=cmd_reconstruct)

    b = sub.add_parser("benchmark", help="local reconstruction benchmark table")
    b.add_argument("--rows", type=int, nargs="+", help=f"values of M (default {list(LOCAL_ROWS)})")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED, help="fixture seed")
    b.add_argument("--outdir", help="directory for errors.csv, plot CSVs and report.json")
    b.add_argument("--threshold", type=float, default=BENCHMARK_THRESHOLD,
                   help="acceptance threshold (default 1e-9)")
    b.set_defaults(func=cmd_benchmark)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        code = exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
        return EXIT_VALIDATION if code == 2 else code
    try:
        with _thread_limit():
            return args.func(args)
    except (UsageError, SaftError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    except OSError as exc:
        _err(f"{exc.strerror or exc}: {exc.filename or ''}".rstrip(": "))
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
