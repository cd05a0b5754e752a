"""Command-line front end.

Three subcommands: ``solve`` fits a single problem from a signal CSV and a
weight file, ``denoise`` runs the patch-wise image pipeline on a PGM, and
``bench`` measures per-iteration kernel cost. Every run writes its primary
output plus a diagnostics JSON into --out.

Exit codes: 0 on success (including a solve that hit max_iter without
converging; that is recorded in the diagnostics, not an error), 2 when an
input fails to parse or dimensions disagree (the message names the file and
line), 1 when reading or writing files fails.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from . import backend, fileio, pgm
from .bench import run_bench
from .errors import DimensionMismatchError, ParseError, WflsaError
from .imaging import PatchSpec, denoise, gray_image, median_filter, psnr, radial_noise
from .oracle import ORACLE_MAX_P, oracle_objective, oracle_solve
from .solver import SolverConfig, lambda1_knots, solve


@dataclass(frozen=True)
class RunManifest:
    """Everything that determines a run: subcommand, files, and parameters.

    Two runs with equal manifests produce byte-identical outputs, apart from
    measured timings in bench results.
    """

    command: str
    inputs: tuple
    out_dir: str
    lambda1: float = 0.0
    lambda2: float = 0.0
    rho: float = 1.0
    eps: float = 1e-8
    max_iter: int = 100000
    q_override: Optional[float] = None
    patch_h: int = 5
    patch_w: int = 4
    stride: int = 1
    seed: int = 0


def _prepare_out_dir(path):
    os.makedirs(path, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise OSError(f"output directory {path!r} is not writable")


def _write_json(path, payload):
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _json_float(x):
    """JSON has no infinity; spell it out as a string."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def _parse_hxw(text, flag):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{flag} expects HxW, e.g. 5x4, got {text!r}")
    try:
        h, w = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"{flag} expects integers HxW, got {text!r}") from None
    if h < 1 or w < 1:
        raise argparse.ArgumentTypeError(f"{flag} dimensions must be positive, got {text!r}")
    return h, w


def cmd_solve(args) -> int:
    manifest = RunManifest(
        command="solve",
        inputs=(args.y, args.weights),
        out_dir=args.out,
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        rho=args.rho,
        eps=args.eps,
        max_iter=args.max_iter,
        q_override=args.q,
    )
    # ingest and validate everything before computing
    y = fileio.read_vector_csv(args.y)
    w = fileio.read_weights_auto(args.weights, p=len(y))
    if w.p != len(y):
        raise DimensionMismatchError(
            f"{args.y} has {len(y)} entries but {args.weights} describes "
            f"{w.p} vertices"
        )
    try:
        cfg = SolverConfig(
            lambda1=args.lambda1, lambda2=args.lambda2, rho=args.rho,
            eps=args.eps, max_iter=args.max_iter, q_override=args.q,
        )
    except ValueError as exc:
        raise ParseError("<arguments>", 0, str(exc)) from None
    _prepare_out_dir(args.out)

    sol = solve(y, w, cfg)
    fileio.write_vector_csv(os.path.join(args.out, "beta.csv"), sol.beta)
    diagnostics = {
        "manifest": _manifest_dict(manifest),
        "backend": backend.BACKEND,
        "iterations": sol.iterations,
        "converged": sol.converged,
        "final_delta": sol.final_delta,
        "q_used": sol.q_used,
        "objective": sol.objective,
        "lambda1_knots": [float(k) for k in lambda1_knots(sol)],
    }

    if args.oracle_check:
        if w.p > ORACLE_MAX_P:
            raise ParseError(
                "<arguments>", 0,
                f"--oracle-check needs p <= {ORACLE_MAX_P}, got p={w.p}",
            )
        ref = oracle_solve(y, w, cfg.lambda1, cfg.lambda2, tol=1e-6)
        gap = sol.objective - oracle_objective(y, ref, w, cfg.lambda1, cfg.lambda2)
        diagnostics["oracle_gap"] = gap
        print(f"oracle-check: objective gap {gap:+.3e} ({'ok' if abs(gap) < 1e-4 else 'MISMATCH'})")

    _write_json(os.path.join(args.out, "diagnostics.json"), diagnostics)
    if not sol.converged:
        print(
            f"warning: stopped at max_iter={cfg.max_iter} with delta "
            f"{sol.final_delta:.3e} > eps {cfg.eps:.3e}",
            file=sys.stderr,
        )
    return 0


def _manifest_dict(manifest: RunManifest):
    d = asdict(manifest)
    d["inputs"] = list(manifest.inputs)
    return d


def cmd_denoise(args) -> int:
    if (args.noise_map is None) == (args.radial_sigma is None):
        raise ParseError(
            "<arguments>", 0,
            "exactly one of --noise-map and --radial-sigma is required",
        )
    patch_h, patch_w = args.patch
    manifest = RunManifest(
        command="denoise",
        inputs=tuple(p for p in (args.image, args.noise_map, args.psnr_against) if p),
        out_dir=args.out,
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        patch_h=patch_h,
        patch_w=patch_w,
        stride=args.stride,
        seed=args.seed,
    )
    img = pgm.read_pgm(args.image)
    clean = pgm.read_pgm(args.psnr_against) if args.psnr_against else None
    if args.noise_map is not None:
        noisy = img
        intensity = pgm.read_pgm(args.noise_map)
    else:
        noisy, intensity = radial_noise(img, args.radial_sigma, args.seed)
    patch = PatchSpec(patch_h=patch_h, patch_w=patch_w, stride=args.stride)
    _prepare_out_dir(args.out)

    smoothed = denoise(noisy, intensity, patch, args.lambda1, args.lambda2)
    if args.noise_map is None:
        pgm.write_pgm(os.path.join(args.out, "noisy.pgm"), noisy)
    pgm.write_pgm(os.path.join(args.out, "denoised.pgm"), smoothed)

    median_img = None
    if args.baseline == "median":
        win_h, win_w = args.window
        median_img = median_filter(noisy, win_h, win_w)
        pgm.write_pgm(os.path.join(args.out, "median.pgm"), median_img)

    diagnostics = {
        "manifest": _manifest_dict(manifest),
        "backend": backend.BACKEND,
        "lambda1": args.lambda1,
        "lambda2": args.lambda2,
        "patch": f"{patch_h}x{patch_w}",
        "stride": args.stride,
    }
    if args.radial_sigma is not None:
        diagnostics["radial_sigma"] = args.radial_sigma
        diagnostics["seed"] = args.seed
    if clean is not None:
        rows = {
            "noisy": _json_float(psnr(clean, noisy)),
            "wflsa": _json_float(psnr(clean, smoothed)),
        }
        if median_img is not None:
            rows["median"] = _json_float(psnr(clean, median_img))
        diagnostics["psnr"] = rows
    _write_json(os.path.join(args.out, "diagnostics.json"), diagnostics)
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        raise ParseError("<arguments>", 0, f"--sizes expects comma-separated integers, got {args.sizes!r}") from None
    if not sizes or any(p < 2 for p in sizes):
        raise ParseError("<arguments>", 0, f"--sizes needs integers >= 2, got {args.sizes!r}")
    _prepare_out_dir(args.out)

    result = run_bench(sizes, iters=args.iters, seed=0)
    active_rows = result.structured[backend.BACKEND]

    with open(os.path.join(args.out, "bench.csv"), "w", encoding="ascii") as fh:
        fh.write("p,mean_iter_time\n")
        for row in active_rows:
            fh.write(f"{row.p},{repr(row.mean_iter_time)}\n")

    payload = {
        "backend": backend.BACKEND,
        "iters": result.iters,
        "seed": result.seed,
        "structured": {
            name: [{"p": r.p, "mean_iter_time": r.mean_iter_time} for r in rows]
            for name, rows in result.structured.items()
        },
        "naive": [{"p": r.p, "mean_iter_time": r.mean_iter_time} for r in result.naive],
        "slopes": result.slopes,
    }
    _write_json(os.path.join(args.out, "bench.json"), payload)

    for name, slope in sorted(result.slopes.items()):
        if slope is not None:
            print(f"slope[{name}] = {slope:.3f}")
    return 0


def _parser():
    parser = argparse.ArgumentParser(
        prog="wflsa",
        description="Weighted fused lasso signal approximation over graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="fit one problem from a signal CSV and a weight file")
    ps.add_argument("--y", required=True, help="signal CSV, one real per line")
    ps.add_argument("--weights", required=True,
                    help="dense CSV (p rows of p reals) or edge-list TSV (i<TAB>j<TAB>w, 1-based)")
    ps.add_argument("--lambda1", type=float, required=True)
    ps.add_argument("--lambda2", type=float, required=True)
    ps.add_argument("--rho", type=float, default=1.0)
    ps.add_argument("--eps", type=float, default=1e-8)
    ps.add_argument("--max-iter", type=int, default=100000)
    ps.add_argument("--q", type=float, default=None,
                    help="override the automatic step-normalization constant")
    ps.add_argument("--out", required=True, help="output directory")
    ps.add_argument("--oracle-check", action="store_true", help=argparse.SUPPRESS)
    ps.set_defaults(func=cmd_solve)

    pd = sub.add_parser("denoise", help="patch-wise smoothing of a PGM image")
    pd.add_argument("--image", required=True, help="input PGM (P2 or P5)")
    pd.add_argument("--noise-map", default=None,
                    help="noise intensity map as PGM, rescaled to [0,1]")
    pd.add_argument("--radial-sigma", type=float, default=None,
                    help="generate radial noise with this peak sigma instead of reading a map")
    pd.add_argument("--seed", type=int, default=0, help="noise seed for --radial-sigma")
    pd.add_argument("--lambda1", type=float, default=0.001)
    pd.add_argument("--lambda2", type=float, default=0.04)
    pd.add_argument("--patch", type=lambda s: _parse_hxw(s, "--patch"), default=(5, 4),
                    metavar="HxW", help="patch size, default 5x4")
    pd.add_argument("--stride", type=int, default=1)
    pd.add_argument("--baseline", choices=["median"], default=None,
                    help="also write a median-filtered image")
    pd.add_argument("--window", type=lambda s: _parse_hxw(s, "--window"), default=(5, 5),
                    metavar="HxW", help="median window, default 5x5")
    pd.add_argument("--psnr-against", default=None,
                    help="clean reference PGM; records PSNR rows in the diagnostics")
    pd.add_argument("--out", required=True, help="output directory")
    pd.set_defaults(func=cmd_denoise)

    pb = sub.add_parser("bench", help="per-iteration kernel timing")
    pb.add_argument("--sizes", required=True, help="comma-separated problem sizes")
    pb.add_argument("--iters", type=int, default=50)
    pb.add_argument("--out", required=True, help="output directory")
    pb.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except WflsaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
