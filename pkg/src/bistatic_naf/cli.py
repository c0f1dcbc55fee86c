"""Command-line interface.

Subcommands:

- ``sample-grid``  print a sampling set, one coordinate per line
- ``simulate``     acquire a configured scene onto a sampling grid
- ``reconstruct``  upsample an acquired map with a chosen method
- ``scenario``     run a Monte Carlo sweep and write the results CSV
- ``metrics``      CFAR-detect given maps against a truth list

Exit codes: 0 success, 1 usage error, 2 domain or numerical error.
"""

import argparse
import json
import sys

from . import __version__, io
from .detection import (
    CfarConfig,
    IterationResult,
    ca_cfar_2d,
    compute_metrics,
    extract_peaks,
    match_detections,
    min_sq_dists,
)
from .errors import BistaticNafError, ConfigError
from .experiments import canonical_method, config_from_dict, run_sweep
from .geometry import BistaticGeometry, naf_pair_from_point
from .interpolation import (
    METHOD_NAF_SPLINE,
    METHOD_RAD_SPLINE,
    dft_upsample_2d,
    output_grid,
    rad_spline_pipeline,
    spline_interpolate_2d,
)
from .sampling import acquire, build_grid, dft_naf_samples, radian_uniform_samples
from .signal import NoiseConfig, Scatterer, Scene, UlaConfig


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems instead of exiting with 2."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _build_parser():
    parser = _Parser(prog="bistatic-naf", description=__doc__)
    parser.add_argument("--version", action="version",
                        version=f"bistatic-naf {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("sample-grid",
                       help="print a per-array sampling set as CSV")
    p.add_argument("--n", type=int, required=True, help="element count")
    p.add_argument("--domain", choices=["naf", "rad"], default="naf")
    p.add_argument("--spacing-over-lambda", type=float, default=0.5)

    p = sub.add_parser("simulate",
                       help="acquire a configured scene onto a sampling grid")
    p.add_argument("--config", required=True, help="scene config JSON")
    p.add_argument("--out", required=True,
                   help="output map (.csv for text, else binary)")

    p = sub.add_parser("reconstruct",
                       help="upsample an acquired map")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", required=True,
                   choices=["dft", "naf-spline", "rad-spline"])
    p.add_argument("--out-size", type=int, default=220)
    p.add_argument("--out", required=True)
    p.add_argument("--spacing-over-lambda", type=float, default=0.5)

    p = sub.add_parser("scenario",
                       help="run a Monte Carlo sweep scenario")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.add_argument("--out", required=True, help="results CSV path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("metrics",
                       help="CFAR-detect maps against a truth list")
    p.add_argument("--map", action="append", required=True, metavar="NAME=PATH",
                   help="labeled power map to score; repeatable")
    p.add_argument("--truth", required=True, help="truth CSV (f_tx,f_rx rows)")
    p.add_argument("--pfa", type=float, default=1e-3)
    p.add_argument("--guard", type=int, default=20)
    p.add_argument("--train", type=int, default=30)
    p.add_argument("--tol", type=float, default=None,
                   help="per-axis match tolerance (default 1/11)")
    p.add_argument("--out", default=None, help="results CSV (default stdout)")
    return parser


def _cmd_sample_grid(args):
    array = UlaConfig(n_elements=args.n,
                      spacing_over_lambda=args.spacing_over_lambda)
    sset = dft_naf_samples(array) if args.domain == "naf" else radian_uniform_samples(array)
    for v in sset.points:
        print(repr(float(v)))
    return 0


def _scene_from_dict(data, geometry, spacing_over_lambda):
    scatterers = []
    for entry in data.get("scatterers", []):
        amp = entry.get("amplitude", [1.0, 0.0])
        if isinstance(amp, (int, float)):
            amp = complex(amp)
        elif isinstance(amp, (list, tuple)) and len(amp) == 2:
            amp = complex(amp[0], amp[1])
        else:
            raise ConfigError(f"bad amplitude {amp!r}: use a number or [re, im]")
        if "naf" in entry:
            f_tx, f_rx = entry["naf"]
        elif "xy" in entry:
            f_tx, f_rx = naf_pair_from_point(geometry, entry["xy"], spacing_over_lambda)
        else:
            raise ConfigError("each scatterer needs a 'naf' or 'xy' position")
        scatterers.append(Scatterer(float(f_tx), float(f_rx), amp))
    if not scatterers:
        raise ConfigError("scene config has no scatterers")
    return Scene(scatterers)


def _cmd_simulate(args):
    with open(args.config, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("scene config must be a JSON object")
    geometry = BistaticGeometry(**data.get("geometry", {}))
    arrays = data.get("arrays", {})
    tx = UlaConfig(**data.get("tx", arrays))
    rx = UlaConfig(**data.get("rx", arrays))
    domain = data.get("domain", "naf")
    scene = _scene_from_dict(data.get("scene", {}), geometry, tx.spacing_over_lambda)
    noise = NoiseConfig(**data.get("noise", {"variance": 0.0}))
    if domain == "rad":
        grid = build_grid(radian_uniform_samples(tx), radian_uniform_samples(rx))
    elif domain == "naf":
        grid = build_grid(dft_naf_samples(tx), dft_naf_samples(rx))
    else:
        raise ConfigError(f"unknown sampling domain {domain!r}")
    rmap = acquire(grid, tx, rx, scene, noise)
    io.write_map(rmap, args.out)
    return 0


def _cmd_reconstruct(args):
    rmap = io.read_map(args.infile)
    grid = output_grid(args.out_size)
    method = canonical_method(args.method)
    if method == METHOD_RAD_SPLINE:
        out = rad_spline_pipeline(rmap, grid, grid, args.spacing_over_lambda)
    elif method == METHOD_NAF_SPLINE:
        out = spline_interpolate_2d(rmap, grid, grid)
    else:
        out = dft_upsample_2d(rmap, grid, grid)
    io.write_map(out, args.out)
    return 0


def _cmd_scenario(args):
    with open(args.config, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if args.iters is not None:
        if not isinstance(data, dict):
            raise ConfigError("scenario config must be a JSON object")
        data["iterations"] = args.iters
    cfg = config_from_dict(data)
    results = run_sweep(cfg, seed=args.seed, threads=args.threads)
    io.write_results_csv(results, args.out)
    return 0


def _cmd_metrics(args):
    truths = io.read_truths_csv(args.truth)
    cfar = CfarConfig(desired_pfa=args.pfa, guard_half_width=args.guard,
                      train_half_width=args.train)
    tol = args.tol if args.tol is not None else 1.0 / 11
    lines = [io._MAGIC_COMMENT,
             "method,p_md,r_fa,rmse_naf,n_iter,n_rmse_excluded"]
    for entry in args.map:
        if "=" in entry:
            name, path = entry.split("=", 1)
        else:
            name, path = entry, entry
        rmap = io.read_map(path)
        power = rmap.power()
        mask = ca_cfar_2d(power, cfar)
        dets = extract_peaks(power, mask, rmap.f_tx_grid, rmap.f_rx_grid)
        hits, n_fa = match_detections(dets, truths, tol, tol)
        met = compute_metrics([
            IterationResult(
                n_truths=len(truths),
                n_hits=sum(hits),
                n_false_alarms=n_fa,
                min_sq_dist=min_sq_dists(dets, truths),
            )
        ])
        lines.append(f"{name},{met.p_md!r},{met.r_fa!r},{met.rmse_naf!r},"
                     f"{met.n_iterations},{met.n_rmse_excluded}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "sample-grid": _cmd_sample_grid,
    "simulate": _cmd_simulate,
    "reconstruct": _cmd_reconstruct,
    "scenario": _cmd_scenario,
    "metrics": _cmd_metrics,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("bistatic-naf: a subcommand is required")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except BistaticNafError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
