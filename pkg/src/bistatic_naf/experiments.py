"""Monte Carlo sweep harness for the three detection scenarios.

Scenarios:

- LEFT_RIGHT: two targets at Cartesian ``(mu - dx, y0)`` and
  ``(mu + dx, y0)``; the sweep moves the pair center ``mu`` along x.
- NEAR_FAR: two targets at ``(-dx, y)`` and ``(dx, y)``; the sweep
  moves the pair away in y, shrinking their angular separation.
- NAF_SWEEP: two targets placed directly in the NAF plane at a random
  center and direction, separated by the swept distance.

Each iteration owns an RNG stream derived from
``SeedSequence([master_seed, sweep_index, iteration_index])`` and draws
in a fixed order (placement if random, one phase per target, then one
noise map per configured method). Results are therefore bit-identical
for a given seed no matter how many worker threads run the sweep.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .detection import (
    CfarConfig,
    IterationResult,
    cfar_ring_mean_batch,
    cfar_threshold_factor,
    compute_metrics,
    extract_peaks,
    match_detections,
    min_sq_dists,
)
from .errors import ConfigError
from .geometry import BistaticGeometry, naf_pair_from_point
from .interpolation import (
    METHOD_DFT,
    METHOD_NAF_SPLINE,
    METHOD_RAD_SPLINE,
    METHODS,
    dirichlet_matrix,
    output_grid,
    spline_matrix,
)
from .sampling import dft_naf_samples, radian_uniform_samples
from .signal import NoiseConfig, UlaConfig, complex_gaussian

SCENARIO_LEFT_RIGHT = "LEFT_RIGHT"
SCENARIO_NEAR_FAR = "NEAR_FAR"
SCENARIO_NAF_SWEEP = "NAF_SWEEP"
SCENARIOS = (SCENARIO_LEFT_RIGHT, SCENARIO_NEAR_FAR, SCENARIO_NAF_SWEEP)

_METHOD_ALIASES = {
    "dft": METHOD_DFT,
    "dirichlet_dft": METHOD_DFT,
    "dirichlet-dft": METHOD_DFT,
    "naf_spline": METHOD_NAF_SPLINE,
    "naf-spline": METHOD_NAF_SPLINE,
    "rad_spline": METHOD_RAD_SPLINE,
    "rad-spline": METHOD_RAD_SPLINE,
}

# iterations processed per vectorized block; fixed so that results do
# not depend on scheduling
_BATCH = 64


def canonical_method(name):
    key = str(name).strip().lower()
    if key not in _METHOD_ALIASES:
        raise ConfigError(f"unknown interpolation method {name!r}; choose from {METHODS}")
    return _METHOD_ALIASES[key]


def default_sweep(kind):
    if kind == SCENARIO_LEFT_RIGHT:
        return [float(v) for v in range(-20, 21)]
    if kind == SCENARIO_NEAR_FAR:
        return [float(v) for v in range(5, 46)]
    if kind == SCENARIO_NAF_SWEEP:
        return [round(0.06 + 0.005 * k, 10) for k in range(21)]
    raise ConfigError(f"unknown scenario kind {kind!r}; choose from {SCENARIOS}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Full description of one sweep experiment."""

    kind: str = SCENARIO_LEFT_RIGHT
    geometry: BistaticGeometry = field(default_factory=BistaticGeometry)
    tx: UlaConfig = field(default_factory=UlaConfig)
    rx: UlaConfig = field(default_factory=UlaConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    cfar: CfarConfig = field(default_factory=CfarConfig)
    iterations: int = 10_000
    methods: tuple = (METHOD_DFT, METHOD_NAF_SPLINE, METHOD_RAD_SPLINE)
    upsample_size: int = 220
    sweep: tuple = None
    target_x_offset: float = 3.0
    fixed_y: float = 16.0

    def __post_init__(self):
        if self.kind not in SCENARIOS:
            raise ConfigError(f"unknown scenario kind {self.kind!r}; choose from {SCENARIOS}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.upsample_size < 1:
            raise ConfigError(f"upsample_size must be >= 1, got {self.upsample_size}")
        methods = tuple(canonical_method(m) for m in self.methods)
        if not methods:
            raise ConfigError("at least one interpolation method is required")
        object.__setattr__(self, "methods", methods)
        sweep = self.sweep if self.sweep is not None else default_sweep(self.kind)
        sweep = tuple(float(v) for v in sweep)
        if not sweep:
            raise ConfigError("sweep must be non-empty")
        object.__setattr__(self, "sweep", sweep)


@dataclass(frozen=True)
class SweepResult:
    sweep_value: float
    per_method: dict


def config_from_dict(data):
    """Build a ScenarioConfig from a plain (JSON-shaped) dict."""
    if not isinstance(data, dict):
        raise ConfigError("scenario config must be a JSON object")
    data = dict(data)

    def sub(name, cls, **renames):
        raw = data.pop(name, None)
        if raw is None:
            return cls()
        if not isinstance(raw, dict):
            raise ConfigError(f"{name} must be an object")
        kwargs = {renames.get(k, k): v for k, v in raw.items()}
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad {name} config: {exc}") from None

    arrays = data.pop("arrays", None)
    if arrays is not None:
        data.setdefault("tx", arrays)
        data.setdefault("rx", arrays)
    kwargs = {
        "geometry": sub("geometry", BistaticGeometry),
        "tx": sub("tx", UlaConfig),
        "rx": sub("rx", UlaConfig),
        "noise": sub("noise", NoiseConfig),
        "cfar": sub("cfar", CfarConfig),
    }
    for key in ("kind", "iterations", "methods", "upsample_size", "sweep",
                "target_x_offset", "fixed_y"):
        if key in data:
            kwargs[key] = data.pop(key)
    if data:
        raise ConfigError(f"unknown scenario config keys: {sorted(data)}")
    try:
        return ScenarioConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad scenario config: {exc}") from None


def place_targets(cfg, sweep_value, rng=None):
    """True NAF pairs for one iteration of the given sweep value.

    LEFT_RIGHT and NEAR_FAR place a fixed Cartesian pair (no randomness);
    NAF_SWEEP draws center and direction from ``rng``.
    """
    sol_tx = cfg.tx.spacing_over_lambda
    if cfg.kind == SCENARIO_NAF_SWEEP:
        if rng is None:
            raise ConfigError("NAF_SWEEP placement needs an RNG")
        delta = float(sweep_value)
        margin = 1.0 / cfg.tx.n_elements
        lo = -0.5 + delta / 2 + margin
        hi = 0.5 - delta / 2 - margin
        if lo >= hi:
            raise ConfigError(
                f"NAF separation {delta} leaves no room for the placement margin"
            )
        center_tx = rng.uniform(lo, hi)
        center_rx = rng.uniform(lo, hi)
        psi = rng.uniform(0.0, 2.0 * math.pi)
        d_tx = 0.5 * delta * math.cos(psi)
        d_rx = 0.5 * delta * math.sin(psi)
        return [
            (center_tx + d_tx, center_rx + d_rx),
            (center_tx - d_tx, center_rx - d_rx),
        ]
    if cfg.kind == SCENARIO_LEFT_RIGHT:
        mu = float(sweep_value)
        points = [(mu - cfg.target_x_offset, cfg.fixed_y),
                  (mu + cfg.target_x_offset, cfg.fixed_y)]
    else:
        y = float(sweep_value)
        points = [(-cfg.target_x_offset, y), (cfg.target_x_offset, y)]
    return [naf_pair_from_point(cfg.geometry, p, sol_tx) for p in points]


def _axis_operator(method, array, out):
    """(sampling key, sample NAF coordinates, M x N cardinal matrix)."""
    if method == METHOD_RAD_SPLINE:
        knots = radian_uniform_samples(array).points
        mat = spline_matrix(
            knots, np.arcsin(np.clip(out / array.spacing_over_lambda, -1, 1))
        )
        return "rad", array.spacing_over_lambda * np.sin(knots), mat
    knots = dft_naf_samples(array).points
    if method == METHOD_NAF_SPLINE:
        return "naf", knots, spline_matrix(knots, out)
    return "naf", knots, dirichlet_matrix(array.n_elements, out)


def _method_operators(cfg):
    out = output_grid(cfg.upsample_size)
    ops = {}
    for method in cfg.methods:
        key, tx_samples, tx_mat = _axis_operator(method, cfg.tx, out)
        _, rx_samples, rx_mat = _axis_operator(method, cfg.rx, out)
        ops[method] = {
            "key": key,
            "tx_samples": tx_samples,
            "rx_samples": rx_samples,
            "tx_mat": tx_mat,
            "rx_mat": rx_mat,
        }
    return ops


def _array_factor_batch(array, delta):
    """array_factor over an arbitrary-shape offset array (vectorized)."""
    phase = np.exp(-2j * np.pi * delta[..., None] * array.element_offsets)
    return phase @ array.weight_vector


def _run_point(cfg, seed, sweep_index, ops):
    sweep_value = cfg.sweep[sweep_index]
    m_out = cfg.upsample_size
    grid = output_grid(m_out)
    n_tx = cfg.tx.n_elements
    n_rx = cfg.rx.n_elements
    tol_tx = 1.0 / n_tx
    tol_rx = 1.0 / n_rx
    alpha = cfar_threshold_factor(cfg.cfar.n_train, cfg.cfar.desired_pfa)
    variance = cfg.noise.variance
    random_placement = cfg.kind == SCENARIO_NAF_SWEEP
    fixed_truths = None if random_placement else place_targets(cfg, sweep_value)
    n_targets = 2

    results = {m: [] for m in cfg.methods}
    for start in range(0, cfg.iterations, _BATCH):
        nb = min(_BATCH, cfg.iterations - start)
        truths = np.empty((nb, n_targets, 2))
        amps = np.empty((nb, n_targets), dtype=complex)
        noises = {m: np.empty((nb, n_tx, n_rx), dtype=complex) for m in cfg.methods}
        for b in range(nb):
            rng = np.random.Generator(
                np.random.PCG64(np.random.SeedSequence([seed, sweep_index, start + b]))
            )
            if random_placement:
                truths[b] = place_targets(cfg, sweep_value, rng)
            else:
                truths[b] = fixed_truths
            amps[b] = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n_targets))
            for m in cfg.methods:
                if variance > 0:
                    noises[m][b] = complex_gaussian(rng, (n_tx, n_rx), variance)
                else:
                    noises[m][b] = 0.0

        base_cache = {}
        for m in cfg.methods:
            op = ops[m]
            key = op["key"]
            if key not in base_cache:
                gt = _array_factor_batch(cfg.tx, op["tx_samples"][None, None, :] - truths[:, :, 0:1])
                gr = _array_factor_batch(cfg.rx, op["rx_samples"][None, None, :] - truths[:, :, 1:2])
                base_cache[key] = np.einsum("bt,bti,btj->bij", amps, gt, gr)
            out = op["tx_mat"][None] @ (base_cache[key] + noises[m]) @ op["rx_mat"].T[None]
            power = out.real ** 2 + out.imag ** 2
            ring = cfar_ring_mean_batch(power, cfg.cfar)
            mask = power > alpha * ring
            for b in range(nb):
                dets = extract_peaks(power[b], mask[b], grid, grid)
                hits, n_fa = match_detections(dets, truths[b], tol_tx, tol_rx)
                results[m].append(
                    IterationResult(
                        n_truths=n_targets,
                        n_hits=sum(hits),
                        n_false_alarms=n_fa,
                        min_sq_dist=min_sq_dists(dets, truths[b]),
                    )
                )
    per_method = {m: compute_metrics(results[m]) for m in cfg.methods}
    return SweepResult(sweep_value=float(sweep_value), per_method=per_method)


def resolve_threads(threads=None):
    """--threads flag, else BISTATIC_NAF_THREADS, else cpu count."""
    if threads is not None:
        if threads < 1:
            raise ConfigError(f"thread count must be >= 1, got {threads}")
        return threads
    env = os.environ.get("BISTATIC_NAF_THREADS")
    if env:
        try:
            threads = int(env)
        except ValueError:
            raise ConfigError(f"BISTATIC_NAF_THREADS={env!r} is not an integer") from None
        if threads < 1:
            raise ConfigError(f"BISTATIC_NAF_THREADS must be >= 1, got {threads}")
        return threads
    return os.cpu_count() or 1


def run_sweep(cfg, seed=None, threads=None):
    """Run the full sweep and return one SweepResult per sweep value.

    ``seed`` defaults to ``cfg.noise.seed``. Sweep points are
    distributed over a thread pool; every iteration's RNG stream is
    keyed by (seed, sweep index, iteration index), so the output is
    identical for any thread count.
    """
    if seed is None:
        seed = cfg.noise.seed
    seed = int(seed)
    threads = resolve_threads(threads)
    wt = 2 * cfg.cfar.train_half_width + 1
    if cfg.upsample_size <= wt:
        raise ConfigError(
            f"CFAR window {wt} does not fit the {cfg.upsample_size}-cell map"
        )
    ops = _method_operators(cfg)
    n_points = len(cfg.sweep)
    workers = max(1, min(threads, n_points))
    if workers == 1:
        return [_run_point(cfg, seed, k, ops) for k in range(n_points)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_point, cfg, seed, k, ops) for k in range(n_points)]
        return [f.result() for f in futures]
