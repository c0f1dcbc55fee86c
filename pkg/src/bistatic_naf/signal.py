"""Complex bistatic beamformed response synthesis.

A scene is a set of ideal point scatterers, each with a complex
reflection coefficient and a true direction expressed as a NAF pair
(f_tx, f_rx). The beamformed response at a scan pair factorizes into a
product of the two per-array factors, so a whole map is a sum of
rank-1 outer products (one per scatterer). Optional measurement noise
is circularly-symmetric complex Gaussian, added per acquired sample.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class UlaConfig:
    """One uniform linear array.

    Element n of ``n_elements`` sits at ``(n - (N-1)/2) * d`` on the
    array axis, so patterns with real weights are real-valued in NAF.
    Default weights are uniform with unit vector norm (1/sqrt(N) each).
    """

    n_elements: int = 11
    spacing_over_lambda: float = 0.5
    weights: tuple = None

    def __post_init__(self):
        if self.n_elements < 1:
            raise ConfigError(f"n_elements must be >= 1, got {self.n_elements}")
        if self.spacing_over_lambda <= 0:
            raise ConfigError(
                f"spacing_over_lambda must be > 0, got {self.spacing_over_lambda}"
            )
        if self.weights is not None:
            w = tuple(complex(v) for v in self.weights)
            if len(w) != self.n_elements:
                raise ConfigError(
                    f"got {len(w)} weights for {self.n_elements} elements"
                )
            object.__setattr__(self, "weights", w)

    @property
    def element_offsets(self):
        """Centered element indices n - (N-1)/2."""
        n = self.n_elements
        return np.arange(n) - (n - 1) / 2

    @property
    def weight_vector(self):
        if self.weights is None:
            return np.full(self.n_elements, 1.0 / np.sqrt(self.n_elements),
                           dtype=complex)
        return np.asarray(self.weights, dtype=complex)


@dataclass(frozen=True)
class Scatterer:
    """Ideal point scatterer: true NAF pair plus complex reflection."""

    f_tx: float
    f_rx: float
    amplitude: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class Scene:
    scatterers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "scatterers", tuple(self.scatterers))

    def naf_array(self):
        """(S, 2) array of true NAF pairs."""
        return np.array([[s.f_tx, s.f_rx] for s in self.scatterers],
                        dtype=float).reshape(-1, 2)

    def amplitude_array(self):
        return np.array([s.amplitude for s in self.scatterers], dtype=complex)


@dataclass(frozen=True)
class NoiseConfig:
    """Additive complex Gaussian noise: per-sample power ``variance``."""

    variance: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.variance < 0:
            raise ConfigError(f"variance must be >= 0, got {self.variance}")


@dataclass
class ResponseMap:
    """Complex map over a (TX NAF, RX NAF) grid, indexed [tx][rx]."""

    f_tx_grid: np.ndarray
    f_rx_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.f_tx_grid = np.asarray(self.f_tx_grid, dtype=float)
        self.f_rx_grid = np.asarray(self.f_rx_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.f_tx_grid.ndim != 1 or self.f_rx_grid.ndim != 1:
            raise ConfigError("grids must be one-dimensional")
        if self.f_tx_grid.size == 0 or self.f_rx_grid.size == 0:
            raise ConfigError("grids must be non-empty")
        if np.any(np.diff(self.f_tx_grid) <= 0) or np.any(np.diff(self.f_rx_grid) <= 0):
            raise ConfigError("grids must be strictly increasing")
        if self.values.shape != (self.f_tx_grid.size, self.f_rx_grid.size):
            raise ConfigError(
                f"values shape {self.values.shape} does not match grid sizes "
                f"({self.f_tx_grid.size}, {self.f_rx_grid.size})"
            )

    @property
    def shape(self):
        return self.values.shape

    def power(self):
        """Per-cell power |value|^2 as a real array."""
        return self.values.real ** 2 + self.values.imag ** 2


def array_factor(array, delta_f):
    """Weighted array factor at NAF offset(s) ``delta_f``.

    Computes sum_n w_n * exp(-j 2 pi delta_f (n - (N-1)/2)). For uniform
    unit-norm weights this is sqrt(N) times the Dirichlet kernel D_N;
    the centering makes it real for real weights. ``delta_f`` may be a
    scalar or any-dimensional array; scatterer axes broadcast normally.
    """
    delta_f = np.asarray(delta_f, dtype=float)
    phase = np.exp(-1j * TWO_PI * delta_f[..., None] * array.element_offsets)
    out = phase @ array.weight_vector
    return out if out.ndim else out[()]


def response_at(tx, rx, scene, f_tx, f_rx):
    """Beamformed scene response at a single NAF scan pair."""
    naf = scene.naf_array()
    amps = scene.amplitude_array()
    if naf.shape[0] == 0:
        return 0j
    gt = array_factor(tx, f_tx - naf[:, 0])
    gr = array_factor(rx, f_rx - naf[:, 1])
    return complex(np.sum(amps * gt * gr))


def synthesize_map(tx, rx, scene, f_tx_grid, f_rx_grid):
    """Noiseless scene response over the full grid Cartesian product.

    Exploits the factorization: each scatterer contributes the outer
    product of its TX and RX array-factor vectors, so the result is a
    rank-<=S matrix accumulated scatterer by scatterer.
    """
    f_tx_grid = np.asarray(f_tx_grid, dtype=float)
    f_rx_grid = np.asarray(f_rx_grid, dtype=float)
    if f_tx_grid.size == 0 or f_rx_grid.size == 0:
        raise ConfigError("synthesis grids must be non-empty")
    naf = scene.naf_array()
    amps = scene.amplitude_array()
    values = np.zeros((f_tx_grid.size, f_rx_grid.size), dtype=complex)
    for k in range(naf.shape[0]):
        gt = array_factor(tx, f_tx_grid - naf[k, 0])
        gr = array_factor(rx, f_rx_grid - naf[k, 1])
        values += amps[k] * np.outer(gt, gr)
    return ResponseMap(f_tx_grid, f_rx_grid, values)


def complex_gaussian(rng, shape, variance):
    """Circularly-symmetric complex Gaussian samples of given total power.

    Draws a trailing re/im pair per sample so consumers agree on a
    single draw order: ``standard_normal(shape + (2,))`` scaled to put
    ``variance / 2`` in each quadrature.
    """
    z = rng.standard_normal(tuple(shape) + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * np.sqrt(variance / 2.0)


def add_noise(rmap, cfg):
    """Return a copy of ``rmap`` with i.i.d. complex Gaussian noise added.

    Deterministic for a fixed ``cfg.seed``. Zero variance returns an
    identical copy without consuming random numbers.
    """
    if cfg.variance == 0:
        return ResponseMap(rmap.f_tx_grid, rmap.f_rx_grid, rmap.values.copy())
    rng = np.random.default_rng(cfg.seed)
    noise = complex_gaussian(rng, rmap.values.shape, cfg.variance)
    return ResponseMap(rmap.f_tx_grid, rmap.f_rx_grid, rmap.values + noise)
