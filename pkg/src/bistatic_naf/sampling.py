"""Angular sampling sets and acquisition.

Two kinds of per-array sampling sets are supported:

- the DFT-based NAF set: N points with spacing exactly 1/N, symmetric
  about zero, which makes the band-limited array response exactly
  recoverable from N samples;
- the radian-uniform baseline: N angles equally spaced over
  [-pi/2, pi/2] including both endpoints.

A scan grid is the Cartesian product of a TX set and an RX set; one
acquisition performs |U_tx| * |U_rx| dwells.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SamplingError
from .signal import ResponseMap, add_noise, synthesize_map

DOMAIN_NAF = "naf"
DOMAIN_RADIAN = "rad"

_HALF_PI = np.pi / 2


@dataclass(frozen=True)
class SamplingSet:
    """Sorted per-array sample coordinates in one domain."""

    domain: str
    points: np.ndarray

    def __post_init__(self):
        if self.domain not in (DOMAIN_NAF, DOMAIN_RADIAN):
            raise SamplingError(f"unknown sampling domain {self.domain!r}")
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise SamplingError("sampling set must be a non-empty 1D sequence")
        if np.any(np.diff(pts) <= 0):
            raise SamplingError("sampling points must be strictly increasing")
        if self.domain == DOMAIN_RADIAN and (
            pts[0] < -_HALF_PI - 1e-12 or pts[-1] > _HALF_PI + 1e-12
        ):
            raise SamplingError("radian samples must lie within [-pi/2, pi/2]")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    def naf_points(self, spacing_over_lambda=0.5):
        """Sample coordinates converted to NAF."""
        if self.domain == DOMAIN_NAF:
            return self.points.copy()
        return spacing_over_lambda * np.sin(self.points)


@dataclass(frozen=True)
class SamplingGrid:
    """Cartesian product of a TX and an RX sampling set (same domain)."""

    tx_set: SamplingSet
    rx_set: SamplingSet

    def __post_init__(self):
        if self.tx_set.domain != self.rx_set.domain:
            raise SamplingError(
                f"domain mismatch: tx={self.tx_set.domain!r} rx={self.rx_set.domain!r}"
            )

    @property
    def domain(self):
        return self.tx_set.domain

    @property
    def n_dwells(self):
        return len(self.tx_set) * len(self.rx_set)


def dft_naf_sample_points(n):
    """The length-N DFT sampling positions (k - (N-1)/2) / N.

    Spacing is exactly 1/N and the set is symmetric about 0; for even N
    this lands on half-bin offsets, avoiding the Nyquist ambiguity.
    """
    if n < 1:
        raise SamplingError(f"need at least 1 sample, got {n}")
    return (np.arange(n) - (n - 1) / 2) / n


def dft_naf_samples(array):
    """Optimal NAF-domain sampling set for ``array``."""
    return SamplingSet(DOMAIN_NAF, dft_naf_sample_points(array.n_elements))


def radian_uniform_samples(array):
    """Baseline set: N angles uniform over [-pi/2, pi/2], endpoints included."""
    n = array.n_elements
    if n < 2:
        raise SamplingError(f"radian-uniform set needs n >= 2, got {n}")
    return SamplingSet(DOMAIN_RADIAN, np.linspace(-_HALF_PI, _HALF_PI, n))


def build_grid(tx_set, rx_set):
    return SamplingGrid(tx_set, rx_set)


def acquire(grid, tx, rx, scene, noise=None):
    """Dwell at every grid pair and return the (optionally noisy) map.

    Radian-domain grids are converted per point to NAF for synthesis,
    but the returned map keeps the native (radian) coordinates in its
    grid fields. NAF-domain points must lie in the visible region of
    the array that scans them.
    """
    tx_naf = grid.tx_set.naf_points(tx.spacing_over_lambda)
    rx_naf = grid.rx_set.naf_points(rx.spacing_over_lambda)
    if grid.domain == DOMAIN_NAF:
        for pts, arr, name in ((tx_naf, tx, "tx"), (rx_naf, rx, "rx")):
            bound = arr.spacing_over_lambda + 1e-12
            if np.any(np.abs(pts) > bound):
                raise SamplingError(
                    f"{name} NAF samples exceed the visible region "
                    f"|f| <= {arr.spacing_over_lambda}"
                )
    clean = synthesize_map(tx, rx, scene, tx_naf, rx_naf)
    values = clean.values
    if noise is not None and noise.variance > 0:
        values = add_noise(clean, noise).values
    return ResponseMap(grid.tx_set.points, grid.rx_set.points, values)
