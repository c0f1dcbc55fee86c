"""Reconstruction of the full 2D NAF response from sampled grids.

Three methods:

- Dirichlet-kernel interpolation of the DFT-based NAF samples. The
  noiseless response is an N-term trigonometric polynomial per axis, so
  this reconstruction is exact (to rounding) at any target.
- Cubic-spline interpolation of the same NAF samples ("NAF spline").
- Cubic-spline interpolation of radian-uniform samples, evaluated at
  arcsin-mapped NAF targets ("RAD spline").

All three are separable and linear in the sample values, so each is
applied as a pair of precomputable cardinal matrices: an (M_out x N)
matrix per axis whose column k holds the response of that method to
the k-th unit sample vector.
"""

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InterpolationError
from .sampling import dft_naf_sample_points
from .signal import ResponseMap

METHOD_DFT = "dft"
METHOD_NAF_SPLINE = "naf_spline"
METHOD_RAD_SPLINE = "rad_spline"
METHODS = (METHOD_DFT, METHOD_NAF_SPLINE, METHOD_RAD_SPLINE)

# branch switch for the 0/0 limit of the kernel quotient
_SIN_EPS = 1e-12


def output_grid(m):
    """M uniform NAF points f = -0.5 + k/M, half-open on the right."""
    if m < 1:
        raise InterpolationError(f"output grid size must be >= 1, got {m}")
    return (np.arange(m) - m / 2) / m


def dirichlet_kernel(f, n):
    """Periodic Dirichlet kernel D_N(f) = sin(N pi f) / (N sin(pi f)).

    D_N(k) = 1 at integers (continuous limit), period 1, and it is the
    cardinal interpolation kernel for N-term centered trigonometric
    polynomials sampled at spacing 1/N.
    """
    f = np.asarray(f, dtype=float)
    s = np.sin(np.pi * f)
    near_pole = np.abs(s) < _SIN_EPS
    # cos-quotient limit at the poles; denominator forced safe elsewhere
    safe = np.where(near_pole, 1.0, n * s)
    out = np.where(
        near_pole,
        np.cos(n * np.pi * f) / np.cos(np.pi * f),
        np.sin(n * np.pi * f) / safe,
    )
    return out if out.ndim else out[()]


def dirichlet_matrix(n, targets):
    """(len(targets) x n) cardinal matrix of D_N centered at the DFT samples."""
    targets = np.asarray(targets, dtype=float)
    return dirichlet_kernel(targets[:, None] - dft_naf_sample_points(n)[None, :], n)


def spline_matrix(knots, targets, clamp=True):
    """(len(targets) x len(knots)) not-a-knot cubic spline cardinal matrix.

    Built by splining the identity: column k is the spline through the
    k-th unit sample vector. With ``clamp`` the targets are clipped to
    the knot hull, so out-of-hull queries return the nearest edge-knot
    polynomial value at the hull boundary.
    """
    knots = np.asarray(knots, dtype=float)
    if knots.size < 4:
        raise InterpolationError(
            f"cubic spline needs at least 4 samples per axis, got {knots.size}"
        )
    targets = np.asarray(targets, dtype=float)
    if clamp:
        targets = np.clip(targets, knots[0], knots[-1])
    return CubicSpline(knots, np.eye(knots.size), axis=0)(targets)


def dirichlet_interpolate_1d(samples, targets, n=None):
    """Interpolate N DFT-sampled values to arbitrary NAF targets.

    ``samples`` must be the values at the length-N DFT sampling
    positions. Exact (to rounding) whenever the samples come from an
    N-term centered trigonometric polynomial.
    """
    samples = np.asarray(samples)
    if samples.ndim != 1:
        raise InterpolationError("samples must be a 1D vector")
    if n is None:
        n = samples.size
    if samples.size != n:
        raise InterpolationError(
            f"expected {n} samples at the DFT positions, got {samples.size}"
        )
    return dirichlet_matrix(n, targets) @ samples


def _require_dft_grids(rmap):
    nt, nr = rmap.shape
    for grid, n, name in ((rmap.f_tx_grid, nt, "tx"), (rmap.f_rx_grid, nr, "rx")):
        if not np.allclose(grid, dft_naf_sample_points(n), rtol=0, atol=1e-12):
            raise InterpolationError(
                f"{name} grid is not the length-{n} DFT NAF sampling set"
            )


def dft_upsample_2d(rmap, out_tx_grid, out_rx_grid):
    """Exact separable Dirichlet reconstruction onto arbitrary NAF grids.

    The input must be an acquisition on the DFT NAF sets (both axes).
    Applies the TX-axis kernel then the RX-axis kernel; the order does
    not matter beyond rounding.
    """
    _require_dft_grids(rmap)
    nt, nr = rmap.shape
    kt = dirichlet_matrix(nt, out_tx_grid)
    kr = dirichlet_matrix(nr, out_rx_grid)
    return ResponseMap(out_tx_grid, out_rx_grid, kt @ rmap.values @ kr.T)


def _fft_upsample_axis(values, axis, factor):
    """Zero-pad one axis in the Fourier domain by an integer factor."""
    v = np.moveaxis(np.asarray(values, dtype=complex), axis, 0)
    n = v.shape[0]
    m_out = factor * n
    # the kernel's frequency set is mu = k - (N-1)/2 for k = 0..N-1:
    # integers when N is odd, half-integers when N is even
    k = np.arange(n)
    a = (n - 1) / 2
    bshape = (n,) + (1,) * (v.ndim - 1)
    # demodulate by a so exp(j*2pi*mu*f) becomes exp(j*2pi*k*f), then a
    # forward FFT of the rephased samples yields the coefficients c_k
    w = v * np.exp(2j * np.pi * a * k / n).reshape(bshape)
    c = np.fft.fft(w, axis=0) / n
    c *= np.exp(2j * np.pi * a * (k - a) / n).reshape(bshape)
    padded = np.zeros((m_out,) + v.shape[1:], dtype=complex)
    # output grid starts at -0.5, which shows up as an alternating sign
    padded[:n] = c * ((-1.0) ** k).reshape(bshape)
    out = m_out * np.fft.ifft(padded, axis=0)
    # remodulate: the integer-index synthesis above evaluated exp(j*2pi*k*f),
    # shift back down to mu = k - a
    g = (np.arange(m_out) - m_out / 2) / m_out
    out *= np.exp(-2j * np.pi * a * g).reshape((m_out,) + (1,) * (v.ndim - 1))
    return np.moveaxis(out, 0, axis)


def fft_upsample_2d(rmap, factor):
    """Zero-padding fast path: upsample by an integer factor per axis.

    Produces the same values as :func:`dft_upsample_2d` evaluated on
    ``output_grid(factor * N)`` per axis (agreement to rounding), using
    FFTs instead of dense kernel matrices.
    """
    _require_dft_grids(rmap)
    if factor < 1 or int(factor) != factor:
        raise InterpolationError(
            f"upsample factor must be a positive integer, got {factor}"
        )
    factor = int(factor)
    out = _fft_upsample_axis(rmap.values, 0, factor)
    out = _fft_upsample_axis(out, 1, factor)
    nt, nr = rmap.shape
    return ResponseMap(output_grid(factor * nt), output_grid(factor * nr), out)


def spline_interpolate_2d(rmap, out_tx_grid, out_rx_grid):
    """Separable not-a-knot cubic spline on the input's own NAF grids.

    Real and imaginary parts ride through the same real cardinal
    matrices, which is equivalent to splining them independently.
    Targets outside the knot hull are evaluated at the clipped hull
    boundary (the sample sets do not span the full NAF period, and the
    edge polynomials are not trustworthy beyond it).
    """
    st = spline_matrix(rmap.f_tx_grid, out_tx_grid)
    sr = spline_matrix(rmap.f_rx_grid, out_rx_grid)
    return ResponseMap(out_tx_grid, out_rx_grid, st @ rmap.values @ sr.T)


def rad_spline_pipeline(rmap, out_tx_grid, out_rx_grid, spacing_over_lambda=0.5):
    """Spline over radian-domain samples, queried at NAF targets.

    ``rmap`` must hold an acquisition whose grid fields are the radian
    sample angles. Each output NAF value f maps to arcsin(f / (d/lambda))
    and the spline is evaluated there. Targets outside the visible
    region have no angle and are rejected.
    """
    out_tx_grid = np.asarray(out_tx_grid, dtype=float)
    out_rx_grid = np.asarray(out_rx_grid, dtype=float)
    bound = spacing_over_lambda + 1e-12
    if np.any(np.abs(out_tx_grid) > bound) or np.any(np.abs(out_rx_grid) > bound):
        raise InterpolationError(
            f"NAF target outside the visible region |f| <= {spacing_over_lambda}"
        )
    ratio_tx = np.clip(out_tx_grid / spacing_over_lambda, -1.0, 1.0)
    ratio_rx = np.clip(out_rx_grid / spacing_over_lambda, -1.0, 1.0)
    st = spline_matrix(rmap.f_tx_grid, np.arcsin(ratio_tx))
    sr = spline_matrix(rmap.f_rx_grid, np.arcsin(ratio_rx))
    return ResponseMap(out_tx_grid, out_rx_grid, st @ rmap.values @ sr.T)
