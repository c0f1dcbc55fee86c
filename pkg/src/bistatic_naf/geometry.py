"""Angles, direction vectors, NAF conversion, and bistatic triangulation.

Conventions used throughout the package:

- Each array measures azimuth from its own boresight (the +y axis),
  positive clockwise, so a direction vector is ``(sin(theta), cos(theta))``.
- The TX array sits at ``(-c, 0)`` and the RX array at ``(c, b)``.
- The RX array may be rotated by ``rx_boresight_rotation``; user-facing RX
  angles stay boresight-relative and the rotation is applied only inside
  the Cartesian transforms.
- NAF (normalized angular frequency) is ``(d / lambda) * sin(theta)``,
  the coordinate in which an N-element ULA response is band-limited.
"""

import math
from dataclasses import dataclass

from .errors import GeometryError

HALF_PI = math.pi / 2
# slack for values like asin results landing a few ulp outside +-pi/2
_ANGLE_EPS = 1e-12


@dataclass(frozen=True)
class BistaticGeometry:
    """TX/RX placement and RX boresight rotation.

    Attributes
    ----------
    half_baseline_c : float
        Half the TX-RX baseline in meters; TX at (-c, 0), RX at (c, b).
    rx_offset_b : float
        RX y-offset in meters.
    rx_boresight_rotation : float
        Rotation of the RX boresight in radians, positive clockwise.
    """

    half_baseline_c: float = 6.0
    rx_offset_b: float = 0.0
    rx_boresight_rotation: float = 0.0

    def __post_init__(self):
        if not (self.half_baseline_c > 0):
            raise GeometryError(
                f"half_baseline_c must be > 0, got {self.half_baseline_c}"
            )

    @property
    def tx_position(self):
        return (-self.half_baseline_c, 0.0)

    @property
    def rx_position(self):
        return (self.half_baseline_c, self.rx_offset_b)


def direction_vector(theta):
    """Unit vector pointing at azimuth ``theta`` from boresight.

    theta is measured from +y, positive clockwise, so the result is
    (sin(theta), cos(theta)).
    """
    if not math.isfinite(theta):
        raise GeometryError(f"angle must be finite, got {theta}")
    return (math.sin(theta), math.cos(theta))


def naf_from_angle(theta, spacing_over_lambda=0.5):
    """Convert an azimuth angle to normalized angular frequency.

    Returns ``spacing_over_lambda * sin(theta)``. Angles beyond +-pi/2
    have no front-half-plane interpretation and are rejected.
    """
    if abs(theta) > HALF_PI + _ANGLE_EPS:
        raise GeometryError(
            f"angle {theta} rad outside the front half-plane [-pi/2, pi/2]"
        )
    return spacing_over_lambda * math.sin(theta)


def angle_from_naf(f, spacing_over_lambda=0.5):
    """Inverse of :func:`naf_from_angle`.

    Raises GeometryError for ``|f| > d/lambda``: such frequencies lie
    outside the visible region and have no physical arrival direction.
    """
    ratio = f / spacing_over_lambda
    if abs(ratio) > 1.0 + _ANGLE_EPS:
        raise GeometryError(
            f"NAF value {f} exceeds the visible region |f| <= {spacing_over_lambda}"
        )
    return math.asin(max(-1.0, min(1.0, ratio)))


def point_from_angles(geom, theta_tx, theta_rx):
    """Intersect the TX and RX view rays and return the Cartesian point.

    The TX ray starts at (-c, 0) along ``direction_vector(theta_tx)``;
    the RX ray starts at (c, b) along the RX direction after adding the
    boresight rotation. Both ray parameters must be positive: the point
    has to lie in front of both arrays.
    """
    ut = direction_vector(theta_tx)
    ur = direction_vector(theta_rx + geom.rx_boresight_rotation)
    ax, ay = geom.tx_position
    bx, by = geom.rx_position
    dx = bx - ax
    dy = by - ay
    det = ur[0] * ut[1] - ut[0] * ur[1]
    if abs(det) < 1e-14:
        raise GeometryError(
            "view rays are parallel; the angle pair does not localize a point"
        )
    t = (ur[0] * dy - ur[1] * dx) / det
    s = (ut[0] * dy - ut[1] * dx) / det
    if t <= 0 or s <= 0:
        raise GeometryError(
            "view rays intersect behind an array (no forward intersection)"
        )
    return (ax + t * ut[0], ay + t * ut[1])


def angles_from_point(geom, point):
    """Azimuth pair (theta_tx, theta_rx) under which both arrays see ``point``.

    The returned RX angle is boresight-relative, i.e. the configured
    rotation is subtracted. Points must lie strictly in the forward
    half-plane of both arrays (y > 0 for TX and y > b for RX).
    """
    x, y = point
    if y <= 0 or y <= geom.rx_offset_b:
        raise GeometryError(
            f"point {point} is not in the forward half-plane of both arrays"
        )
    theta_tx = math.atan2(x + geom.half_baseline_c, y)
    theta_rx_rot = math.atan2(x - geom.half_baseline_c, y - geom.rx_offset_b)
    return (theta_tx, theta_rx_rot - geom.rx_boresight_rotation)


def naf_pair_from_point(geom, point, spacing_over_lambda=0.5):
    """Convenience: Cartesian point -> (f_tx, f_rx) NAF pair."""
    theta_tx, theta_rx = angles_from_point(geom, point)
    return (
        naf_from_angle(theta_tx, spacing_over_lambda),
        naf_from_angle(theta_rx, spacing_over_lambda),
    )


def point_from_naf_pair(geom, f_tx, f_rx, spacing_over_lambda=0.5):
    """Convenience: (f_tx, f_rx) NAF pair -> Cartesian point."""
    return point_from_angles(
        geom,
        angle_from_naf(f_tx, spacing_over_lambda),
        angle_from_naf(f_rx, spacing_over_lambda),
    )
