"""Exception hierarchy for the bistatic_naf package.

Everything raised intentionally by this library derives from
:class:`BistaticNafError`, so callers (and the CLI) can distinguish
domain failures from programming bugs with a single except clause.
"""


class BistaticNafError(Exception):
    """Base class for all errors raised by this package."""


class GeometryError(BistaticNafError):
    """Invalid angle, non-physical NAF value, or degenerate ray geometry."""


class SamplingError(BistaticNafError):
    """Invalid sampling set or mismatched sampling domains."""


class InterpolationError(BistaticNafError):
    """Reconstruction input does not satisfy the method's requirements."""


class DetectionError(BistaticNafError):
    """CFAR window or metrics aggregation misuse."""


class ConfigError(BistaticNafError):
    """Malformed or inconsistent configuration input."""
