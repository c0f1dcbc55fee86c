"""Optimal azimuth sampling and reconstruction for bistatic two-ULA sensing.

The package covers the full pipeline: bistatic geometry and NAF
conversion, beamformed scene synthesis, DFT-based angular sampling,
loss-less Dirichlet-kernel reconstruction (plus two cubic-spline
baselines), CA-CFAR detection with matching metrics, and a seeded
Monte Carlo sweep harness with CSV/binary serialization and a CLI.
"""

__version__ = "0.1.0"

from .detection import (
    CfarConfig,
    Detection,
    IterationResult,
    Metrics,
    ca_cfar_2d,
    cfar_threshold_factor,
    compute_metrics,
    extract_peaks,
    match_detections,
)
from .errors import (
    BistaticNafError,
    ConfigError,
    DetectionError,
    GeometryError,
    InterpolationError,
    SamplingError,
)
from .experiments import (
    ScenarioConfig,
    SweepResult,
    config_from_dict,
    place_targets,
    run_sweep,
)
from .geometry import (
    BistaticGeometry,
    angle_from_naf,
    angles_from_point,
    direction_vector,
    naf_from_angle,
    naf_pair_from_point,
    point_from_angles,
    point_from_naf_pair,
)
from .interpolation import (
    METHOD_DFT,
    METHOD_NAF_SPLINE,
    METHOD_RAD_SPLINE,
    METHODS,
    dft_upsample_2d,
    dirichlet_interpolate_1d,
    dirichlet_kernel,
    fft_upsample_2d,
    output_grid,
    rad_spline_pipeline,
    spline_interpolate_2d,
)
from .sampling import (
    SamplingGrid,
    SamplingSet,
    acquire,
    build_grid,
    dft_naf_samples,
    radian_uniform_samples,
)
from .signal import (
    NoiseConfig,
    ResponseMap,
    Scatterer,
    Scene,
    UlaConfig,
    add_noise,
    array_factor,
    response_at,
    synthesize_map,
)

__all__ = [
    "__version__",
    "BistaticNafError", "ConfigError", "DetectionError", "GeometryError",
    "InterpolationError", "SamplingError",
    "BistaticGeometry", "direction_vector", "naf_from_angle", "angle_from_naf",
    "point_from_angles", "angles_from_point", "naf_pair_from_point",
    "point_from_naf_pair",
    "UlaConfig", "Scatterer", "Scene", "NoiseConfig", "ResponseMap",
    "array_factor", "response_at", "synthesize_map", "add_noise",
    "SamplingSet", "SamplingGrid", "dft_naf_samples", "radian_uniform_samples",
    "build_grid", "acquire",
    "METHOD_DFT", "METHOD_NAF_SPLINE", "METHOD_RAD_SPLINE", "METHODS",
    "dirichlet_kernel", "dirichlet_interpolate_1d", "dft_upsample_2d",
    "fft_upsample_2d", "spline_interpolate_2d", "rad_spline_pipeline",
    "output_grid",
    "CfarConfig", "Detection", "Metrics", "IterationResult",
    "cfar_threshold_factor", "ca_cfar_2d", "extract_peaks",
    "match_detections", "compute_metrics",
    "ScenarioConfig", "SweepResult", "config_from_dict", "place_targets",
    "run_sweep",
]
