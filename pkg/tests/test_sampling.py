import math

import numpy as np
import pytest

from bistatic_naf import (
    NoiseConfig,
    SamplingError,
    SamplingSet,
    Scatterer,
    Scene,
    UlaConfig,
    acquire,
    build_grid,
    dft_naf_samples,
    radian_uniform_samples,
    synthesize_map,
)
from bistatic_naf.sampling import dft_naf_sample_points


def test_dft_points_odd():
    pts = dft_naf_sample_points(11)
    assert pts.size == 11
    assert np.allclose(pts, (np.arange(11) - 5) / 11)
    assert abs(pts[0] + 5.0 / 11) < 1e-15
    assert abs(pts[-1] - 0.4545454545454545) < 1e-12
    assert np.allclose(np.diff(pts), 1.0 / 11)


def test_dft_points_even_and_single():
    assert np.array_equal(dft_naf_sample_points(1), np.array([0.0]))
    assert np.allclose(dft_naf_sample_points(4), [-0.375, -0.125, 0.125, 0.375])


def test_dft_points_centered():
    for n in (1, 2, 5, 10, 11):
        assert abs(np.sum(dft_naf_sample_points(n))) < 1e-12


def test_radian_samples():
    s = radian_uniform_samples(UlaConfig(n_elements=11))
    assert s.domain == "rad"
    assert np.allclose(np.diff(s.points), math.pi / 10)
    assert s.points[0] == -math.pi / 2 and s.points[-1] == math.pi / 2
    s3 = radian_uniform_samples(UlaConfig(n_elements=3))
    assert np.allclose(s3.points, [-math.pi / 2, 0.0, math.pi / 2])


def test_radian_samples_need_two_elements():
    with pytest.raises(SamplingError):
        radian_uniform_samples(UlaConfig(n_elements=1))


def test_sampling_set_validation():
    with pytest.raises(SamplingError):
        SamplingSet("furlongs", np.array([0.0]))
    with pytest.raises(SamplingError):
        SamplingSet("naf", np.array([0.2, 0.1]))  # not increasing


def test_build_grid_mixed_domains_rejected():
    ula = UlaConfig()
    with pytest.raises(SamplingError):
        build_grid(dft_naf_samples(ula), radian_uniform_samples(ula))


def test_grid_dwell_count():
    ula = UlaConfig()
    grid = build_grid(dft_naf_samples(ula), dft_naf_samples(ula))
    assert grid.n_dwells == 121


def test_noiseless_acquire_equals_synthesis(ula, two_scatterer_scene):
    grid = build_grid(dft_naf_samples(ula), dft_naf_samples(ula))
    got = acquire(grid, ula, ula, two_scatterer_scene)
    want = synthesize_map(ula, ula, two_scatterer_scene,
                          dft_naf_sample_points(11), dft_naf_sample_points(11))
    assert np.array_equal(got.values, want.values)


def test_acquire_radian_grid_maps_through_sine(ula, two_scatterer_scene):
    grid = build_grid(radian_uniform_samples(ula), radian_uniform_samples(ula))
    got = acquire(grid, ula, ula, two_scatterer_scene)
    theta = grid.tx_set.points
    naf = 0.5 * np.sin(theta)
    want = synthesize_map(ula, ula, two_scatterer_scene, naf, naf)
    assert np.allclose(got.values, want.values, atol=1e-12)
    # the map carries the native radian coordinates
    assert np.array_equal(got.f_tx_grid, theta)


def test_acquire_with_noise_differs_and_is_seeded(ula, two_scatterer_scene):
    grid = build_grid(dft_naf_samples(ula), dft_naf_samples(ula))
    clean = acquire(grid, ula, ula, two_scatterer_scene)
    a = acquire(grid, ula, ula, two_scatterer_scene, NoiseConfig(variance=5.0, seed=1))
    b = acquire(grid, ula, ula, two_scatterer_scene, NoiseConfig(variance=5.0, seed=1))
    assert not np.array_equal(a.values, clean.values)
    assert np.array_equal(a.values, b.values)


def test_acquire_rejects_samples_outside_visible_region(ula):
    wide = SamplingSet("naf", np.array([-0.7, 0.0, 0.7]))  # beyond d/lambda
    grid = build_grid(wide, dft_naf_samples(ula))
    scene = Scene([Scatterer(0.1, 0.0, 1.0)])
    with pytest.raises(SamplingError):
        acquire(grid, ula, ula, scene)
