import cmath

import numpy as np
import pytest

from bistatic_naf import (
    ConfigError,
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
from bistatic_naf.signal import complex_gaussian

from conftest import random_scene


def brute_force_factor(array, delta_f):
    """Independent elementwise sum used as an oracle."""
    w = array.weight_vector
    total = 0j
    for n in range(array.n_elements):
        offset = n - (array.n_elements - 1) / 2
        total += w[n] * cmath.exp(-2j * cmath.pi * delta_f * offset)
    return total


def test_array_factor_peak(ula):
    assert abs(array_factor(ula, 0.0) - np.sqrt(11)) < 1e-12


def test_array_factor_first_zero(ula):
    assert abs(array_factor(ula, 1.0 / 11)) < 1e-12


def test_array_factor_half(ula):
    got = array_factor(ula, 0.5)
    assert abs(got - (-1.0 / np.sqrt(11))) < 1e-12
    assert abs(got - brute_force_factor(ula, 0.5)) < 1e-12


def test_array_factor_matches_brute_force(ula):
    rng = np.random.default_rng(5)
    weighted = UlaConfig(11, 0.5, tuple(rng.normal(size=11) + 1j * rng.normal(size=11)))
    for array in (ula, weighted):
        for delta in rng.uniform(-1.0, 1.0, size=50):
            assert abs(array_factor(array, delta) - brute_force_factor(array, delta)) < 1e-10


def test_array_factor_is_real_for_real_weights(ula):
    # centered element positions make the pattern real for real weights
    vals = array_factor(ula, np.linspace(-0.5, 0.5, 101))
    assert np.max(np.abs(vals.imag)) < 1e-12


def test_array_factor_broadcasts(ula):
    grid = np.linspace(-0.5, 0.5, 7).reshape(7, 1) + np.zeros((1, 3))
    out = array_factor(ula, grid)
    assert out.shape == (7, 3)
    assert abs(out[3, 1] - array_factor(ula, grid[3, 1])) < 1e-14


def test_response_peak_and_zero(ula):
    scene = Scene([Scatterer(0.0, 0.0, 1.0)])
    assert abs(response_at(ula, ula, scene, 0.0, 0.0) - 11.0) < 1e-12
    assert abs(response_at(ula, ula, scene, 1.0 / 11, 0.0)) < 1e-12


def test_response_destructive_superposition(ula):
    scene = Scene([
        Scatterer(0.1, -0.2, 1.0),
        Scatterer(0.1, -0.2, cmath.exp(1j * cmath.pi)),
    ])
    assert abs(response_at(ula, ula, scene, 0.1, -0.2)) < 1e-12


def test_joint_phase_sum_separates(ula):
    # dual route: full double sum over element pairs vs product of
    # single-array sums
    rng = np.random.default_rng(13)
    offsets = ula.element_offsets
    w = ula.weight_vector
    for _ in range(20):
        f_tx, f_rx = rng.uniform(-0.5, 0.5, size=2)
        joint = 0j
        for n in range(11):
            for m in range(11):
                joint += w[n] * w[m] * cmath.exp(
                    -2j * cmath.pi * (f_tx * offsets[n] + f_rx * offsets[m])
                )
        product = array_factor(ula, f_tx) * array_factor(ula, f_rx)
        assert abs(joint - product) <= 1e-10 * max(abs(joint), 1.0)


def test_map_matches_pointwise_response(ula, two_scatterer_scene):
    f_tx = np.linspace(-0.4, 0.4, 9)
    f_rx = np.linspace(-0.45, 0.45, 7)
    rmap = synthesize_map(ula, ula, two_scatterer_scene, f_tx, f_rx)
    for i in (0, 4, 8):
        for j in (0, 3, 6):
            want = response_at(ula, ula, two_scatterer_scene, f_tx[i], f_rx[j])
            assert abs(rmap.values[i, j] - want) < 1e-12


def test_single_scatterer_map_is_rank_one(ula):
    rng = np.random.default_rng(17)
    grid = np.linspace(-0.5, 0.49, 64)
    for _ in range(25):
        scene = random_scene(rng, 1, 1)
        rmap = synthesize_map(ula, ula, scene, grid, grid)
        s = np.linalg.svd(rmap.values, compute_uv=False)
        assert s[1] / s[0] < 1e-10


def test_two_scatterer_map_is_rank_two(ula, two_scatterer_scene):
    grid = np.linspace(-0.5, 0.49, 64)
    rmap = synthesize_map(ula, ula, two_scatterer_scene, grid, grid)
    s = np.linalg.svd(rmap.values, compute_uv=False)
    assert s[2] / s[0] < 1e-10
    assert s[1] / s[0] > 1e-3


def test_synthesize_empty_grid_rejected(ula, two_scatterer_scene):
    with pytest.raises(ConfigError):
        synthesize_map(ula, ula, two_scatterer_scene, np.array([]), np.array([0.0]))


def test_real_scene_gives_real_map(ula):
    scene = Scene([Scatterer(0.0, 0.0, 1.0)])
    grid = np.linspace(-0.5, 0.49, 33)
    rmap = synthesize_map(ula, ula, scene, grid, grid)
    assert np.max(np.abs(rmap.values.imag)) < 1e-12


def test_add_noise_zero_variance_is_identity(ula, two_scatterer_scene):
    grid = np.linspace(-0.45, 0.45, 11)
    rmap = synthesize_map(ula, ula, two_scatterer_scene, grid, grid)
    out = add_noise(rmap, NoiseConfig(variance=0.0, seed=9))
    assert np.array_equal(out.values, rmap.values)
    assert out.values is not rmap.values


def test_add_noise_mean_power(ula):
    grid = np.linspace(-0.45, 0.45, 11)
    zero = ResponseMap(grid, grid, np.zeros((11, 11), dtype=complex))
    powers = []
    for seed in range(40):
        noisy = add_noise(zero, NoiseConfig(variance=10.0, seed=seed))
        powers.append(np.mean(noisy.power()))
    # 4840 cells total, chi-square concentration
    assert abs(np.mean(powers) - 10.0) < 1.0


def test_add_noise_deterministic(ula, two_scatterer_scene):
    grid = np.linspace(-0.45, 0.45, 11)
    rmap = synthesize_map(ula, ula, two_scatterer_scene, grid, grid)
    a = add_noise(rmap, NoiseConfig(variance=10.0, seed=4))
    b = add_noise(rmap, NoiseConfig(variance=10.0, seed=4))
    c = add_noise(rmap, NoiseConfig(variance=10.0, seed=5))
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)


def test_complex_gaussian_quadratures():
    rng = np.random.default_rng(2)
    z = complex_gaussian(rng, (20000,), 6.0)
    assert abs(np.var(z.real) - 3.0) < 0.15
    assert abs(np.var(z.imag) - 3.0) < 0.15
    assert abs(np.mean(z)) < 0.05


def test_ula_validation():
    with pytest.raises(ConfigError):
        UlaConfig(n_elements=0)
    with pytest.raises(ConfigError):
        UlaConfig(spacing_over_lambda=0.0)
    with pytest.raises(ConfigError):
        UlaConfig(n_elements=4, weights=(1.0, 2.0))


def test_default_weights_unit_norm(ula):
    assert abs(np.linalg.norm(ula.weight_vector) - 1.0) < 1e-12


def test_response_map_validation():
    good = np.zeros((2, 3), dtype=complex)
    with pytest.raises(ConfigError):
        ResponseMap(np.array([0.3, 0.1]), np.array([0.0, 0.1, 0.2]), good)
    with pytest.raises(ConfigError):
        ResponseMap(np.array([0.0, 0.1]), np.array([0.0, 0.1, 0.2]),
                    np.zeros((3, 2), dtype=complex))
    rmap = ResponseMap(np.array([0.0, 0.1]), np.array([0.0, 0.1, 0.2]), good)
    assert rmap.shape == (2, 3)
