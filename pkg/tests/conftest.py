import numpy as np
import pytest

from bistatic_naf import BistaticGeometry, Scatterer, Scene, UlaConfig


@pytest.fixture
def geom():
    return BistaticGeometry(half_baseline_c=6.0, rx_offset_b=0.0)


@pytest.fixture
def ula():
    return UlaConfig(n_elements=11, spacing_over_lambda=0.5)


@pytest.fixture
def two_scatterer_scene():
    """The fixed two-target reference scene used across modules."""
    return Scene([
        Scatterer(-0.05, -0.35, 1.0 + 0.0j),
        Scatterer(0.2, -0.1, 1.0 + 0.0j),
    ])


def random_scene(rng, n_min=1, n_max=5):
    """Random scene with complex amplitudes inside the visible region."""
    n = int(rng.integers(n_min, n_max + 1))
    scatterers = []
    for _ in range(n):
        f_tx, f_rx = rng.uniform(-0.45, 0.45, size=2)
        amp = rng.normal() + 1j * rng.normal()
        scatterers.append(Scatterer(float(f_tx), float(f_rx), complex(amp)))
    return Scene(scatterers)


def random_weights(rng, n):
    w = rng.normal(size=n) + 1j * rng.normal(size=n)
    return tuple(w / np.linalg.norm(w))
