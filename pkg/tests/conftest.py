import numpy as np
import pytest

from floerlab.loopspace import Loop, time_grid


def band_loop(rng, half_dim, num_samples, band, amplitude=1.0, decay=0.5, offset=0.0):
    """Random band-limited loop with geometrically decaying mode amplitudes."""
    t = time_grid(num_samples)
    samples = np.full((num_samples, 2 * half_dim), float(offset))
    for c in range(2 * half_dim):
        samples[:, c] += 0.3 * amplitude * rng.standard_normal()
        for k in range(1, band + 1):
            scale = amplitude * decay**k
            samples[:, c] += scale * (
                rng.standard_normal() * np.cos(2 * np.pi * k * t)
                + rng.standard_normal() * np.sin(2 * np.pi * k * t)
            )
    return Loop(samples)


def circle_loop(num_samples, mode=1, radius=1.0, center=(0.0, 0.0)):
    t = time_grid(num_samples)
    return Loop(
        np.column_stack(
            [
                center[0] + radius * np.cos(2 * np.pi * mode * t),
                center[1] + radius * np.sin(2 * np.pi * mode * t),
            ]
        )
    )


def random_spd(rng, size, cond):
    q, _ = np.linalg.qr(rng.standard_normal((size, size)))
    eigs = np.exp(np.linspace(-np.log(cond), 0.0, size))
    m = q @ np.diag(eigs) @ q.T
    return 0.5 * (m + m.T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
