import cmath
import time

import numpy as np
import pytest

from fraccrypt import spectral
from fraccrypt.errors import PreconditionError

POW2 = [1, 2, 4, 8, 16, 32, 64]


def brute_dft(grid, sign=-1):
    """Term-by-term double sum with cmath; deliberately shares nothing with the library."""
    n, m = len(grid), len(grid[0])
    out = [[0j] * m for _ in range(n)]
    for u in range(n):
        for v in range(m):
            acc = 0j
            for x in range(n):
                for y in range(m):
                    acc += grid[x][y] * cmath.exp(sign * 2j * cmath.pi * (u * x / n + v * y / m))
            out[u][v] = acc
    return np.array(out)


def random_grid(rng, n, m, scale=255.0):
    return rng.uniform(-scale, scale, (n, m)) + 1j * rng.uniform(-scale, scale, (n, m))


def test_naive_matches_brute_force_oracle(rng, backend):
    g = rng.uniform(0, 255, (4, 4))
    assert np.abs(spectral.dft2_naive(g) - brute_dft(g.tolist())).max() < 1e-9


def test_naive_inverse_matches_brute_force_oracle(rng, backend):
    g = random_grid(rng, 4, 8)
    expected = brute_dft(g.tolist(), sign=+1) / 32
    assert np.abs(spectral.idft2_naive(g) - expected).max() < 1e-9


def test_naive_constant_grid_is_dc_only(backend):
    out = spectral.dft2_naive(np.full((4, 8), 3.0))
    assert abs(out[0, 0] - 4 * 8 * 3.0) < 1e-9
    out[0, 0] = 0
    assert np.abs(out).max() < 1e-9


def test_naive_delta_is_flat(backend):
    g = np.zeros((4, 4))
    g[0, 0] = 1
    assert np.array_equal(spectral.dft2_naive(g), np.ones((4, 4), dtype=complex))


def test_naive_inversion_identity(rng, backend):
    g = random_grid(rng, 8, 8)
    assert np.abs(spectral.idft2_naive(spectral.dft2_naive(g)) - g).max() < 1e-9


def test_naive_inverse_of_zero_and_dc(backend):
    assert not spectral.idft2_naive(np.zeros((4, 4))).any()
    dc = np.zeros((4, 8), dtype=complex)
    dc[0, 0] = 32
    assert np.abs(spectral.idft2_naive(dc) - 1).max() < 1e-12


@pytest.mark.parametrize("n", POW2)
@pytest.mark.parametrize("m", POW2)
def test_fft_matches_naive(rng, backend, n, m):
    g = random_grid(rng, n, m)
    assert np.abs(spectral.fft2(g) - spectral.dft2_naive(g)).max() < 1e-6
    assert np.abs(spectral.ifft2(g) - spectral.idft2_naive(g)).max() < 1e-6
    assert np.abs(spectral.ifft2(spectral.fft2(g)) - g).max() < 1e-9


def test_fft_1x1_is_identity(backend):
    assert spectral.fft2(np.array([[5 + 2j]]))[0, 0] == 5 + 2j


@pytest.mark.parametrize("shape", [(3, 4), (4, 6), (12, 16)])
def test_fft_rejects_non_power_of_two(shape):
    with pytest.raises(PreconditionError):
        spectral.fft2(np.zeros(shape))


def test_naive_accepts_any_size(rng):
    g = random_grid(rng, 3, 5)
    assert np.abs(spectral.idft2_naive(spectral.dft2_naive(g)) - g).max() < 1e-9


@pytest.mark.parametrize("n", [2, 8, 16])
def test_parseval(rng, n):
    g = random_grid(rng, n, n)
    energy = np.sum(np.abs(g) ** 2)
    spec_energy = np.sum(np.abs(spectral.dft2_naive(g)) ** 2) / (n * n)
    assert abs(energy - spec_energy) / energy < 1e-9


def test_linearity(rng):
    g, h = random_grid(rng, 8, 8), random_grid(rng, 8, 8)
    a, b = 0.7 - 1.5j, -2.25
    lhs = spectral.dft2_naive(a * g + b * h)
    rhs = a * spectral.dft2_naive(g) + b * spectral.dft2_naive(h)
    assert np.abs(lhs - rhs).max() < 1e-9


def test_batch_equals_per_grid(rng, backend):
    batch = np.stack([random_grid(rng, 8, 8) for _ in range(3)])
    out = spectral.fft2(batch)
    for i in range(3):
        assert np.array_equal(out[i], spectral.fft2(batch[i]))


def test_output_is_finite(rng):
    g = random_grid(rng, 16, 16)
    assert np.isfinite(spectral.fft2(g)).all()
    assert np.isfinite(spectral.dft2_naive(g)).all()


def test_fft_faster_than_naive_on_single_grid(rng):
    # a single 512x512 direct sum is ~7e10 terms; 64x64 keeps the same ratio check affordable
    g = random_grid(rng, 64, 64)
    spectral.fft2(g)
    t0 = time.perf_counter()
    spectral.fft2(g)
    t_fft = time.perf_counter() - t0
    t0 = time.perf_counter()
    spectral.dft2_naive(g)
    t_naive = time.perf_counter() - t0
    assert t_naive >= 5 * t_fft
