import json
import math

import numpy as np
import pytest

from fraccrypt.errors import PreconditionError
from fraccrypt.imagecore import ImageBuffer
from fraccrypt.metrics import (
    MetricsReport,
    chi_square_uniform,
    fidelity_report,
    gaussian_window,
    histogram,
    psnr,
    shannon_entropy,
    ssim,
    statistics_report,
    timed,
)

SSIM_CONST_100_VS_101 = 0.999950513429356  # brute-force windowed evaluation, 16x16


def img(arr):
    return ImageBuffer.from_array(np.asarray(arr, dtype=np.uint8))


def test_psnr_identical_is_inf(rng):
    a = img(rng.integers(0, 256, (8, 8)))
    assert psnr(a, a) == math.inf


def test_psnr_black_vs_white_is_zero():
    assert psnr(img(np.zeros((4, 4))), img(np.full((4, 4), 255))) == 0.0


def test_psnr_offset_five(rng):
    a = rng.integers(0, 250, (16, 16, 3))
    assert psnr(img(a), img(a + 5)) == pytest.approx(10 * math.log10(65025 / 25), abs=1e-12)
    assert psnr(img(a), img(a + 5)) == pytest.approx(34.15, abs=0.01)


def test_psnr_symmetric(rng):
    a, b = img(rng.integers(0, 256, (9, 9))), img(rng.integers(0, 256, (9, 9)))
    assert psnr(a, b) == psnr(b, a)


def test_shape_mismatch():
    with pytest.raises(PreconditionError):
        psnr(img(np.zeros((4, 4))), img(np.zeros((4, 5))))
    with pytest.raises(PreconditionError):
        ssim(img(np.zeros((4, 4))), img(np.zeros((4, 4, 3))))


@pytest.mark.parametrize("shape", [(32, 32), (20, 40, 3), (5, 5), (11, 11)])
def test_ssim_identical_is_exactly_one(rng, shape):
    a = img(rng.integers(0, 256, shape))
    assert ssim(a, a) == 1.0


def test_ssim_symmetric(rng):
    a, b = img(rng.integers(0, 256, (30, 30, 3))), img(rng.integers(0, 256, (30, 30, 3)))
    assert abs(ssim(a, b) - ssim(b, a)) < 1e-12


def test_ssim_inverted_pattern_is_low():
    y, x = np.mgrid[0:64, 0:64]
    pattern = 128 + 60 * np.sin(x / 5.0) * np.cos(y / 7.0)
    a = img(np.rint(pattern))
    b = img(255 - np.rint(pattern))
    assert ssim(a, b) < 0.5


def test_ssim_constant_offset_golden():
    a = np.full((16, 16), 100)
    assert ssim(img(a), img(a + 1)) == pytest.approx(SSIM_CONST_100_VS_101, abs=1e-12)


def test_ssim_matches_skimage_reference(rng):
    metrics = pytest.importorskip("skimage.metrics")
    a = rng.integers(0, 256, (48, 40))
    b = np.clip(a + rng.normal(0, 20, a.shape), 0, 255).astype(np.uint8)
    ref = metrics.structural_similarity(a.astype(np.uint8), b, gaussian_weights=True, sigma=1.5,
                                        use_sample_covariance=False, data_range=255)
    assert ssim(img(a), img(b)) == pytest.approx(ref, abs=1e-9)


def test_ssim_small_image_falls_back_to_global_window():
    a = np.array([[10, 20], [30, 40]])
    b = a + 3
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
    mu_a, mu_b = a.mean(), b.mean()
    var = a.var()
    expected = (2 * mu_a * mu_b + c1) * (2 * var + c2) / ((mu_a**2 + mu_b**2 + c1) * (2 * var + c2))
    assert ssim(img(a), img(b)) == pytest.approx(expected, abs=1e-12)


def test_gaussian_window_normalised():
    g = gaussian_window()
    assert g.size == 11 and abs(g.sum() - 1) < 1e-15 and g.argmax() == 5


def test_histogram_constant():
    h = histogram(img(np.full((3, 5), 9)))
    assert h.shape == (1, 256) and h[0, 9] == 15 and h.sum() == 15


def test_histogram_two_pixels():
    h = histogram(img([[0, 255]]))[0]
    assert h[0] == 1 and h[255] == 1 and h.sum() == 2


def test_histogram_conservation_rgb(rng):
    h = histogram(img(rng.integers(0, 256, (13, 7, 3))))
    assert h.shape == (3, 256)
    assert (h.sum(axis=1) == 13 * 7).all()


def test_chi_square_uniform_is_zero():
    assert chi_square_uniform(np.full(256, 4)) == 0.0


def test_chi_square_single_bin():
    h = np.zeros(256)
    h[17] = 256
    assert chi_square_uniform(h) == 65280.0


def test_chi_square_needs_256_samples():
    with pytest.raises(PreconditionError):
        chi_square_uniform(np.ones(256) * 0.5)
    with pytest.raises(PreconditionError):
        chi_square_uniform(np.ones(10))


def test_entropy_examples():
    single = np.zeros(256)
    single[3] = 50
    assert shannon_entropy(single) == 0.0
    assert shannon_entropy(np.ones(256)) == pytest.approx(8.0, abs=1e-12)
    two = np.zeros(256)
    two[[0, 1]] = 5
    assert shannon_entropy(two) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(PreconditionError):
        shannon_entropy(np.zeros(256))


def test_timed_noop():
    result, seconds = timed(lambda: 42)
    assert result == 42
    assert seconds >= 0 and math.isfinite(seconds)


def test_timed_passes_arguments():
    assert timed(pow, 2, 10)[0] == 1024


def test_report_csv_uses_inf_sentinel(rng):
    a = img(rng.integers(0, 256, (16, 16)))
    text = fidelity_report(a, a).to_csv()
    lines = text.splitlines()
    assert lines[0] == "metric,channel,value"
    assert "psnr_db,all,inf" in lines
    assert "ssim,all,1.0" in lines


def test_report_json_mirror(rng):
    a = img(rng.integers(0, 256, (16, 16, 3)))
    data = json.loads(fidelity_report(a, a).to_json())
    assert data == {"psnr_db": "inf", "ssim": 1.0}


def test_statistics_report(rng):
    rep = statistics_report(img(rng.integers(0, 256, (32, 32, 3))))
    assert len(rep.entropy_bits) == 3 and len(rep.chi_square) == 3
    assert all(0 <= e <= 8 for e in rep.entropy_bits)
    rows = rep.rows()
    assert ("histogram_0", "red", int(rep.histogram[0, 0])) in rows
    assert sum(v for m, c, v in rows if m.startswith("histogram_") and c == "blue") == 1024


def test_report_timings():
    rep = MetricsReport(encrypt_seconds=0.5, decrypt_seconds=0.25)
    assert rep.to_csv().splitlines()[1:] == ["encrypt_seconds,all,0.5", "decrypt_seconds,all,0.25"]
