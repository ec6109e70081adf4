"""Fidelity and histogram statistics for 8-bit images."""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import PreconditionError
from .imagecore import ImageBuffer

PEAK = 255.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03
INF_SENTINEL = "inf"


def _check_same_shape(a: ImageBuffer, b: ImageBuffer) -> None:
    if a.shape != b.shape:
        raise PreconditionError(f"image shapes differ: {a.shape} vs {b.shape}")


def psnr(a: ImageBuffer, b: ImageBuffer) -> float:
    """Peak signal-to-noise ratio in dB with peak 255; ``inf`` for identical images."""
    _check_same_shape(a, b)
    diff = a.samples.astype(np.float64) - b.samples.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def gaussian_window(size: int = SSIM_WINDOW, sigma: float = SSIM_SIGMA) -> np.ndarray:
    """Normalised 1-D Gaussian; the 2-D window is its outer product."""
    x = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return g / g.sum()


def _filter_valid(a: np.ndarray, g: np.ndarray) -> np.ndarray:
    t = sliding_window_view(a, g.size, axis=0) @ g
    return sliding_window_view(t, g.size, axis=1) @ g


def _ssim_plane(x: np.ndarray, y: np.ndarray) -> float:
    c1 = (SSIM_K1 * PEAK) ** 2
    c2 = (SSIM_K2 * PEAK) ** 2
    if min(x.shape) < SSIM_WINDOW:
        # too small for the window: one global, unweighted window
        mu_x, mu_y = x.mean(), y.mean()
        var_x = np.mean((x - mu_x) ** 2)
        var_y = np.mean((y - mu_y) ** 2)
        cov = np.mean((x - mu_x) * (y - mu_y))
    else:
        g = gaussian_window()
        mu_x, mu_y = _filter_valid(x, g), _filter_valid(y, g)
        var_x = _filter_valid(x * x, g) - mu_x * mu_x
        var_y = _filter_valid(y * y, g) - mu_y * mu_y
        cov = _filter_valid(x * y, g) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def ssim(a: ImageBuffer, b: ImageBuffer) -> float:
    """Mean structural similarity, computed per channel and averaged.

    Uses an 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, L=255 and
    only window positions that fit entirely inside the image. Images smaller
    than the window fall back to a single global window.
    """
    _check_same_shape(a, b)
    xa = a.array.astype(np.float64)
    xb = b.array.astype(np.float64)
    return float(np.mean([_ssim_plane(xa[:, :, c], xb[:, :, c]) for c in range(a.channels)]))


def histogram(img: ImageBuffer) -> np.ndarray:
    """(channels, 256) array of exact sample counts."""
    arr = img.array
    return np.stack([np.bincount(arr[:, :, c].ravel(), minlength=256) for c in range(img.channels)])


def chi_square_uniform(hist) -> float:
    """Chi-square statistic of a 256-bin histogram against the uniform distribution."""
    h = np.asarray(hist, dtype=np.float64)
    if h.shape != (256,):
        raise PreconditionError(f"expected 256 bins, got shape {h.shape}")
    n = h.sum()
    if n < 256:
        raise PreconditionError(f"need at least 256 samples, got {n:g}")
    expected = n / 256.0
    return float(np.sum((h - expected) ** 2) / expected)


def shannon_entropy(hist) -> float:
    h = np.asarray(hist, dtype=np.float64)
    n = h.sum()
    if n < 1:
        raise PreconditionError("histogram is empty")
    p = h[h > 0] / n
    return float(-np.sum(p * np.log2(p))) + 0.0  # fold -0.0 into 0.0


def timed(op, *args, **kwargs):
    """Run ``op(*args, **kwargs)``; return ``(result, seconds)`` from a monotonic clock."""
    start = time.perf_counter()
    result = op(*args, **kwargs)
    return result, time.perf_counter() - start


def format_value(value) -> str:
    if isinstance(value, float) and math.isinf(value) and value > 0:
        return INF_SENTINEL
    return repr(value) if isinstance(value, float) else str(value)


@dataclass
class MetricsReport:
    """Measurements for one run; unset fields are omitted from serialisation."""

    psnr_db: float | None = None
    ssim: float | None = None
    entropy_bits: list[float] | None = None
    histogram: np.ndarray | None = None
    chi_square: list[float] | None = None
    encrypt_seconds: float | None = None
    decrypt_seconds: float | None = None
    channel_names: list[str] = field(default_factory=list)

    def _channel(self, c: int) -> str:
        return self.channel_names[c] if c < len(self.channel_names) else str(c)

    def rows(self) -> list[tuple[str, str, object]]:
        out = []
        for name in ("psnr_db", "ssim"):
            value = getattr(self, name)
            if value is not None:
                out.append((name, "all", value))
        for name in ("entropy_bits", "chi_square"):
            values = getattr(self, name)
            if values is not None:
                out.extend((name, self._channel(c), v) for c, v in enumerate(values))
        if self.histogram is not None:
            for c, counts in enumerate(self.histogram):
                out.extend((f"histogram_{k}", self._channel(c), int(v)) for k, v in enumerate(counts))
        for name in ("encrypt_seconds", "decrypt_seconds"):
            value = getattr(self, name)
            if value is not None:
                out.append((name, "all", value))
        return out

    def to_csv(self) -> str:
        lines = ["metric,channel,value"]
        lines += [f"{m},{c},{format_value(v)}" for m, c, v in self.rows()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, float) and math.isinf(v):
                return INF_SENTINEL
            return v

        out = {}
        for name in ("psnr_db", "ssim", "encrypt_seconds", "decrypt_seconds"):
            value = getattr(self, name)
            if value is not None:
                out[name] = enc(value)
        for name in ("entropy_bits", "chi_square"):
            values = getattr(self, name)
            if values is not None:
                out[name] = {self._channel(c): v for c, v in enumerate(values)}
        if self.histogram is not None:
            out["histogram"] = {self._channel(c): h.tolist() for c, h in enumerate(self.histogram)}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def channel_names(channels: int) -> list[str]:
    return ["gray"] if channels == 1 else ["red", "green", "blue"]


def fidelity_report(reference: ImageBuffer, test: ImageBuffer) -> MetricsReport:
    return MetricsReport(psnr_db=psnr(reference, test), ssim=ssim(reference, test),
                         channel_names=channel_names(reference.channels))


def statistics_report(img: ImageBuffer) -> MetricsReport:
    """Histogram, per-channel entropy and chi-square for one image."""
    hist = histogram(img)
    report = MetricsReport(histogram=hist, channel_names=channel_names(img.channels))
    report.entropy_bits = [shannon_entropy(h) for h in hist]
    if img.width * img.height >= 256:
        report.chi_square = [chi_square_uniform(h) for h in hist]
    return report
