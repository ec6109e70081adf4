"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--size 512] [--reps 5]

Prints one row per (operation, backend) with the median wall-clock time and
the speedup of the compiled backend over the fallback.
"""
import argparse
import statistics
import time

import numpy as np

from fraccrypt import kernels, spectral
from fraccrypt.imagecore import ImageBuffer
from fraccrypt.pipeline import decrypt_image, derive_params, encrypt_image


def median_time(fn, reps):
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def cases(size, rng):
    blocks = rng.uniform(0, 255, (size * size // 1024, 32, 32))
    img = ImageBuffer.from_array(rng.integers(0, 256, (size, size), dtype=np.uint8))
    params = derive_params("bench", block_size=32)
    container = encrypt_image(img, params)
    return {
        "fft2 (32x32 blocks)": lambda b: spectral.fft2(blocks, backend=b),
        "dft2_naive (32x32 blocks)": lambda b: spectral.dft2_naive(blocks, backend=b),
        "fisher_yates (n=size^2)": lambda b: kernels.impl(b).fisher_yates(12345, size * size),
        "encrypt_image": lambda b: encrypt_image(img, params, backend=b),
        "decrypt_image": lambda b: decrypt_image(container, params, backend=b),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"image {args.size}x{args.size}, median of {args.reps}, backends: {', '.join(backends)}")
    print(f"{'operation':<28}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for name, fn in cases(args.size, np.random.default_rng(0)).items():
        times = {b: median_time(lambda: fn(b), args.reps) for b in backends}
        for b, t in times.items():
            speedup = times["python"] / t if "python" in times else float("nan")
            print(f"{name:<28}{b:<10}{t:>10.4f}{speedup:>9.2f}x")


if __name__ == "__main__":
    main()
