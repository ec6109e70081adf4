"""8-bit raster model and binary PGM/PPM (P5/P6) I/O."""
from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import FormatError, PreconditionError, TruncatedDataError, UnsupportedDepthError

_MAGIC_TO_CHANNELS = {b"P5": 1, b"P6": 3}
_CHANNELS_TO_MAGIC = {1: b"P5", 3: b"P6"}

SAMPLE_IMAGES = ("astronaut", "coffee", "chelsea")


@dataclass(frozen=True, eq=False)
class ImageBuffer:
    """Decoded raster with row-major, channel-interleaved uint8 samples.

    The sample array is made read-only on construction so buffers can be
    shared freely between threads.
    """

    width: int
    height: int
    channels: int
    samples: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise PreconditionError(f"image dimensions must be >= 1, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise PreconditionError(f"channels must be 1 or 3, got {self.channels}")
        samples = np.ascontiguousarray(self.samples, dtype=np.uint8).reshape(-1)
        expected = self.width * self.height * self.channels
        if samples.size != expected:
            raise PreconditionError(f"expected {expected} samples, got {samples.size}")
        if samples.flags.writeable:
            samples = samples.copy()
            samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_array(cls, array) -> "ImageBuffer":
        """Build from an (H, W) or (H, W, C) uint8 array."""
        arr = np.asarray(array)
        if arr.ndim == 2:
            arr = arr[:, :, None]
        if arr.ndim != 3:
            raise PreconditionError(f"expected a 2-D or 3-D array, got shape {arr.shape}")
        h, w, c = arr.shape
        return cls(w, h, c, arr.reshape(-1))

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.height, self.width, self.channels)

    @property
    def array(self) -> np.ndarray:
        """Read-only (H, W, C) view of the samples."""
        return self.samples.reshape(self.height, self.width, self.channels)

    def index_of(self, x: int, y: int, c: int = 0) -> int:
        """Linear sample index of column ``x``, row ``y``, channel ``c``."""
        if not (0 <= x < self.width and 0 <= y < self.height and 0 <= c < self.channels):
            raise PreconditionError(f"pixel ({x}, {y}, {c}) outside {self.width}x{self.height}x{self.channels}")
        return (y * self.width + x) * self.channels + c

    def coords_of(self, index: int) -> tuple[int, int, int]:
        """Inverse of :meth:`index_of`."""
        if not 0 <= index < self.samples.size:
            raise PreconditionError(f"index {index} outside [0, {self.samples.size})")
        pixel, c = divmod(index, self.channels)
        y, x = divmod(pixel, self.width)
        return x, y, c

    def __eq__(self, other):
        if not isinstance(other, ImageBuffer):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.samples, other.samples)

    def __repr__(self):
        return f"ImageBuffer(width={self.width}, height={self.height}, channels={self.channels})"


def _read_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # whitespace and '#' comments may precede each header token
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise FormatError("unexpected end of header")
    return data[start:pos], pos


def decode_netpbm(data: bytes) -> ImageBuffer:
    """Parse the bytes of a binary PGM/PPM file."""
    magic = data[:2]
    if magic not in _MAGIC_TO_CHANNELS:
        raise FormatError(f"unsupported magic {magic!r}; expected P5 or P6")
    channels = _MAGIC_TO_CHANNELS[magic]
    pos = 2
    if pos < len(data) and not (data[pos : pos + 1].isspace() or data[pos : pos + 1] == b"#"):
        raise FormatError("magic must be followed by whitespace")
    fields = []
    for _ in range(3):
        token, pos = _read_token(data, pos)
        if not token.isdigit():
            raise FormatError(f"non-numeric header field {token!r}")
        fields.append(int(token))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedDepthError(f"maxval {maxval} not supported; only 255")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise TruncatedDataError("missing whitespace before raster")
    payload = data[pos + 1 :]
    expected = width * height * channels
    if len(payload) != expected:
        raise TruncatedDataError(f"header declares {expected} payload bytes, found {len(payload)}")
    return ImageBuffer(width, height, channels, np.frombuffer(payload, dtype=np.uint8))


def encode_netpbm(img: ImageBuffer) -> bytes:
    header = b"%s\n%d %d\n255\n" % (_CHANNELS_TO_MAGIC[img.channels], img.width, img.height)
    return header + img.samples.tobytes()


def load_image(path: str | os.PathLike) -> ImageBuffer:
    with open(path, "rb") as fh:
        data = fh.read()
    return decode_netpbm(data)


def save_image(img: ImageBuffer, path: str | os.PathLike) -> None:
    """Write ``img`` as P5 (grayscale) or P6 (RGB)."""
    with open(path, "wb") as fh:
        fh.write(encode_netpbm(img))


def split_channels(img: ImageBuffer) -> list[np.ndarray]:
    """De-interleave into ``channels`` read-only (H, W) uint8 planes."""
    arr = img.array
    return [arr[:, :, c] for c in range(img.channels)]


def merge_channels(planes) -> ImageBuffer:
    planes = [np.asarray(p, dtype=np.uint8) for p in planes]
    if not planes:
        raise PreconditionError("need at least one plane")
    if any(p.shape != planes[0].shape or p.ndim != 2 for p in planes):
        raise PreconditionError("planes must be 2-D with identical shapes")
    return ImageBuffer.from_array(np.stack(planes, axis=-1))


def load_sample(name: str) -> ImageBuffer:
    """One of the bundled 256x256 RGB natural test images."""
    if name not in SAMPLE_IMAGES:
        raise PreconditionError(f"unknown sample {name!r}; choose from {SAMPLE_IMAGES}")
    return decode_netpbm((resources.files("fraccrypt") / "data" / f"{name}.ppm").read_bytes())
