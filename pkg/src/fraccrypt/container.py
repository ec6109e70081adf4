"""Bit-exact encrypted container codec.

Layout (little-endian), 37-byte header followed by the payload::

    magic "FRCT" | version u16 | mode u8 | keystream_alg u8 | width u32 |
    height u32 | channels u8 | block_size u16 | arnold_iterations u16 |
    key_fingerprint 8B | reserved 8B (zero) | payload

Lossless payload: for each channel, the shuffled block coefficients as
interleaved (re, im) float64 pairs. Quantized payload: for each channel, one
magnitude-normalised byte per coefficient slot.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import FormatError

MAGIC = b"FRCT"
VERSION = 1
HEADER = struct.Struct("<4sHBBIIBHH8s8s")
BLOCK_SIZES = (8, 16, 32, 64, 128)
MAX_ARNOLD_ITERATIONS = 1024
KEYSTREAM_SPLITMIX64 = 0
COMPLEX_LE = np.dtype("<c16")


class Mode(str, Enum):
    LOSSLESS = "lossless"
    QUANTIZED = "quantized"


_MODE_CODES = {Mode.LOSSLESS: 0, Mode.QUANTIZED: 1}
_CODE_MODES = {v: k for k, v in _MODE_CODES.items()}


def padded_extent(n: int, block_size: int) -> int:
    return math.ceil(n / block_size) * block_size


@dataclass(frozen=True)
class EncryptedContainer:
    width: int
    height: int
    channels: int
    block_size: int
    arnold_iterations: int
    key_fingerprint: bytes
    mode: Mode
    payload: bytes
    keystream_alg: int = KEYSTREAM_SPLITMIX64
    version: int = VERSION

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.version != VERSION:
            raise FormatError(f"unsupported container version {self.version}")
        if self.keystream_alg != KEYSTREAM_SPLITMIX64:
            raise FormatError(f"unknown keystream algorithm id {self.keystream_alg}")
        if self.width < 1 or self.height < 1:
            raise FormatError(f"invalid dimensions {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise FormatError(f"invalid channel count {self.channels}")
        if self.block_size not in BLOCK_SIZES:
            raise FormatError(f"invalid block size {self.block_size}")
        if not 1 <= self.arnold_iterations <= MAX_ARNOLD_ITERATIONS:
            raise FormatError(f"invalid Arnold iteration count {self.arnold_iterations}")
        if len(self.key_fingerprint) != 8:
            raise FormatError("key fingerprint must be 8 bytes")
        if len(self.payload) != self.expected_payload_length():
            raise FormatError(
                f"payload is {len(self.payload)} bytes, header implies {self.expected_payload_length()}"
            )

    @property
    def padded_width(self) -> int:
        return padded_extent(self.width, self.block_size)

    @property
    def padded_height(self) -> int:
        return padded_extent(self.height, self.block_size)

    @property
    def slots_per_channel(self) -> int:
        return self.padded_width * self.padded_height

    def expected_payload_length(self) -> int:
        per_slot = COMPLEX_LE.itemsize if self.mode is Mode.LOSSLESS else 1
        return self.channels * self.slots_per_channel * per_slot

    def channel_payload(self, channel: int) -> np.ndarray:
        """Read-only view of one channel's payload (complex128 or uint8)."""
        if not 0 <= channel < self.channels:
            raise IndexError(channel)
        dtype = COMPLEX_LE if self.mode is Mode.LOSSLESS else np.dtype(np.uint8)
        n = self.slots_per_channel
        return np.frombuffer(self.payload, dtype=dtype, count=n, offset=channel * n * dtype.itemsize)

    def encode_header(self) -> bytes:
        return HEADER.pack(
            MAGIC,
            self.version,
            _MODE_CODES[self.mode],
            self.keystream_alg,
            self.width,
            self.height,
            self.channels,
            self.block_size,
            self.arnold_iterations,
            bytes(self.key_fingerprint),
            bytes(8),
        )

    def encode(self) -> bytes:
        return self.encode_header() + self.payload

    @classmethod
    def decode(cls, data: bytes) -> "EncryptedContainer":
        if len(data) < HEADER.size:
            raise FormatError(f"container truncated: {len(data)} bytes, header needs {HEADER.size}")
        (magic, version, mode, alg, width, height, channels,
         block_size, iterations, fingerprint, reserved) = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError(f"bad magic {magic!r}")
        if mode not in _CODE_MODES:
            raise FormatError(f"unknown mode code {mode}")
        if reserved != bytes(8):
            raise FormatError("reserved header bytes must be zero")
        return cls(
            width=width,
            height=height,
            channels=channels,
            block_size=block_size,
            arnold_iterations=iterations,
            key_fingerprint=fingerprint,
            mode=_CODE_MODES[mode],
            payload=bytes(data[HEADER.size:]),
            keystream_alg=alg,
            version=version,
        )


def read_container(path) -> EncryptedContainer:
    with open(path, "rb") as fh:
        return EncryptedContainer.decode(fh.read())


def write_container(container: EncryptedContainer, path) -> None:
    with open(path, "wb") as fh:
        fh.write(container.encode())
