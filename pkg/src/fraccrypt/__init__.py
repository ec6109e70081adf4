"""Block-FFT / Arnold cat map / keyed-shuffle image encryption."""
from .container import EncryptedContainer, Mode
from .errors import (
    FormatError,
    FractalCryptError,
    PreconditionError,
    TruncatedDataError,
    UnsupportedDepthError,
    WrongKeyError,
)
from .imagecore import ImageBuffer, load_image, merge_channels, save_image, split_channels
from .kernels import active_backend
from .pipeline import CipherParams, decrypt_image, derive_params, encrypt_image

__all__ = [
    "CipherParams",
    "EncryptedContainer",
    "FormatError",
    "FractalCryptError",
    "ImageBuffer",
    "Mode",
    "PreconditionError",
    "TruncatedDataError",
    "UnsupportedDepthError",
    "WrongKeyError",
    "active_backend",
    "decrypt_image",
    "derive_params",
    "encrypt_image",
    "load_image",
    "merge_channels",
    "save_image",
    "split_channels",
]

__version__ = "0.1.0"
