"""Exception hierarchy shared by the library and the CLI."""


class FractalCryptError(Exception):
    """Base class for all package errors."""


class FormatError(FractalCryptError, ValueError):
    """Malformed image header or encrypted container."""


class UnsupportedDepthError(FormatError):
    """Image uses a maxval other than 255."""


class TruncatedDataError(FractalCryptError, OSError):
    """Payload shorter (or longer) than its header declares."""


class PreconditionError(FractalCryptError, ValueError):
    """Caller violated an operation's documented precondition."""


class WrongKeyError(FractalCryptError):
    """Key fingerprint does not match the container header."""
