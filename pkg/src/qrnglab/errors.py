"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: parameter/validation problems
exit 1, file-format and I/O problems exit 2, and computation failures
(no 3-dB crossing found, block too small, entropy source unavailable)
exit 3.
"""


class QrnglabError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(QrnglabError, ValueError):
    """An input value or configuration field is invalid.

    The message always names the offending field or argument.
    """


class TraceFormatError(QrnglabError):
    """A trace file is malformed; the message reports the byte offset."""


class ComputationError(QrnglabError):
    """A well-formed request has no computable answer."""


class BandwidthNotFoundError(ComputationError):
    """No 3-dB crossing exists inside the searched frequency range."""


class BlockTooSmallError(ComputationError):
    """Extractor block carries too little entropy for any output bits."""


class EntropySourceError(ComputationError):
    """The platform entropy source failed; there is no silent fallback."""


class InsufficientBitsError(ParameterError):
    """A statistical test was given fewer bits than its documented minimum."""
