"""Seeded Toeplitz randomness extraction over GF(2).

A block of n raw bits x is compressed to m near-uniform bits y = T.x
where T is the m-by-n Toeplitz matrix defined by a fixed seed of
n + m - 1 bits, T[i][j] = seed[i - j + n - 1].  The output length comes
from leftover-hash accounting: m = floor(samples * hmin) - 2*log2(1/eps).

The hot path evaluates T.x as a linear convolution via real FFTs with the
seed spectrum cached across blocks; results are checked against exact
integer arithmetic bounds and fall back to direct convolution if the
floating-point margin is ever violated.  Conformance is defined solely by
the T[i][j] = seed[i - j + n - 1] definition.
"""

from __future__ import annotations

import math
import secrets
import time
from dataclasses import dataclass

import numpy as np
from scipy.fft import irfft, next_fast_len, rfft

from .errors import BlockTooSmallError, EntropySourceError, ParameterError
from .trace_sim import SampleTrace


def _as_bit_array(bits, name: str) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.ndim != 1:
        raise ParameterError(f"{name} must be a 1-D bit sequence")
    arr = arr.astype(np.uint8, copy=True)
    if arr.size and arr.max() > 1:
        raise ParameterError(f"{name} must contain only 0/1 values")
    return arr


@dataclass(frozen=True, eq=False)
class ExtractorParams:
    """Block geometry, security parameter, and the Toeplitz seed."""

    input_bits: int  # n
    output_bits: int  # m
    security_log2: int  # eps = 2**-security_log2
    seed: np.ndarray  # n + m - 1 bits

    def __post_init__(self) -> None:
        if not isinstance(self.input_bits, int) or self.input_bits < 1:
            raise ParameterError("input_bits must be a positive integer")
        if not isinstance(self.output_bits, int) or not 1 <= self.output_bits <= self.input_bits:
            raise ParameterError("output_bits must satisfy 1 <= m <= n")
        if not isinstance(self.security_log2, int) or self.security_log2 < 0:
            raise ParameterError("security_log2 must be >= 0")
        seed = _as_bit_array(self.seed, "seed")
        expected = self.input_bits + self.output_bits - 1
        if seed.size != expected:
            raise ParameterError(f"seed length must be n + m - 1 = {expected}, got {seed.size}")
        seed.setflags(write=False)
        object.__setattr__(self, "seed", seed)


def output_length(
    samples_per_block: int,
    bits_per_sample: int,
    hmin_per_sample: float,
    security_log2: int,
) -> int:
    """Extractable bits per block under the leftover-hash penalty.

    m = floor(samples * hmin) - 2*security_log2, clamped to the raw block
    size.  Raises :class:`~qrnglab.errors.BlockTooSmallError` (naming the
    minimum viable block) when nothing can be extracted.
    """
    if samples_per_block < 1:
        raise ParameterError("samples_per_block must be >= 1")
    if bits_per_sample < 1:
        raise ParameterError("bits_per_sample must be >= 1")
    if not 0 <= hmin_per_sample <= bits_per_sample:
        raise ParameterError("hmin_per_sample must lie in [0, bits_per_sample]")
    if security_log2 < 0:
        raise ParameterError("security_log2 must be >= 0")

    m = math.floor(samples_per_block * hmin_per_sample) - 2 * security_log2
    if m <= 0:
        if hmin_per_sample > 0:
            viable = math.ceil((2 * security_log2 + 1) / hmin_per_sample)
            hint = f"; minimum viable block is {viable} samples"
        else:
            hint = "; no block size is viable at zero entropy"
        raise BlockTooSmallError(
            f"block of {samples_per_block} samples yields {m} output bits{hint}"
        )
    return min(m, samples_per_block * bits_per_sample)


class _ToeplitzHasher:
    """FFT convolution with the seed spectrum cached across blocks."""

    def __init__(self, params: ExtractorParams):
        self.n = params.input_bits
        self.m = params.output_bits
        full_len = self.n + params.seed.size - 1
        self.nfft = next_fast_len(full_len, real=True)
        self._seed_int = params.seed.astype(np.int64)
        self._seed_spectrum = rfft(params.seed.astype(np.float64), self.nfft)

    def hash_block(self, bits: np.ndarray) -> np.ndarray:
        conv = irfft(rfft(bits.astype(np.float64), self.nfft) * self._seed_spectrum, self.nfft)
        window = conv[self.n - 1 : self.n - 1 + self.m]
        rounded = np.rint(window)
        if float(np.max(np.abs(window - rounded))) > 0.25:
            # Exact integer convolution; counts stay far below 2**63.
            exact = np.convolve(self._seed_int, bits.astype(np.int64))
            rounded = exact[self.n - 1 : self.n - 1 + self.m]
        return (rounded.astype(np.int64) & 1).astype(np.uint8)


def extract_block(params: ExtractorParams, bits) -> np.ndarray:
    """Hash one n-bit block to m bits: out[i] = XOR_j seed[i - j + n - 1] * in[j]."""
    x = _as_bit_array(bits, "input block")
    if x.size != params.input_bits:
        raise ParameterError(f"input block must have exactly {params.input_bits} bits, got {x.size}")
    return _ToeplitzHasher(params).hash_block(x)


def toeplitz_matrix(params: ExtractorParams, max_elements: int = 1 << 22) -> np.ndarray:
    """Materialize T for small geometries (docs/tests); refuses huge sizes."""
    n, m = params.input_bits, params.output_bits
    if n * m > max_elements:
        raise ParameterError(f"matrix of {n * m} elements exceeds max_elements={max_elements}")
    i = np.arange(m)[:, None]
    j = np.arange(n)[None, :]
    return params.seed[i - j + n - 1]


def codes_to_bits(codes, adc_bits: int) -> np.ndarray:
    """Serialize ADC codes to a bit stream, LSB first within each code.

    The LSB-first order is part of the stream format; changing it would
    break compatibility with previously extracted output.
    """
    if not 1 <= adc_bits <= 16:
        raise ParameterError("adc_bits must be in [1, 16]")
    arr = np.asarray(codes)
    if arr.size == 0:
        return np.zeros(0, dtype=np.uint8)
    if arr.min() < 0 or arr.max() >= (1 << adc_bits):
        raise ParameterError(f"codes exceed {adc_bits}-bit range")
    if adc_bits <= 8:
        rows = np.unpackbits(arr.astype(np.uint8)[:, None], axis=1, bitorder="little")
        return rows[:, :adc_bits].ravel()
    rows = np.unpackbits(
        arr.astype("<u2")[:, None].view(np.uint8), axis=1, bitorder="little"
    )
    return rows[:, :adc_bits].ravel()


def pack_bits(bits) -> bytes:
    """Pack a 0/1 sequence into bytes, LSB-first within each byte."""
    return np.packbits(_as_bit_array(bits, "bits"), bitorder="little").tobytes()


def unpack_bits(data: bytes, bit_count: int | None = None) -> np.ndarray:
    """Inverse of :func:`pack_bits`."""
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    return bits if bit_count is None else bits[:bit_count]


@dataclass(frozen=True)
class ExtractionReport:
    """Accounting of one streaming extraction run."""

    input_bits: int  # n
    output_bits: int  # m
    security_log2: int
    blocks: int
    discarded_bits: int  # trailing input bits that did not fill a block
    emitted_bits: int  # blocks * m
    bytes_written: int
    seconds: float
    bits_per_second: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.input_bits,
            "m": self.output_bits,
            "security_log2": self.security_log2,
            "blocks": self.blocks,
            "discarded_bits": self.discarded_bits,
            "emitted_bits": self.emitted_bits,
            "bytes_written": self.bytes_written,
            "seconds": self.seconds,
            "bits_per_second": self.bits_per_second,
        }


def _iter_code_chunks(trace_source):
    if isinstance(trace_source, SampleTrace):
        yield trace_source.codes
        return
    if isinstance(trace_source, np.ndarray):
        yield trace_source
        return
    for chunk in trace_source:
        yield np.asarray(chunk)


def stream_extract(trace_source, adc_bits: int, params: ExtractorParams, sink) -> ExtractionReport:
    """Extract a whole code stream through one fixed seed.

    Codes are serialized LSB-first, chunked into n-bit blocks, hashed in
    source order, and the concatenated outputs are written to ``sink``
    packed LSB-first (the final byte is zero-padded).  A trailing partial
    block is discarded and counted in the report.
    """
    n = params.input_bits
    hasher = _ToeplitzHasher(params)

    t0 = time.perf_counter()
    pending = np.zeros(0, dtype=np.uint8)
    out_chunks: list[np.ndarray] = []
    blocks = 0
    for chunk_index, chunk in enumerate(_iter_code_chunks(trace_source)):
        bits = codes_to_bits(chunk, adc_bits)
        pending = bits if pending.size == 0 else np.concatenate([pending, bits])
        while pending.size >= n:
            block, pending = pending[:n], pending[n:]
            try:
                out_chunks.append(hasher.hash_block(block))
            except Exception as exc:  # pragma: no cover - defensive
                raise RuntimeError(f"extraction failed at block {blocks}") from exc
            blocks += 1

    out_bits = np.concatenate(out_chunks) if out_chunks else np.zeros(0, dtype=np.uint8)
    payload = pack_bits(out_bits) if out_bits.size else b""
    if payload:
        try:
            sink.write(payload)
        except OSError as exc:
            raise OSError(f"sink write failed after block {blocks}: {exc}") from exc
    seconds = time.perf_counter() - t0

    emitted = int(out_bits.size)
    return ExtractionReport(
        input_bits=n,
        output_bits=params.output_bits,
        security_log2=params.security_log2,
        blocks=blocks,
        discarded_bits=int(pending.size),
        emitted_bits=emitted,
        bytes_written=len(payload),
        seconds=seconds,
        bits_per_second=(emitted / seconds) if emitted and seconds > 0 else 0.0,
    )


def generate_seed(length: int, entropy_source=None) -> np.ndarray:
    """Produce ``length`` seed bits.

    ``entropy_source`` may be None (platform entropy via ``secrets``), a
    bytes value reused verbatim for reproducible tests, or a callable
    ``f(n_bytes) -> bytes``.  Failures raise
    :class:`~qrnglab.errors.EntropySourceError`; there is never a silent
    fallback to a weaker source.
    """
    if not isinstance(length, int) or length < 1:
        raise ParameterError("length must be a positive integer")
    n_bytes = (length + 7) // 8

    if entropy_source is None:
        entropy_source = secrets.token_bytes
    if isinstance(entropy_source, (bytes, bytearray)):
        data = bytes(entropy_source)
        if len(data) < n_bytes:
            raise ParameterError(f"fixed seed value needs >= {n_bytes} bytes, got {len(data)}")
    elif callable(entropy_source):
        try:
            data = entropy_source(n_bytes)
        except Exception as exc:
            raise EntropySourceError(f"entropy source failed: {exc}") from exc
        if not isinstance(data, (bytes, bytearray)) or len(data) < n_bytes:
            raise EntropySourceError(
                f"entropy source returned {type(data).__name__} of insufficient length"
            )
    else:
        raise ParameterError("entropy_source must be None, bytes, or callable")
    return unpack_bits(bytes(data[:n_bytes]), length).copy()


def expand_seed_hex(hex_value: str, length: int) -> np.ndarray:
    """Deterministically expand a hex string into ``length`` seed bits.

    Reproducibility aid for tests and the CLI ``--seed`` flag; the
    expansion RNG is not a randomness product.
    """
    try:
        value = int(hex_value, 16)
    except ValueError as exc:
        raise ParameterError(f"--seed must be hexadecimal, got {hex_value!r}") from exc
    rng = np.random.default_rng(value)
    return rng.integers(0, 2, size=length, dtype=np.uint8)
