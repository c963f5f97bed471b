"""Simulated ADC noise traces and the trace file format.

Samples follow the measured-noise model m = q + e (independent zero-mean
Gaussians) and are digitized by a uniform mid-rise quantizer whose code
width is always the full span 2R/2^n, independent of the entropy model's
bin convention.  The generator is numpy's seeded PCG64; it provides
reproducible *simulation* inputs and is explicitly not a randomness
product.
"""

from __future__ import annotations

import datetime
import json
import struct
from dataclasses import asdict, dataclass

import numpy as np

from .entropy_estimator import AdcModel, BinConvention, GaussianNoiseModel
from .errors import ParameterError, TraceFormatError

TRACE_MAGIC = b"QRNGTRC\x00"
TRACE_VERSION = 1
_HEADER = struct.Struct("<8sHHI")  # magic, version, code width (bytes), metadata length

GENERATOR_ID = "numpy.random.Generator(PCG64)"


@dataclass(frozen=True)
class TraceConfig:
    model: GaussianNoiseModel
    adc: AdcModel
    sample_rate: float = 200e3  # Hz
    sample_count: int = 1_000_000
    rng_seed: int = 0  # 64-bit

    def __post_init__(self) -> None:
        if not self.sample_rate > 0:
            raise ParameterError("sample_rate must be > 0")
        if not isinstance(self.sample_count, int) or self.sample_count <= 0:
            raise ParameterError("sample_count must be a positive integer")
        if not isinstance(self.rng_seed, int) or not 0 <= self.rng_seed < 2**64:
            raise ParameterError("rng_seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class SampleTrace:
    """Quantized codes plus the configuration that produced them."""

    codes: np.ndarray
    config: TraceConfig
    created_at: str = ""
    generator: str = GENERATOR_ID

    def __post_init__(self) -> None:
        codes = np.asarray(self.codes)
        if codes.ndim != 1:
            raise ParameterError("codes must be 1-D")
        if codes.size != self.config.sample_count:
            raise ParameterError(
                f"codes length {codes.size} != sample_count {self.config.sample_count}"
            )
        max_code = self.config.adc.bin_count - 1
        if codes.size and (codes.min() < 0 or codes.max() > max_code):
            raise ParameterError(f"codes must lie in [0, {max_code}]")
        object.__setattr__(self, "codes", codes)


def code_width(adc: AdcModel) -> float:
    """Quantizer step 2R/2^n, always over the full +/-R span."""
    return 2.0 * adc.range / adc.bin_count


def quantize(volts, adc: AdcModel) -> np.ndarray:
    """Map voltages to ADC codes: clamp(floor((v + R)/step), 0, 2^n - 1).

    Values at or beyond +R saturate at the top code, at or below -R at
    code 0.  Input must be finite.
    """
    v = np.asarray(volts, dtype=float)
    if not np.all(np.isfinite(v)):
        raise ParameterError("volts must be finite")
    step = code_width(adc)
    codes = np.floor((v + adc.range) / step)
    np.clip(codes, 0, adc.bin_count - 1, out=codes)
    dtype = np.uint8 if adc.bits <= 8 else np.uint16
    return codes.astype(dtype)


def dequantize(codes, adc: AdcModel) -> np.ndarray:
    """Bin-center voltages for statistics on quantized data."""
    c = np.asarray(codes, dtype=float)
    step = code_width(adc)
    return -adc.range + (c + 0.5) * step


def generate_gaussian_trace(config: TraceConfig) -> SampleTrace:
    """Draw, sum, and quantize one trace; fully determined by the seed.

    Draw order is fixed (the quantum vector first, then the classical
    vector) so identical configs give identical codes everywhere.
    """
    rng = np.random.default_rng(config.rng_seed)
    q = rng.normal(0.0, config.model.sigma_q, config.sample_count)
    e = rng.normal(0.0, config.model.sigma_e, config.sample_count)
    codes = quantize(q + e, config.adc)
    created = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    return SampleTrace(codes=codes, config=config, created_at=created)


# ---------------------------------------------------------------------------
# Binary trace file: 16-byte header, length-prefixed JSON metadata, then
# little-endian packed codes (1 byte per code for n <= 8, 2 bytes for n <= 16).
# ---------------------------------------------------------------------------


def _config_to_metadata(trace: SampleTrace) -> dict:
    return {
        "model": asdict(trace.config.model),
        "adc": {
            "range": trace.config.adc.range,
            "bits": trace.config.adc.bits,
            "bin_convention": trace.config.adc.bin_convention.value,
        },
        "sample_rate": trace.config.sample_rate,
        "sample_count": trace.config.sample_count,
        "rng_seed": trace.config.rng_seed,
        "created_at": trace.created_at,
        "generator": trace.generator,
    }


def _config_from_metadata(meta: dict) -> TraceConfig:
    try:
        model = GaussianNoiseModel(**meta["model"])
        adc = AdcModel(
            range=meta["adc"]["range"],
            bits=meta["adc"]["bits"],
            bin_convention=BinConvention(meta["adc"]["bin_convention"]),
        )
        return TraceConfig(
            model=model,
            adc=adc,
            sample_rate=meta["sample_rate"],
            sample_count=meta["sample_count"],
            rng_seed=meta["rng_seed"],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceFormatError(f"metadata block is incomplete or invalid: {exc}") from exc


def save_trace(trace: SampleTrace, path) -> None:
    meta = json.dumps(_config_to_metadata(trace), sort_keys=True).encode("utf-8")
    n_bytes = 1 if trace.config.adc.bits <= 8 else 2
    payload = trace.codes.astype("<u1" if n_bytes == 1 else "<u2").tobytes()
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(TRACE_MAGIC, TRACE_VERSION, n_bytes, len(meta)))
        fh.write(meta)
        fh.write(payload)


def load_trace(path) -> SampleTrace:
    with open(path, "rb") as fh:
        blob = fh.read()

    if len(blob) < _HEADER.size:
        raise TraceFormatError(
            f"file too short for header: expected {_HEADER.size} bytes, got {len(blob)} (offset 0)"
        )
    magic, version, n_bytes, meta_len = _HEADER.unpack_from(blob, 0)
    if magic != TRACE_MAGIC:
        raise TraceFormatError(f"bad magic {magic!r} at offset 0")
    if version != TRACE_VERSION:
        raise TraceFormatError(f"unsupported version {version} at offset 8")
    if n_bytes not in (1, 2):
        raise TraceFormatError(f"invalid code width {n_bytes} at offset 10")

    meta_start = _HEADER.size
    meta_end = meta_start + meta_len
    if len(blob) < meta_end:
        raise TraceFormatError(
            f"truncated metadata: expected {meta_len} bytes at offset {meta_start}, "
            f"got {len(blob) - meta_start}"
        )
    try:
        meta = json.loads(blob[meta_start:meta_end].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise TraceFormatError(f"malformed metadata JSON at offset {meta_start}: {exc}") from exc

    config = _config_from_metadata(meta)
    expected_width = 1 if config.adc.bits <= 8 else 2
    if n_bytes != expected_width:
        raise TraceFormatError(
            f"code width {n_bytes} does not match {config.adc.bits}-bit ADC (offset 10)"
        )

    expected = config.sample_count * n_bytes
    actual = len(blob) - meta_end
    if actual != expected:
        raise TraceFormatError(
            f"truncated or padded payload: expected {expected} bytes at offset {meta_end}, got {actual}"
        )
    codes = np.frombuffer(blob[meta_end:], dtype="<u1" if n_bytes == 1 else "<u2")

    max_code = config.adc.bin_count - 1
    bad = np.nonzero(codes > max_code)[0]
    if bad.size:
        offset = meta_end + int(bad[0]) * n_bytes
        raise TraceFormatError(
            f"code {int(codes[bad[0]])} out of range [0, {max_code}] at offset {offset}"
        )
    return SampleTrace(
        codes=codes.copy(),
        config=config,
        created_at=meta.get("created_at", ""),
        generator=meta.get("generator", ""),
    )


def export_trace_csv(trace: SampleTrace, path) -> None:
    """Write `index,code` rows; metadata is not preserved."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,code\n")
        for i, c in enumerate(trace.codes):
            fh.write(f"{i},{int(c)}\n")


def import_trace_csv(path, config: TraceConfig) -> SampleTrace:
    """Read `index,code` rows back into a trace described by ``config``."""
    codes = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "index,code":
            raise TraceFormatError(f"expected 'index,code' header, got {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                _, code = line.split(",")
                codes.append(int(code))
            except ValueError as exc:
                raise TraceFormatError(f"bad CSV row at line {lineno}: {line!r}") from exc
    dtype = np.uint8 if config.adc.bits <= 8 else np.uint16
    arr = np.asarray(codes, dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() > config.adc.bin_count - 1):
        raise TraceFormatError("CSV contains codes outside the ADC range")
    return SampleTrace(codes=arr.astype(dtype), config=config, generator="csv-import")


def load_table1_fixture() -> dict:
    """Measured output-noise SDs versus amplifier gain and photocurrent.

    Validation fixture: sigma_q rows scale roughly with sqrt(photocurrent)
    and columns with the second-stage magnification.
    """
    import importlib.resources as resources

    ref = resources.files("qrnglab").joinpath("data/table1_sd.json")
    with ref.open("r", encoding="utf-8") as fh:
        return json.load(fh)
