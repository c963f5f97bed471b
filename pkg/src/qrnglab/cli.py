"""Command-line front end.

One executable, ``qrnglab``, exposes every library operation as a
subcommand and an end-to-end ``pipeline`` that simulates a trace,
estimates its per-sample min-entropy, sizes and runs the Toeplitz
extractor, and screens the output with the randomness battery.

Exit codes: 0 success, 1 validation error, 2 I/O error, 3 computation
error.  All numeric flags take SI base units; dB and dBm appear only in
outputs.  Commands are deterministic given their flags; the extractor
seed alone defaults to platform entropy unless ``--seed`` pins it.
"""

from __future__ import annotations

import argparse
import dataclasses
import importlib.resources
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import entropy_estimator as ent
from . import extractor as ext
from . import noise_model as nm
from . import randtest as rt
from . import trace_sim as ts
from .errors import ComputationError, ParameterError, TraceFormatError

PROFILE_DIR_ENV = "QRNGLAB_PROFILE_DIR"


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


def _profile_root():
    override = os.environ.get(PROFILE_DIR_ENV)
    if override:
        return Path(override)
    return importlib.resources.files("qrnglab").joinpath("profiles")


def available_profiles() -> list[str]:
    root = _profile_root()
    try:
        names = [entry.name for entry in root.iterdir()]
    except (FileNotFoundError, OSError):
        return []
    return sorted(n[:-5] for n in names if n.endswith(".json"))


def load_profile(name: str) -> dict:
    root = _profile_root()
    ref = root.joinpath(f"{name}.json")
    try:
        with ref.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParameterError(
            f"unknown profile {name!r}; available: {', '.join(available_profiles()) or 'none'}"
        ) from None
    except json.JSONDecodeError as exc:
        raise ParameterError(f"profile {name!r} is not valid JSON: {exc}") from exc


def _profile_section(profile: dict, section: str) -> dict:
    if section not in profile:
        raise ParameterError(
            f"profile {profile.get('name', '?')!r} has no {section!r} section"
        )
    return profile[section]


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as validation errors (exit 1)."""

    def error(self, message):
        raise ParameterError(message)


def _write_text(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _write_bytes(data: bytes, out_path: str) -> None:
    if out_path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(out_path, "wb") as fh:
        fh.write(data)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _detector_from_args(args) -> nm.DetectorConfig:
    if getattr(args, "config", None) and getattr(args, "profile", None):
        raise ParameterError("give either --profile or --config, not both")
    if getattr(args, "config", None):
        cfg = nm.load_detector_config(args.config)
    else:
        profile = load_profile(getattr(args, "profile", None) or "gesi-paper")
        cfg = nm.detector_config_from_dict(_profile_section(profile, "detector"))
    if getattr(args, "photocurrent", None) is not None:
        cfg = dataclasses.replace(cfg, photocurrent=args.photocurrent)
    return cfg


def _noise_model_from_args(args, profile: dict | None) -> ent.GaussianNoiseModel:
    if args.sigma_q is not None or args.sigma_e is not None:
        if args.sigma_q is None or args.sigma_e is None:
            raise ParameterError("--sigma-q and --sigma-e must be given together")
        return ent.GaussianNoiseModel(sigma_q=args.sigma_q, sigma_e=args.sigma_e)
    if profile is None:
        raise ParameterError("need --sigma-q/--sigma-e or --profile with a 'noise' section")
    noise = _profile_section(profile, "noise")
    return ent.GaussianNoiseModel(sigma_q=noise["sigma_q"], sigma_e=noise["sigma_e"])


def _adc_from_args(args, profile: dict | None) -> ent.AdcModel:
    given = [args.range is not None, args.bits is not None]
    if any(given):
        if not all(given):
            raise ParameterError("--range and --bits must be given together")
        convention = ent.BinConvention(args.convention)
        return ent.AdcModel(range=args.range, bits=args.bits, bin_convention=convention)
    if profile is None:
        raise ParameterError("need --range/--bits or --profile with an 'adc' section")
    adc = _profile_section(profile, "adc")
    return ent.AdcModel(
        range=adc["range"],
        bits=adc["bits"],
        bin_convention=ent.BinConvention(adc["bin_convention"]),
    )


def _parse_seed_hex(value: str | None, what: str) -> int:
    if value is None:
        return 0
    try:
        seed = int(value, 16)
    except ValueError as exc:
        raise ParameterError(f"{what} must be hexadecimal, got {value!r}") from exc
    if not 0 <= seed < 2**64:
        raise ParameterError(f"{what} must fit in 64 bits")
    return seed


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_spectrum(args) -> int:
    cfg = _detector_from_args(args)
    grid = nm.default_frequency_grid(args.fmin, args.fmax, args.points_per_decade)
    spectrum = nm.noise_spectrum(cfg, grid)
    if args.format == "json":
        _write_text(_json_text(spectrum.to_json_dict()), args.out)
    else:
        _write_text(spectrum.to_csv(), args.out)
    return 0


def _cmd_gain(args) -> int:
    cfg = _detector_from_args(args)
    if args.freq is not None:
        g = nm.tia_gain(cfg, args.freq)
        payload = {
            "freq_hz": args.freq,
            "gain_mag_v_per_a": abs(g),
            "gain_phase_rad": float(np.angle(g)),
        }
        _write_text(_json_text(payload), args.out)
        return 0
    grid = nm.default_frequency_grid(args.fmin, args.fmax, args.points_per_decade)
    g = nm.tia_gain(cfg, grid)
    if args.format == "json":
        payload = {
            "freq_hz": [float(f) for f in grid],
            "gain_mag_v_per_a": [float(v) for v in np.abs(g)],
            "gain_phase_rad": [float(v) for v in np.angle(g)],
        }
        _write_text(_json_text(payload), args.out)
    else:
        lines = ["freq_hz,gain_mag_v_per_a,gain_phase_rad"]
        for f, gv in zip(grid, g):
            lines.append(f"{f:.9e},{abs(gv):.9e},{np.angle(gv):.9e}")
        _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_qcnr(args) -> int:
    cfg = _detector_from_args(args)
    value = nm.qcnr(cfg, args.freq)
    if args.format == "json":
        payload = {"freq_hz": args.freq, "photocurrent_a": cfg.photocurrent, "qcnr_db": value}
        _write_text(_json_text(payload), args.out)
    else:
        _write_text(f"{value:.3f} dB\n", args.out)
    return 0


def _cmd_bandwidth(args) -> int:
    cfg = _detector_from_args(args)
    bw = nm.bandwidth_3db(cfg)
    if args.format == "json":
        _write_text(_json_text({"bandwidth_3db_hz": bw}), args.out)
    else:
        _write_text(f"{bw:.1f} Hz\n", args.out)
    return 0


def _cmd_cmrr(args) -> int:
    value = nm.cmrr_from_imbalance(args.split_a, args.split_b, args.mismatch)
    if args.format == "json":
        payload = {
            "split_a": args.split_a,
            "split_b": args.split_b,
            "responsivity_mismatch": args.mismatch,
            "cmrr_db": value,
        }
        _write_text(_json_text(payload), args.out)
    else:
        _write_text(f"{value:.3f} dB\n", args.out)
    return 0


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ParameterError(f"{flag} must be a comma-separated float list") from exc
    if not values:
        raise ParameterError(f"{flag} must be a non-empty comma-separated float list")
    return values


def _cmd_sweep(args) -> int:
    cfg = _detector_from_args(args)
    rfs = _parse_float_list(args.rf, "--rf")
    ctfs = _parse_float_list(args.ctf, "--ctf")
    candidates = nm.sweep_feedback(cfg, rfs, ctfs, args.min_bandwidth)
    if args.format == "json":
        payload = {
            "min_bandwidth_hz": args.min_bandwidth,
            "candidates": [dataclasses.asdict(c) for c in candidates],
        }
        _write_text(_json_text(payload), args.out)
    else:
        lines = ["r_f_ohm,c_tf_f,bandwidth_hz,qcnr_db"]
        for c in candidates:
            lines.append(
                f"{c.feedback_resistance:.9e},{c.total_feedback_capacitance:.9e},"
                f"{c.bandwidth_hz:.9e},{c.qcnr_db:.6f}"
            )
        _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _hmin_payload(model: ent.GaussianNoiseModel, adc: ent.AdcModel, estimate) -> dict:
    return {
        "hmin_bits": estimate.hmin,
        "quadrature_error_bits": estimate.quadrature_error,
        "sigma_q": model.sigma_q,
        "sigma_e": model.sigma_e,
        "range": adc.range,
        "bits": adc.bits,
        "convention": adc.bin_convention.value,
    }


def _cmd_hmin(args) -> int:
    profile = load_profile(args.profile) if args.profile else None
    model = _noise_model_from_args(args, profile)
    adc = _adc_from_args(args, profile)
    estimate = ent.average_min_entropy(
        model, adc, half_width_sigmas=args.half_width_sigmas, node_count=args.nodes
    )
    _write_text(_json_text(_hmin_payload(model, adc, estimate)), args.out)
    return 0


def _cmd_curve(args) -> int:
    if args.profile:
        curve_spec = _profile_section(load_profile(args.profile), "curve")
        qcnr_db = curve_spec["qcnr_db"]
        bits = curve_spec["bits"]
        convention = ent.BinConvention(curve_spec["bin_convention"])
        start = curve_spec["ratio_start"]
        stop = curve_spec["ratio_stop"]
        step = curve_spec["ratio_step"]
    else:
        if args.qcnr_db is None:
            raise ParameterError("need --qcnr-db or --profile with a 'curve' section")
        qcnr_db = args.qcnr_db
        bits = args.bits if args.bits is not None else 8
        convention = ent.BinConvention(args.convention)
        start, stop, step = args.ratio_start, args.ratio_stop, args.ratio_step
    grid = ent.default_ratio_grid(start, stop, step)
    curve = ent.hmin_curve(qcnr_db, grid, bits=bits, convention=convention)
    if args.format == "json":
        payload = {
            "qcnr_db": qcnr_db,
            "bits": bits,
            "convention": convention.value,
            "ratio": [r for r, _ in curve],
            "hmin_bits": [h for _, h in curve],
        }
        _write_text(_json_text(payload), args.out)
    else:
        lines = ["ratio,hmin_bits"] + [f"{r:.6f},{h:.9f}" for r, h in curve]
        _write_text("\n".join(lines) + "\n", args.out)
    return 0


def _trace_config_from_args(args, profile: dict | None) -> ts.TraceConfig:
    model = _noise_model_from_args(args, profile)
    adc = _adc_from_args(args, profile)
    sample_rate = args.sample_rate
    if sample_rate is None:
        sample_rate = profile.get("sample_rate", 200e3) if profile else 200e3
    return ts.TraceConfig(
        model=model,
        adc=adc,
        sample_rate=sample_rate,
        sample_count=args.samples,
        rng_seed=_parse_seed_hex(args.seed, "--seed"),
    )


def _cmd_simulate(args) -> int:
    profile = load_profile(args.profile) if args.profile else None
    config = _trace_config_from_args(args, profile)
    trace = ts.generate_gaussian_trace(config)
    if args.format == "csv":
        ts.export_trace_csv(trace, args.out)
    else:
        ts.save_trace(trace, args.out)
    de_quantized = ts.dequantize(trace.codes, config.adc)
    summary = {
        "out": args.out,
        "samples": config.sample_count,
        "sample_rate_hz": config.sample_rate,
        "sigma_q": config.model.sigma_q,
        "sigma_e": config.model.sigma_e,
        "sample_sd_v": float(np.std(de_quantized)),
    }
    sys.stdout.write(_json_text(summary))
    return 0


def _extractor_params(
    n_input_bits: int, samples_per_block: int, bits: int, hmin: float, security_log2: int, seed_hex: str | None
) -> ext.ExtractorParams:
    m = ext.output_length(samples_per_block, bits, hmin, security_log2)
    seed_len = n_input_bits + m - 1
    if seed_hex is not None:
        seed = ext.expand_seed_hex(seed_hex, seed_len)
    else:
        seed = ext.generate_seed(seed_len)
    return ext.ExtractorParams(
        input_bits=n_input_bits, output_bits=m, security_log2=security_log2, seed=seed
    )


def _cmd_extract(args) -> int:
    trace = ts.load_trace(args.trace)
    bits = trace.config.adc.bits
    if args.hmin is not None:
        hmin = args.hmin
    else:
        estimate = ent.average_min_entropy(trace.config.model, trace.config.adc)
        hmin = estimate.hmin
    n = args.samples_per_block * bits
    params = _extractor_params(n, args.samples_per_block, bits, hmin, args.security_log2, args.seed)

    buffer = io.BytesIO()
    report = ext.stream_extract(trace, bits, params, buffer)
    _write_bytes(buffer.getvalue(), args.out)

    payload = {"hmin_bits": hmin, **report.to_json_dict()}
    text = _json_text(payload)
    if args.out != "-":  # keep stdout clean when it carries the random bytes
        sys.stdout.write(text)
    if args.report:
        _write_text(text, args.report)
    return 0


def _cmd_test(args) -> int:
    if args.ascii:
        bits = rt.import_ascii_bits(args.input)
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
        bits = ext.unpack_bits(data)
    config = rt.BatteryConfig(
        alpha=args.alpha,
        block_length=args.block_length,
        serial_length=args.serial_length,
    )
    report = rt.run_battery(bits, config)
    if args.export_ascii:
        rt.export_ascii_bits(bits, args.export_ascii)
    if args.format == "json":
        _write_text(_json_text(report.to_json_dict()), args.out)
    else:
        _write_text(report.format_table() + "\n", args.out)
    return 0


def _cmd_pipeline(args) -> int:
    profile = load_profile(args.profile)
    model = _noise_model_from_args(args, profile)
    adc = _adc_from_args(args, profile)
    sample_rate = args.sample_rate
    if sample_rate is None:
        sample_rate = profile.get("sample_rate", 200e3)
    extractor_spec = profile.get("extractor", {})
    samples_per_block = args.samples_per_block or extractor_spec.get("samples_per_block", 4096)
    security_log2 = (
        args.security_log2 if args.security_log2 is not None else extractor_spec.get("security_log2", 50)
    )

    config = ts.TraceConfig(
        model=model,
        adc=adc,
        sample_rate=sample_rate,
        sample_count=args.samples,
        rng_seed=_parse_seed_hex(args.trace_seed, "--trace-seed"),
    )
    trace = ts.generate_gaussian_trace(config)

    estimate = ent.average_min_entropy(model, adc)
    rate = ent.extractable_rate(estimate.hmin, sample_rate)

    n = samples_per_block * adc.bits
    params = _extractor_params(
        n, samples_per_block, adc.bits, estimate.hmin, security_log2, args.extractor_seed
    )
    buffer = io.BytesIO()
    t0 = time.perf_counter()
    report = ext.stream_extract(trace, adc.bits, params, buffer)
    elapsed = time.perf_counter() - t0
    out_bytes = buffer.getvalue()
    if args.out:
        _write_bytes(out_bytes, args.out)

    battery = None
    if report.emitted_bits >= 1 << 17:
        battery = rt.run_battery(ext.unpack_bits(out_bytes, report.emitted_bits))

    payload = {
        "profile": args.profile,
        "samples": config.sample_count,
        "sample_rate_hz": sample_rate,
        "hmin_bits": estimate.hmin,
        "quadrature_error_bits": estimate.quadrature_error,
        "extractable_rate_bps": rate,
        "extractor": report.to_json_dict(),
        "achieved_bits_per_second": report.emitted_bits / elapsed if elapsed > 0 else 0.0,
        "battery": battery.to_json_dict() if battery else None,
    }
    text = _json_text(payload)
    sys.stdout.write(text)
    if args.report:
        _write_text(text, args.report)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_detector_flags(parser) -> None:
    parser.add_argument("--profile", help="bundled parameter profile name (default gesi-paper)")
    parser.add_argument("--config", help="detector config JSON path (SI units)")
    parser.add_argument("--photocurrent", type=float, help="per-diode photocurrent in A")


def _add_out_format(parser, formats=("csv", "json"), default="csv") -> None:
    parser.add_argument("--format", choices=formats, default=default, help="output format")
    parser.add_argument("--out", help="output path (default: stdout)")


def _add_entropy_flags(parser) -> None:
    parser.add_argument("--sigma-q", dest="sigma_q", type=float, help="quantum-noise SD in V")
    parser.add_argument("--sigma-e", dest="sigma_e", type=float, help="classical-noise SD in V")
    parser.add_argument("--range", type=float, help="ADC full scale +/-R in V")
    parser.add_argument("--bits", type=int, help="ADC resolution in bits")
    parser.add_argument(
        "--convention",
        choices=[c.value for c in ent.BinConvention],
        default=ent.BinConvention.HALF_SPAN.value,
        help="entropy-model bin convention",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qrnglab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="noise budget table over a frequency grid")
    _add_detector_flags(p)
    p.add_argument("--fmin", type=float, default=1e3, help="grid start in Hz")
    p.add_argument("--fmax", type=float, default=1e7, help="grid stop in Hz")
    p.add_argument("--points-per-decade", type=int, default=50, help="grid density per decade")
    _add_out_format(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("gain", help="complex TIA gain at one frequency or over a grid")
    _add_detector_flags(p)
    p.add_argument("--freq", type=float, help="single evaluation frequency in Hz")
    p.add_argument("--fmin", type=float, default=1e3, help="grid start in Hz")
    p.add_argument("--fmax", type=float, default=1e7, help="grid stop in Hz")
    p.add_argument("--points-per-decade", type=int, default=50, help="grid density per decade")
    _add_out_format(p)
    p.set_defaults(func=_cmd_gain)

    p = sub.add_parser("qcnr", help="quantum-to-classical noise ratio in dB")
    _add_detector_flags(p)
    p.add_argument("--freq", type=float, default=1e5, help="evaluation frequency in Hz")
    _add_out_format(p, formats=("text", "json"), default="text")
    p.set_defaults(func=_cmd_qcnr)

    p = sub.add_parser("bandwidth", help="3-dB transimpedance bandwidth in Hz")
    _add_detector_flags(p)
    _add_out_format(p, formats=("text", "json"), default="text")
    p.set_defaults(func=_cmd_bandwidth)

    p = sub.add_parser("cmrr", help="common-mode rejection from splitter imbalance")
    p.add_argument("--split-a", dest="split_a", type=float, required=True, help="power fraction of port A")
    p.add_argument("--split-b", dest="split_b", type=float, required=True, help="power fraction of port B")
    p.add_argument("--mismatch", type=float, default=0.0, help="responsivity mismatch fraction")
    _add_out_format(p, formats=("text", "json"), default="text")
    p.set_defaults(func=_cmd_cmrr)

    p = sub.add_parser("sweep", help="rank feedback designs by QCNR under a bandwidth floor")
    _add_detector_flags(p)
    p.add_argument("--rf", required=True, help="comma list of feedback resistances in ohm")
    p.add_argument("--ctf", default="3e-13", help="comma list of total feedback capacitances in F")
    p.add_argument("--min-bandwidth", type=float, required=True, help="bandwidth floor in Hz")
    _add_out_format(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("hmin", help="average conditional min-entropy per sample")
    p.add_argument("--profile", help="profile supplying noise/adc sections")
    _add_entropy_flags(p)
    p.add_argument("--half-width-sigmas", type=float, default=10.0, help="integration half-width in sigma_e units")
    p.add_argument("--nodes", type=int, default=4001, help="Simpson node count (odd)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=_cmd_hmin)

    p = sub.add_parser("curve", help="entropy versus R/sigma_q ratio")
    p.add_argument("--profile", help="profile supplying a curve section")
    p.add_argument("--qcnr-db", dest="qcnr_db", type=float, help="quantum-to-classical ratio in dB")
    p.add_argument("--bits", type=int, help="ADC resolution in bits (default 8)")
    p.add_argument(
        "--convention",
        choices=[c.value for c in ent.BinConvention],
        default=ent.BinConvention.FULL_SPAN.value,
        help="entropy-model bin convention",
    )
    p.add_argument("--ratio-start", type=float, default=0.5, help="smallest ratio (dimensionless)")
    p.add_argument("--ratio-stop", type=float, default=8.0, help="largest ratio (dimensionless)")
    p.add_argument("--ratio-step", type=float, default=0.05, help="ratio grid step")
    _add_out_format(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("simulate", help="generate a quantized Gaussian noise trace")
    p.add_argument("--profile", help="profile supplying noise/adc/sample_rate")
    _add_entropy_flags(p)
    p.add_argument("--sample-rate", dest="sample_rate", type=float, help="sample rate in Hz")
    p.add_argument("--samples", type=int, default=1_000_000, help="number of samples")
    p.add_argument("--seed", help="64-bit generator seed as hex (default 0)")
    p.add_argument("--format", choices=("binary", "csv"), default="binary", help="trace file format")
    p.add_argument("--out", required=True, help="trace output path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("extract", help="Toeplitz-extract random bytes from a trace file")
    p.add_argument("--trace", required=True, help="input trace path (binary format)")
    p.add_argument("--samples-per-block", dest="samples_per_block", type=int, default=4096, help="samples hashed per block")
    p.add_argument("--security-log2", dest="security_log2", type=int, default=50, help="extractor eps = 2^-x")
    p.add_argument("--hmin", type=float, help="bits/sample override (default: computed from trace metadata)")
    p.add_argument("--seed", help="hex value expanded into the Toeplitz seed (default: platform entropy)")
    p.add_argument("--out", required=True, help="output path for extracted bytes ('-' for stdout)")
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("test", help="run the 6-test randomness battery on a bit file")
    p.add_argument("--in", dest="input", required=True, help="input path (raw bytes, LSB-first)")
    p.add_argument("--ascii", action="store_true", help="input is ASCII '0'/'1' lines")
    p.add_argument("--alpha", type=float, default=rt.DEFAULT_ALPHA, help="significance level")
    p.add_argument("--block-length", dest="block_length", type=int, default=128, help="block-frequency block size in bits")
    p.add_argument("--serial-length", dest="serial_length", type=int, help="serial pattern length in bits (default auto)")
    p.add_argument("--export-ascii", dest="export_ascii", help="also write bits as ASCII lines here")
    _add_out_format(p, formats=("table", "json"), default="table")
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("pipeline", help="simulate, estimate, extract, and battery-test end to end")
    p.add_argument("--profile", default="gesi-paper", help="bundled profile name")
    _add_entropy_flags(p)
    p.add_argument("--sample-rate", dest="sample_rate", type=float, help="sample rate in Hz")
    p.add_argument("--samples", type=int, default=200_000, help="number of simulated samples")
    p.add_argument("--trace-seed", dest="trace_seed", help="64-bit trace seed as hex (default 0)")
    p.add_argument("--extractor-seed", dest="extractor_seed", help="hex value expanded into the Toeplitz seed")
    p.add_argument("--samples-per-block", dest="samples_per_block", type=int, help="samples hashed per block")
    p.add_argument("--security-log2", dest="security_log2", type=int, help="extractor eps = 2^-x")
    p.add_argument("--out", help="output path for extracted bytes")
    p.add_argument("--report", help="also write the JSON report here")
    p.set_defaults(func=_cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except TraceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
