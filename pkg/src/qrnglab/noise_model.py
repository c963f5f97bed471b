"""Closed-form noise budget of a balanced homodyne detector front end.

Two photodiodes in series feed a transimpedance amplifier (TIA); the
difference photocurrent carries the vacuum-fluctuation shot noise that
serves as the quantum entropy source, while the photodiode shunt
resistance, dark current, feedback resistor, and amplifier input noise
set the classical (electronic) floor.  Every noise source is expressed
as an input-referred current density in A/sqrt(Hz) so the budget can be
compared term by term and converted to an output voltage density through
the complex TIA gain.

All functions are pure and accept either scalar frequencies or numpy
arrays; SI base units throughout (Hz, ohm, farad, ampere, volt, kelvin).
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np
from scipy.constants import Boltzmann as K_BOLTZMANN
from scipy.constants import elementary_charge as Q_ELECTRON

from .errors import BandwidthNotFoundError, ParameterError

# Cap reported for a perfectly balanced splitter, where the common-mode
# rejection ratio would otherwise be infinite.
CMRR_CAP_DB = 200.0

SPECTRUM_CSV_HEADER = (
    "freq_hz,i_pdt,i_pdd,i_rft,i_nc,i_nv,i_total,i_shot,u_out_v_rthz,s_dbm_hz"
)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


@dataclass(frozen=True)
class PhotodiodeModel:
    """Electrical model of one photodiode of the series pair.

    Defaults describe the germanium-silicon diode of the integrated
    detector; see :func:`ingaas_photodiode` for the discrete comparison
    part.
    """

    shunt_resistance: float = 2.47e6  # R_PD, ohm
    junction_capacitance: float = 40e-15  # C_PD, F
    dark_current: float = 4e-8  # I_PDD, A
    label: str = "GeSi"

    def __post_init__(self) -> None:
        _require(self.shunt_resistance > 0, "shunt_resistance must be > 0")
        _require(self.junction_capacitance > 0, "junction_capacitance must be > 0")
        _require(self.dark_current >= 0, "dark_current must be >= 0")


def gesi_photodiode(dark_current: float = 4e-8) -> PhotodiodeModel:
    """GeSi photodiode profile; ``dark_current`` selects the 4e-8/5e-8 A variant."""
    return PhotodiodeModel(dark_current=dark_current)


def ingaas_photodiode() -> PhotodiodeModel:
    """Discrete InGaAs photodiode used for comparison measurements.

    The 5 pA dark current is back-derived from the quoted noise density
    of 1.790e-15 A/sqrt(Hz) via i = sqrt(4 e I).
    """
    return PhotodiodeModel(
        shunt_resistance=1e11,
        junction_capacitance=0.8e-12,
        dark_current=5e-12,
        label="InGaAs",
    )


@dataclass(frozen=True)
class FrontEndModel:
    """TIA feedback network and amplifier noise parameters."""

    feedback_resistance: float = 510e3  # R_F, ohm
    feedback_capacitance: float = 0.0  # C_F, F (intentionally unstuffed)
    feedback_parasitic: float = 0.3e-12  # C_FP, F
    amp_input_capacitance: float = 1.4e-12  # C_IN, F
    input_parasitic: float = 6.62e-12  # C_INP, F
    gain_bandwidth: float = 410e6  # GBW, Hz
    voltage_noise_white: float = 4e-9  # V/sqrt(Hz)
    flicker_coefficient: float = 553.25e-9  # V; density = coeff/sqrt(f)
    current_noise: float = 2.5e-15  # A/sqrt(Hz)

    def __post_init__(self) -> None:
        _require(self.feedback_resistance > 0, "feedback_resistance must be > 0")
        _require(self.feedback_capacitance >= 0, "feedback_capacitance must be >= 0")
        _require(self.feedback_parasitic >= 0, "feedback_parasitic must be >= 0")
        _require(self.amp_input_capacitance > 0, "amp_input_capacitance must be > 0")
        _require(self.input_parasitic >= 0, "input_parasitic must be >= 0")
        _require(self.gain_bandwidth > 0, "gain_bandwidth must be > 0")
        _require(self.voltage_noise_white > 0, "voltage_noise_white must be > 0")
        _require(self.flicker_coefficient >= 0, "flicker_coefficient must be >= 0")
        _require(self.current_noise > 0, "current_noise must be > 0")

    @property
    def total_feedback_capacitance(self) -> float:
        """C_TF = C_F + C_FP."""
        return self.feedback_capacitance + self.feedback_parasitic


@dataclass(frozen=True)
class DetectorConfig:
    """Complete detector operating point.

    ``photocurrent`` is the per-diode photoelectron current of the series
    pair; ``load_resistance`` is the spectrum-analyzer input that the
    50-ohm output drives.
    """

    photodiode: PhotodiodeModel = field(default_factory=PhotodiodeModel)
    frontend: FrontEndModel = field(default_factory=FrontEndModel)
    temperature: float = 295.0  # K
    photocurrent: float = 1e-6  # A
    hpf_cutoff: float = 1.6e3  # Hz; 0 disables
    hpf_order: int = 1  # cascaded first-order sections
    second_stage_gain: float = 1.0  # dimensionless voltage gain
    load_resistance: float = 50.0  # ohm

    def __post_init__(self) -> None:
        _require(self.temperature > 0, "temperature must be > 0")
        _require(self.photocurrent >= 0, "photocurrent must be >= 0")
        _require(self.hpf_cutoff >= 0, "hpf_cutoff must be >= 0")
        _require(
            isinstance(self.hpf_order, int) and self.hpf_order >= 1,
            "hpf_order must be an integer >= 1",
        )
        _require(self.second_stage_gain >= 1, "second_stage_gain must be >= 1")
        _require(self.load_resistance > 0, "load_resistance must be > 0")

    @property
    def total_input_capacitance(self) -> float:
        """C_TIN = 2*C_PD + C_INP + C_IN (both diodes hang on the input node)."""
        return (
            2 * self.photodiode.junction_capacitance
            + self.frontend.input_parasitic
            + self.frontend.amp_input_capacitance
        )


@dataclass(frozen=True)
class SourceDensities:
    """Per-source input-referred current densities, A/sqrt(Hz)."""

    i_pdt: float | np.ndarray  # photodiode shunt-resistance thermal noise
    i_pdd: float | np.ndarray  # dark-current shot noise
    i_rft: float | np.ndarray  # feedback-resistor thermal noise
    i_nc: float | np.ndarray  # amplifier current noise
    i_nv: float | np.ndarray  # amplifier voltage noise, referred to input

    def total(self) -> float | np.ndarray:
        """Quadrature sum of the five classical sources."""
        return np.sqrt(
            self.i_pdt**2 + self.i_pdd**2 + self.i_nc**2 + self.i_rft**2 + self.i_nv**2
        )


def input_impedance(cfg: DetectorConfig, f):
    """Complex impedance of the input node: series diodes plus capacitances.

    Z_IN = 1 / (2/R_PD + 2*pi*i*f*C_TIN).
    """
    f = np.asarray(f, dtype=float)
    y = 2.0 / cfg.photodiode.shunt_resistance + 2j * np.pi * f * cfg.total_input_capacitance
    z = 1.0 / y
    return complex(z) if f.ndim == 0 else z


def feedback_impedance(cfg: DetectorConfig, f):
    """Complex impedance of the feedback network: Z_F = R_F || C_TF."""
    f = np.asarray(f, dtype=float)
    y = 1.0 / cfg.frontend.feedback_resistance + 2j * np.pi * f * cfg.frontend.total_feedback_capacitance
    z = 1.0 / y
    return complex(z) if f.ndim == 0 else z


def classical_source_densities(cfg: DetectorConfig, f) -> SourceDensities:
    """Evaluate all five classical noise current densities at frequency ``f``.

    The amplifier voltage noise couples through the admittance sum
    |1/Z_IN + 1/Z_F|, so it rises with frequency; all other terms are
    white.  At f = 0 a nonzero flicker coefficient makes the voltage-noise
    term infinite; the value is returned as ``inf`` rather than raised.
    """
    f = np.asarray(f, dtype=float)
    _require(bool(np.all(f >= 0)), "f must be >= 0")

    kt4 = 4.0 * K_BOLTZMANN * cfg.temperature
    i_pdt = math.sqrt(kt4 / (cfg.photodiode.shunt_resistance / 2.0))
    i_pdd = math.sqrt(2.0 * Q_ELECTRON * 2.0 * cfg.photodiode.dark_current)
    i_rft = math.sqrt(kt4 / cfg.frontend.feedback_resistance)
    i_nc = cfg.frontend.current_noise

    flicker = cfg.frontend.flicker_coefficient
    if flicker == 0.0:
        flicker_sq = np.zeros_like(f)
    else:
        with np.errstate(divide="ignore"):
            flicker_sq = flicker**2 / f
    u_nv = np.sqrt(cfg.frontend.voltage_noise_white**2 + flicker_sq)

    y_in = 2.0 / cfg.photodiode.shunt_resistance + 2j * np.pi * f * cfg.total_input_capacitance
    y_f = 1.0 / cfg.frontend.feedback_resistance + 2j * np.pi * f * cfg.frontend.total_feedback_capacitance
    i_nv = np.abs(y_in + y_f) * u_nv

    if f.ndim == 0:
        return SourceDensities(i_pdt, i_pdd, i_rft, i_nc, float(i_nv))
    ones = np.ones_like(f)
    return SourceDensities(i_pdt * ones, i_pdd * ones, i_rft * ones, i_nc * ones, i_nv)


def total_classical_density(cfg: DetectorConfig, f):
    """Quadrature total of the classical sources at ``f``, A/sqrt(Hz)."""
    return classical_source_densities(cfg, f).total()


def shot_noise_density(photocurrent: float) -> float:
    """Shot-noise current density of the series pair, sqrt(2e * 2*I_PD).

    Both diodes carry the photocurrent, so the pair contributes twice the
    single-diode spectral density.
    """
    _require(photocurrent >= 0, "photocurrent must be >= 0")
    return math.sqrt(2.0 * Q_ELECTRON * 2.0 * photocurrent)


def tia_gain(cfg: DetectorConfig, f):
    """Closed-loop transimpedance gain, V/A (complex).

    G(f) = -1 / (1/Z_F + (i*f/GBW) * (1/Z_F + 1/Z_IN)); the finite
    gain-bandwidth product of the amplifier adds the second denominator
    term, which sets the achievable bandwidth together with C_TF.
    At f = 0 the gain is exactly -R_F.
    """
    f = np.asarray(f, dtype=float)
    y_in = 2.0 / cfg.photodiode.shunt_resistance + 2j * np.pi * f * cfg.total_input_capacitance
    y_f = 1.0 / cfg.frontend.feedback_resistance + 2j * np.pi * f * cfg.frontend.total_feedback_capacitance
    g = -1.0 / (y_f + (1j * f / cfg.frontend.gain_bandwidth) * (y_f + y_in))
    return complex(g) if f.ndim == 0 else g


def tia_gain_expanded(cfg: DetectorConfig, f):
    """Fully expanded algebraic form of :func:`tia_gain`.

    Kept as an independent expression for cross-validation; it must agree
    with the compact admittance form to machine precision.
    """
    f = np.asarray(f, dtype=float)
    r_f = cfg.frontend.feedback_resistance
    r_pd = cfg.photodiode.shunt_resistance
    gbw = cfg.frontend.gain_bandwidth
    c_tf = cfg.frontend.total_feedback_capacitance
    c_tin = cfg.total_input_capacitance
    denom = (
        1.0
        + 1j * f / gbw
        + (1j * f * r_f / gbw) * (2.0 / r_pd)
        + 2j * np.pi * f * c_tf * r_f
        - (2.0 * np.pi * f**2 * r_f / gbw) * (c_tin + c_tf)
    )
    g = -r_f / denom
    return complex(g) if f.ndim == 0 else g


def hpf_response(cutoff: float, f, order: int = 1):
    """High-pass transfer function; ``cutoff = 0`` is identity.

    ``order`` cascades identical first-order sections (magnitude
    f/sqrt(f^2 + fc^2) per section); the deployed filter is first-order.
    """
    _require(cutoff >= 0, "cutoff must be >= 0")
    _require(isinstance(order, int) and order >= 1, "order must be an integer >= 1")
    f = np.asarray(f, dtype=float)
    _require(bool(np.all(f >= 0)), "f must be >= 0")
    if cutoff == 0.0:
        h = np.ones_like(f) * (1.0 + 0.0j)
    else:
        jf = 1j * f / cutoff
        h = (jf / (1.0 + jf)) ** order
    return complex(h) if f.ndim == 0 else h


def output_voltage_density(
    cfg: DetectorConfig,
    f,
    include_shot: bool = True,
    include_hpf: bool = True,
    include_second_stage: bool = True,
):
    """Noise voltage density at the detector output, V/sqrt(Hz).

    u(f) = i(f) * |G(f)|, optionally shaped by the high-pass filter and
    scaled by the second-stage voltage gain.  With ``include_shot`` the
    total current density adds the photocurrent shot noise in quadrature
    to the classical floor.
    """
    f = np.asarray(f, dtype=float)
    _require(bool(np.all(f > 0)), "f must be > 0")
    i_cl = total_classical_density(cfg, f)
    if include_shot:
        i_tot = np.sqrt(i_cl**2 + shot_noise_density(cfg.photocurrent) ** 2)
    else:
        i_tot = i_cl
    u = i_tot * np.abs(tia_gain(cfg, f))
    if include_hpf:
        u = u * np.abs(hpf_response(cfg.hpf_cutoff, f, cfg.hpf_order))
    if include_second_stage:
        u = u * cfg.second_stage_gain
    return float(u) if f.ndim == 0 else u


def density_to_dbm_per_hz(u, load: float = 50.0):
    """Convert a voltage noise density into dBm/Hz on a matched load.

    The 50-ohm output driving an equal analyzer input halves the voltage,
    hence the u/2 inside s = 10*log10(((u/2)^2 / load) / 1 mW).
    """
    _require(load > 0, "load must be > 0")
    u = np.asarray(u, dtype=float)
    _require(bool(np.all(u >= 0)), "u must be >= 0")
    with np.errstate(divide="ignore"):
        s = 10.0 * np.log10(((u / 2.0) ** 2 / load) / 1e-3)
    return float(s) if u.ndim == 0 else s


def power_in_rbw(s_dbm_per_hz, rbw: float):
    """Total power in a resolution bandwidth: s + 10*log10(rbw/Hz), dBm."""
    _require(rbw > 0, "rbw must be > 0")
    s = np.asarray(s_dbm_per_hz, dtype=float)
    p = s + 10.0 * math.log10(rbw)
    return float(p) if s.ndim == 0 else p


def qcnr(cfg: DetectorConfig, f):
    """Quantum-to-classical noise ratio at ``f``, in dB.

    20*log10(i_shot / i_classical); equals the power-spectral ratio.
    Zero photocurrent yields -inf.
    """
    f = np.asarray(f, dtype=float)
    _require(bool(np.all(f > 0)), "f must be > 0")
    i_shot = shot_noise_density(cfg.photocurrent)
    with np.errstate(divide="ignore"):
        r = 20.0 * np.log10(i_shot / total_classical_density(cfg, f))
    return float(r) if f.ndim == 0 else r


def bandwidth_3db(
    cfg: DetectorConfig,
    f_min: float = 1.0,
    f_max: float = 1e10,
    rel_tol: float = 1e-6,
) -> float:
    """Smallest frequency where |G(f)| falls to |G(0)|/sqrt(2).

    Brackets the first crossing on a log grid, then bisects to the
    requested relative tolerance.  Raises
    :class:`~qrnglab.errors.BandwidthNotFoundError` if there is no
    crossing inside [f_min, f_max].
    """
    _require(0 < f_min < f_max, "f_min/f_max must satisfy 0 < f_min < f_max")
    target = abs(tia_gain(cfg, 0.0)) / math.sqrt(2.0)

    grid = np.logspace(math.log10(f_min), math.log10(f_max), 400)
    above = np.abs(tia_gain(cfg, grid)) > target
    if above[0] and above.all():
        raise BandwidthNotFoundError(
            f"|G| never falls below |G(0)|/sqrt(2) in [{f_min:g}, {f_max:g}] Hz"
        )
    if not above[0]:
        # Already below target at f_min: the crossing lies to the left.
        raise BandwidthNotFoundError(
            f"|G| is below |G(0)|/sqrt(2) already at {f_min:g} Hz"
        )
    k = int(np.argmin(above))  # first False
    lo, hi = float(grid[k - 1]), float(grid[k])
    while (hi - lo) > rel_tol * hi:
        mid = math.sqrt(lo * hi)
        if abs(tia_gain(cfg, mid)) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cmrr_from_imbalance(
    split_a: float,
    split_b: float,
    responsivity_mismatch: float = 0.0,
    cap_db: float = CMRR_CAP_DB,
) -> float:
    """Common-mode rejection ratio implied by splitter/responsivity imbalance.

    P_a = split_a*(1 + mismatch/2) and P_b = split_b*(1 - mismatch/2);
    CMRR = 20*log10((P_a + P_b)/|P_a - P_b|).  The result depends only on
    the ratio of the splits, so common scaling cancels.  Exact balance
    returns ``cap_db`` instead of infinity.

    Hardware bound for reference: with the optimized symmetric 1x2
    splitter and no active balancing, measured detectors achieve
    > 40 dB (equivalent to better than 1% summed-power imbalance).
    That figure is documentation only; nothing here simulates it.
    """
    _require(split_a > 0, "split_a must be > 0")
    _require(split_b > 0, "split_b must be > 0")
    p_a = split_a * (1.0 + responsivity_mismatch / 2.0)
    p_b = split_b * (1.0 - responsivity_mismatch / 2.0)
    diff = abs(p_a - p_b)
    if diff == 0.0:
        return cap_db
    return min(20.0 * math.log10((p_a + p_b) / diff), cap_db)


def default_frequency_grid(
    f_min: float = 1e3, f_max: float = 1e7, points_per_decade: int = 50
) -> np.ndarray:
    """Log-spaced grid with a fixed point density per decade."""
    _require(0 < f_min < f_max, "frequency grid requires 0 < f_min < f_max")
    _require(points_per_decade >= 1, "points_per_decade must be >= 1")
    decades = math.log10(f_max / f_min)
    n = max(2, int(round(decades * points_per_decade)) + 1)
    return np.logspace(math.log10(f_min), math.log10(f_max), n)


@dataclass(frozen=True)
class NoiseSpectrum:
    """Tabulated noise budget over a frequency grid.

    ``i_total`` is the quadrature total of the five classical sources
    (exactly, by construction); ``u_out`` and ``s_dbm_hz`` describe the
    physically observed output (shot noise included when the photocurrent
    is nonzero, high-pass and second stage applied as configured).
    """

    frequencies: np.ndarray
    i_pdt: np.ndarray
    i_pdd: np.ndarray
    i_rft: np.ndarray
    i_nc: np.ndarray
    i_nv: np.ndarray
    i_total: np.ndarray
    i_shot: np.ndarray
    u_out: np.ndarray
    s_dbm_hz: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SPECTRUM_CSV_HEADER.split(","))
        for row in zip(
            self.frequencies,
            self.i_pdt,
            self.i_pdd,
            self.i_rft,
            self.i_nc,
            self.i_nv,
            self.i_total,
            self.i_shot,
            self.u_out,
            self.s_dbm_hz,
        ):
            writer.writerow([format(v, ".9e") for v in row])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            name: [float(v) for v in getattr(self, attr)]
            for name, attr in zip(
                SPECTRUM_CSV_HEADER.split(","),
                (
                    "frequencies",
                    "i_pdt",
                    "i_pdd",
                    "i_rft",
                    "i_nc",
                    "i_nv",
                    "i_total",
                    "i_shot",
                    "u_out",
                    "s_dbm_hz",
                ),
            )
        }


def noise_spectrum(cfg: DetectorConfig, frequencies) -> NoiseSpectrum:
    """Evaluate the full budget over ``frequencies`` (strictly increasing, > 0)."""
    f = np.asarray(frequencies, dtype=float)
    _require(f.ndim == 1 and f.size >= 1, "frequencies must be a 1-D list")
    _require(bool(np.all(f > 0)), "frequencies must be positive")
    _require(bool(np.all(np.diff(f) > 0)), "frequencies must be strictly increasing")

    src = classical_source_densities(cfg, f)
    i_total = src.total()
    i_shot = shot_noise_density(cfg.photocurrent) * np.ones_like(f)
    u_out = output_voltage_density(
        cfg, f, include_shot=cfg.photocurrent > 0, include_hpf=True, include_second_stage=True
    )
    s = density_to_dbm_per_hz(u_out, cfg.load_resistance)
    return NoiseSpectrum(
        frequencies=f,
        i_pdt=src.i_pdt,
        i_pdd=src.i_pdd,
        i_rft=src.i_rft,
        i_nc=src.i_nc,
        i_nv=src.i_nv,
        i_total=i_total,
        i_shot=i_shot,
        u_out=u_out,
        s_dbm_hz=s,
    )


@dataclass(frozen=True)
class FeedbackCandidate:
    """One evaluated feedback-network design point."""

    feedback_resistance: float  # ohm
    total_feedback_capacitance: float  # F
    bandwidth_hz: float
    qcnr_db: float  # at 100 kHz


def sweep_feedback(
    cfg: DetectorConfig,
    feedback_resistances,
    feedback_capacitances,
    min_bandwidth: float,
) -> list[FeedbackCandidate]:
    """Rank feedback designs: keep those meeting ``min_bandwidth``, best QCNR first.

    QCNR is scored at 100 kHz, inside the flat region.  An empty feasible
    set returns an empty list.
    """
    rfs = [float(r) for r in np.atleast_1d(feedback_resistances)]
    ctfs = [float(c) for c in np.atleast_1d(feedback_capacitances)]
    _require(len(rfs) > 0 and len(ctfs) > 0, "sweep ranges must be non-empty")
    _require(min_bandwidth >= 0, "min_bandwidth must be >= 0")

    candidates = []
    for r_f in rfs:
        for c_tf in ctfs:
            frontend = dataclasses.replace(
                cfg.frontend,
                feedback_resistance=r_f,
                feedback_capacitance=0.0,
                feedback_parasitic=c_tf,
            )
            trial = dataclasses.replace(cfg, frontend=frontend)
            try:
                bw = bandwidth_3db(trial)
            except BandwidthNotFoundError:
                continue
            if bw < min_bandwidth:
                continue
            candidates.append(
                FeedbackCandidate(
                    feedback_resistance=r_f,
                    total_feedback_capacitance=c_tf,
                    bandwidth_hz=bw,
                    qcnr_db=qcnr(trial, 1e5),
                )
            )
    candidates.sort(key=lambda c: c.qcnr_db, reverse=True)
    return candidates


# ---------------------------------------------------------------------------
# Detector config (de)serialization: JSON with SI-unit fields named exactly
# after the dataclass fields.
# ---------------------------------------------------------------------------


def detector_config_to_dict(cfg: DetectorConfig) -> dict:
    return asdict(cfg)


def _build_dataclass(cls, data: dict, context: str):
    _require(isinstance(data, dict), f"{context} must be a JSON object")
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    _require(not unknown, f"unknown field(s) in {context}: {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ParameterError(f"bad {context}: {exc}") from exc


def detector_config_from_dict(data: dict) -> DetectorConfig:
    """Build a validated config from plain dicts (e.g. parsed JSON)."""
    _require(isinstance(data, dict), "detector config must be a JSON object")
    payload = dict(data)
    pd_data = payload.pop("photodiode", None)
    fe_data = payload.pop("frontend", None)
    pd = _build_dataclass(PhotodiodeModel, pd_data, "photodiode") if pd_data is not None else PhotodiodeModel()
    fe = _build_dataclass(FrontEndModel, fe_data, "frontend") if fe_data is not None else FrontEndModel()
    known = {f.name for f in fields(DetectorConfig)} - {"photodiode", "frontend"}
    unknown = set(payload) - known
    _require(not unknown, f"unknown field(s) in detector config: {sorted(unknown)}")
    try:
        return DetectorConfig(photodiode=pd, frontend=fe, **payload)
    except TypeError as exc:
        raise ParameterError(f"bad detector config: {exc}") from exc


def load_detector_config(path) -> DetectorConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"detector config {path} is not valid JSON: {exc}") from exc
    return detector_config_from_dict(data)


def save_detector_config(cfg: DetectorConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(detector_config_to_dict(cfg), fh, indent=2)
        fh.write("\n")
