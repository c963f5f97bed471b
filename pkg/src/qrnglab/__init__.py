"""Vacuum-noise QRNG signal chain: detector noise budget, min-entropy, extraction.

The package follows the generator chain end to end: ``noise_model``
describes the balanced homodyne detector analog front end,
``entropy_estimator`` turns its Gaussian noise statistics into bits per
sample, ``trace_sim`` synthesizes quantized acquisitions, ``extractor``
compresses them through a seeded Toeplitz hash, and ``randtest`` screens
the output.  ``qrnglab pipeline`` on the bundled ``gesi-paper`` profile
reproduces the headline operating point: about 9 dB quantum-to-classical
noise ratio at 1 uA, 1.2 MHz detector bandwidth, 5.117 extractable bits
per 8-bit sample, and just over 1 Mbit/s at a 200 kHz sample rate.
"""

from .entropy_estimator import (
    AdcModel,
    BinConvention,
    EntropyEstimate,
    GaussianNoiseModel,
    average_min_entropy,
    conditional_pmax,
    extractable_rate,
    hmin_curve,
    sigma_from_qcnr,
)
from .errors import (
    BandwidthNotFoundError,
    BlockTooSmallError,
    ComputationError,
    EntropySourceError,
    InsufficientBitsError,
    ParameterError,
    QrnglabError,
    TraceFormatError,
)
from .extractor import (
    ExtractionReport,
    ExtractorParams,
    extract_block,
    generate_seed,
    output_length,
    stream_extract,
)
from .noise_model import (
    DetectorConfig,
    FeedbackCandidate,
    FrontEndModel,
    NoiseSpectrum,
    PhotodiodeModel,
    SourceDensities,
    bandwidth_3db,
    classical_source_densities,
    cmrr_from_imbalance,
    density_to_dbm_per_hz,
    feedback_impedance,
    gesi_photodiode,
    hpf_response,
    ingaas_photodiode,
    input_impedance,
    noise_spectrum,
    output_voltage_density,
    power_in_rbw,
    qcnr,
    shot_noise_density,
    sweep_feedback,
    tia_gain,
    total_classical_density,
)
from .randtest import (
    BatteryConfig,
    TestReport,
    TestResult,
    block_frequency,
    cumulative_sums,
    export_ascii_bits,
    import_ascii_bits,
    longest_run_of_ones,
    monobit,
    run_battery,
    runs,
    serial,
)
from .trace_sim import (
    SampleTrace,
    TraceConfig,
    dequantize,
    generate_gaussian_trace,
    load_trace,
    quantize,
    save_trace,
)

__version__ = "0.1.0"
