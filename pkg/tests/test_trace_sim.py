import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import ndtr
from scipy.stats import chi2

import qrnglab.trace_sim as ts
from qrnglab.entropy_estimator import AdcModel, BinConvention, GaussianNoiseModel
from qrnglab.errors import ParameterError, TraceFormatError

PAPER_MODEL = GaussianNoiseModel(sigma_q=0.2685, sigma_e=0.028)
PAPER_ADC = AdcModel(range=5.0, bits=8, bin_convention=BinConvention.HALF_SPAN)


def paper_config(samples=100_000, seed=42):
    return ts.TraceConfig(
        model=PAPER_MODEL, adc=PAPER_ADC, sample_rate=200e3, sample_count=samples, rng_seed=seed
    )


class TestQuantize:
    def test_full_scale_clamps(self):
        assert ts.quantize(np.array([5.0]), PAPER_ADC)[0] == 255
        assert ts.quantize(np.array([-5.0]), PAPER_ADC)[0] == 0
        assert ts.quantize(np.array([99.0]), PAPER_ADC)[0] == 255

    def test_zero_maps_to_code_128(self):
        assert ts.quantize(np.array([0.0]), PAPER_ADC)[0] == 128

    def test_code_width_is_full_span_regardless_of_convention(self):
        full = AdcModel(range=5.0, bits=8, bin_convention=BinConvention.FULL_SPAN)
        assert ts.code_width(PAPER_ADC) == ts.code_width(full) == pytest.approx(10.0 / 256)
        v = np.linspace(-5, 5, 1001)
        assert np.array_equal(ts.quantize(v, PAPER_ADC), ts.quantize(v, full))

    def test_nonfinite_rejected(self):
        with pytest.raises(ParameterError):
            ts.quantize(np.array([math.nan]), PAPER_ADC)

    @given(st.lists(st.floats(-20, 20), min_size=2, max_size=50))
    def test_monotone(self, values):
        v = np.sort(np.asarray(values))
        codes = ts.quantize(v, PAPER_ADC)
        assert np.all(np.diff(codes.astype(int)) >= 0)

    def test_dequantize_centers(self):
        v = np.array([-4.9, -0.02, 0.0, 1.2345, 4.9])
        codes = ts.quantize(v, PAPER_ADC)
        back = ts.dequantize(codes, PAPER_ADC)
        assert np.all(np.abs(back - v) <= ts.code_width(PAPER_ADC) / 2 + 1e-12)

    def test_sixteen_bit_dtype(self):
        adc = AdcModel(range=1.0, bits=12)
        codes = ts.quantize(np.array([0.0]), adc)
        assert codes.dtype == np.uint16
        assert codes[0] == 2048


class TestGenerate:
    def test_sample_sd_matches_model(self):
        trace = ts.generate_gaussian_trace(paper_config(samples=1_000_000))
        sd = float(np.std(ts.dequantize(trace.codes, PAPER_ADC)))
        assert sd == pytest.approx(0.27, rel=0.01)

    def test_degenerate_noise_pins_center_code(self):
        config = ts.TraceConfig(
            model=GaussianNoiseModel(sigma_q=1e-30, sigma_e=0.0),
            adc=PAPER_ADC,
            sample_count=1000,
            rng_seed=1,
        )
        trace = ts.generate_gaussian_trace(config)
        assert np.all(trace.codes == 128)

    def test_deterministic_for_fixed_seed(self):
        a = ts.generate_gaussian_trace(paper_config(seed=7))
        b = ts.generate_gaussian_trace(paper_config(seed=7))
        c = ts.generate_gaussian_trace(paper_config(seed=8))
        assert np.array_equal(a.codes, b.codes)
        assert not np.array_equal(a.codes, c.codes)

    def test_histogram_chi_square_against_gaussian_bins(self):
        config = paper_config(samples=1_000_000, seed=2024)
        trace = ts.generate_gaussian_trace(config)
        counts = np.bincount(trace.codes, minlength=256).astype(float)

        # Expected bin masses from the Gaussian CDF over quantizer bins,
        # edge bins absorbing the clipped tails.
        sigma_m = PAPER_MODEL.sigma_m
        edges = -5.0 + ts.code_width(PAPER_ADC) * np.arange(257)
        edges[0], edges[-1] = -np.inf, np.inf
        masses = ndtr(edges[1:] / sigma_m) - ndtr(edges[:-1] / sigma_m)
        expected = masses * config.sample_count

        keep = expected >= 5.0
        observed = np.concatenate([counts[keep], [counts[~keep].sum()]])
        predicted = np.concatenate([expected[keep], [expected[~keep].sum()]])
        stat = float(np.sum((observed - predicted) ** 2 / predicted))
        p = float(chi2.sf(stat, df=len(predicted) - 1))
        assert p > 0.001

    def test_no_clipping_at_paper_operating_point(self):
        trace = ts.generate_gaussian_trace(paper_config(samples=1_000_000, seed=3))
        clipped = np.count_nonzero((trace.codes == 0) | (trace.codes == 255))
        assert clipped == 0


class TestTraceFile:
    def test_round_trip_bit_exact(self, tmp_path):
        trace = ts.generate_gaussian_trace(paper_config(samples=5000))
        path = tmp_path / "t.qtr"
        ts.save_trace(trace, path)
        loaded = ts.load_trace(path)
        assert np.array_equal(loaded.codes, trace.codes)
        assert loaded.config == trace.config
        assert loaded.created_at == trace.created_at
        assert loaded.generator == trace.generator

    def test_sixteen_bit_round_trip(self, tmp_path):
        adc = AdcModel(range=2.0, bits=12)
        config = ts.TraceConfig(
            model=GaussianNoiseModel(0.2, 0.02), adc=adc, sample_count=2000, rng_seed=5
        )
        trace = ts.generate_gaussian_trace(config)
        path = tmp_path / "t12.qtr"
        ts.save_trace(trace, path)
        loaded = ts.load_trace(path)
        assert loaded.codes.dtype == np.uint16
        assert np.array_equal(loaded.codes, trace.codes)

    def test_truncated_payload_reports_lengths(self, tmp_path):
        trace = ts.generate_gaussian_trace(paper_config(samples=1000))
        path = tmp_path / "t.qtr"
        ts.save_trace(trace, path)
        blob = path.read_bytes()
        path.write_bytes(blob[:-100])
        with pytest.raises(TraceFormatError, match="expected 1000 bytes"):
            ts.load_trace(path)

    def test_bad_magic_offset_zero(self, tmp_path):
        trace = ts.generate_gaussian_trace(paper_config(samples=10))
        path = tmp_path / "t.qtr"
        ts.save_trace(trace, path)
        blob = bytearray(path.read_bytes())
        blob[0] = 0x58
        path.write_bytes(bytes(blob))
        with pytest.raises(TraceFormatError, match="offset 0"):
            ts.load_trace(path)

    def test_short_header(self, tmp_path):
        path = tmp_path / "t.qtr"
        path.write_bytes(b"QRNG")
        with pytest.raises(TraceFormatError, match="header"):
            ts.load_trace(path)

    def test_garbled_metadata(self, tmp_path):
        trace = ts.generate_gaussian_trace(paper_config(samples=10))
        path = tmp_path / "t.qtr"
        ts.save_trace(trace, path)
        blob = bytearray(path.read_bytes())
        blob[16] = ord("X")  # corrupt the first metadata byte
        path.write_bytes(bytes(blob))
        with pytest.raises(TraceFormatError, match="offset 16"):
            ts.load_trace(path)

    def test_out_of_range_code_reports_offset(self, tmp_path):
        adc = AdcModel(range=1.0, bits=4)
        config = ts.TraceConfig(
            model=GaussianNoiseModel(0.2, 0.0), adc=adc, sample_count=100, rng_seed=9
        )
        trace = ts.generate_gaussian_trace(config)
        path = tmp_path / "t4.qtr"
        ts.save_trace(trace, path)
        blob = bytearray(path.read_bytes())
        payload_start = len(blob) - 100
        blob[payload_start + 37] = 200  # 4-bit ADC tops out at 15
        path.write_bytes(bytes(blob))
        with pytest.raises(TraceFormatError, match=rf"offset {payload_start + 37}"):
            ts.load_trace(path)

    def test_csv_round_trip(self, tmp_path):
        trace = ts.generate_gaussian_trace(paper_config(samples=500))
        path = tmp_path / "t.csv"
        ts.export_trace_csv(trace, path)
        loaded = ts.import_trace_csv(path, trace.config)
        assert np.array_equal(loaded.codes, trace.codes)

    def test_csv_header_required(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("not,a,trace\n")
        with pytest.raises(TraceFormatError, match="header"):
            ts.import_trace_csv(path, paper_config(samples=1))


class TestTable1Fixture:
    def test_sigma_q_scales_with_sqrt_photocurrent(self):
        table = ts.load_table1_fixture()
        for row in table["rows"]:
            sq = row["sigma_q"]
            for lo, hi in zip(sq, sq[1:]):
                # x10 photocurrent steps: expect sqrt(10) growth within 15%
                assert hi / lo == pytest.approx(math.sqrt(10), rel=0.15)

    def test_sigma_q_scales_with_magnification(self):
        table = ts.load_table1_fixture()
        rows = table["rows"]
        for col in range(len(table["photocurrents"])):
            for a, b in zip(rows, rows[1:]):
                gain_ratio = b["magnification"] / a["magnification"]
                assert b["sigma_q"][col] / a["sigma_q"][col] == pytest.approx(
                    gain_ratio, rel=0.15
                )

    def test_layout(self):
        table = ts.load_table1_fixture()
        assert len(table["rows"]) == 4
        assert len(table["photocurrents"]) == 3
        assert all(len(r["sigma_q"]) == 3 for r in table["rows"])


class TestValidation:
    def test_trace_config(self):
        with pytest.raises(ParameterError):
            ts.TraceConfig(model=PAPER_MODEL, adc=PAPER_ADC, sample_count=0)
        with pytest.raises(ParameterError):
            ts.TraceConfig(model=PAPER_MODEL, adc=PAPER_ADC, sample_count=10, rng_seed=-1)
        with pytest.raises(ParameterError):
            ts.TraceConfig(model=PAPER_MODEL, adc=PAPER_ADC, sample_count=10, sample_rate=0.0)

    def test_sample_trace_checks_codes(self):
        config = paper_config(samples=4)
        with pytest.raises(ParameterError):
            ts.SampleTrace(codes=np.array([0, 1, 2]), config=config)
        with pytest.raises(ParameterError):
            ts.SampleTrace(codes=np.array([0, 1, 2, 999]), config=config)
