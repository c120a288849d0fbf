"""Sweep generation and delimited text output."""

import pytest

from zenosim.config import parse_config
from zenosim.curves import (
    CURVE_HEADER,
    MC_HEADER,
    NOISE_HEADER,
    format_number,
    mc_to_csv,
    noise_curve,
    noise_to_csv,
    outcome_row,
    rows_to_csv,
    sweep,
)
from zenosim.datasets import load as load_dataset
from zenosim.engine import noise_run, run_exact, run_monte_carlo
from zenosim.models import LossyModelParams, lossy_closed_form


def _lossless(n_text="n_cycles = 2"):
    return parse_config(n_text)


class TestHeaders:
    def test_exact_column_names(self):
        assert CURVE_HEADER == "N,p_qi,p_abs,p_loss,p_wrong,eta,eta_adjusted"
        assert MC_HEADER == CURVE_HEADER + ",p_qi_err,p_abs_err,p_loss_err,p_wrong_err"
        assert NOISE_HEADER == "N,p_wrong"


class TestFormatNumber:
    @pytest.mark.parametrize("value,text", [
        (0.25, "0.25"),
        (1.0, "1"),
        (0.0, "0"),
        (0.1234567891234, "0.123456789"),
        (0.944912702183, "0.944912702"),
    ])
    def test_nine_significant_digits(self, value, text):
        assert format_number(value) == text

    def test_round_trips_to_curve_precision(self):
        for x in (0.3236500597616562, 1.5e-33, 0.9999999999, 123.456789123):
            assert float(format_number(x)) == pytest.approx(x, rel=1e-8)


class TestSweep:
    def test_lossless_eta_column(self):
        rows = sweep(_lossless(), 1, 3)
        assert [r.n for r in rows] == [1, 2, 3]
        etas = [r.eta for r in rows]
        assert etas[0] == pytest.approx(0.0, abs=1e-12)
        assert etas[1] == pytest.approx(0.25, abs=1e-12)
        assert etas[2] == pytest.approx(0.421875, abs=1e-12)

    def test_each_point_repaces_the_rotation_step(self):
        # the base config says N=2, the N=8 row must still use dtheta=pi/16
        row = sweep(_lossless(), 8, 8)[0]
        direct = run_exact(parse_config("n_cycles = 8"))
        assert row.p_qi == direct.p_qi
        assert row.eta == direct.eta

    def test_single_point_equals_run_exact(self):
        config = parse_config("n_cycles = 9\nt_empty = 0.93\nt_rec = 0.9")
        row = sweep(config, 9, 9)[0]
        out = run_exact(config)
        assert (row.p_qi, row.p_abs, row.p_loss, row.p_wrong) == \
            (out.p_qi, out.p_abs, out.p_loss, out.p_wrong)

    def test_rejects_bad_ranges(self):
        with pytest.raises(ValueError):
            sweep(_lossless(), 0, 5)
        with pytest.raises(ValueError):
            sweep(_lossless(), 6, 5)

    def test_squares_system_peak_matches_closed_form(self):
        config = load_dataset("squares")
        etas = [r.eta for r in sweep(config, 1, 200)]
        model = [lossy_closed_form(LossyModelParams(n, 0.951, 1.0, 0.962)).eta
                 for n in range(1, 201)]
        peak = max(range(200), key=lambda i: etas[i])
        assert peak == max(range(200), key=lambda i: model[i])
        assert 0 < peak < 199


class TestCsv:
    def test_lossless_two_cycle_bytes(self):
        text = rows_to_csv([outcome_row(2, run_exact(_lossless()))])
        assert text == CURVE_HEADER + "\n2,0.25,0.75,0,0,0.25,0.25\n"

    def test_newline_discipline(self):
        text = rows_to_csv(sweep(_lossless(), 1, 4))
        assert text.endswith("\n")
        assert "\r" not in text
        assert len(text.splitlines()) == 5

    def test_byte_stable_across_recomputation(self):
        config = parse_config("n_cycles = 6\nt_empty = 0.9\ncrosstalk = 0.004")
        assert rows_to_csv(sweep(config, 1, 30)) == rows_to_csv(sweep(config, 1, 30))

    def test_monte_carlo_columns(self):
        config = parse_config("n_cycles = 3\ntrials = 2000\nseed = 5")
        text = mc_to_csv(3, run_monte_carlo(config))
        lines = text.splitlines()
        assert lines[0] == MC_HEADER
        assert len(lines) == 2
        assert len(lines[1].split(",")) == 11

    def test_monte_carlo_serializer_requires_errors(self):
        with pytest.raises(ValueError):
            mc_to_csv(2, run_exact(_lossless()))


class TestNoiseCurve:
    def test_object_setting_is_ignored(self):
        # opaque in the config; the noise curve must still probe empty runs
        config = parse_config("n_cycles = 10\ncrosstalk = 0.01")
        empty = parse_config("n_cycles = 10\ncrosstalk = 0.01\nobject = absent")
        points = noise_curve(config, 10, 10)
        assert points == [(10, noise_run(empty))]

    def test_serialization(self):
        config = parse_config("n_cycles = 5\ncrosstalk = 0.01\nobject = absent")
        text = noise_to_csv(noise_curve(config, 2, 4))
        lines = text.splitlines()
        assert lines[0] == NOISE_HEADER
        assert [int(line.split(",")[0]) for line in lines[1:]] == [2, 3, 4]
