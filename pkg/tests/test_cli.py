import csv
import io
import json

import numpy as np
import pytest

from mzsim.cli import CliRequest, config_argv, main, parse_args
from mzsim.experiments import ExperimentConfig, default_alphas, default_phis, sweep
from mzsim.output import emit_sweep_csv, emit_sweep_json, emit_visibility_table


def qd_result(**overrides):
    base = dict(variant="quantum_delayed", alphas=default_alphas())
    base.update(overrides)
    return sweep(ExperimentConfig(**base))


class TestParseArgs:
    def test_defaults(self):
        request = parse_args(["run", "--variant", "closed"])
        assert isinstance(request, CliRequest)
        cfg = request.config
        assert cfg.variant == "closed"
        assert cfg.mode == "ideal_gate"
        assert cfg.phis == default_phis()
        assert cfg.alphas == ()
        assert cfg.noise_p == 0.0
        assert cfg.purity == 1.0
        assert request.fmt == "csv"
        assert request.out is None

    def test_quantum_delayed_alpha_grid(self):
        request = parse_args(
            ["run", "--variant", "quantum-delayed",
             "--alphas", "0,0.3927,0.7854,1.1781,1.5708"]
        )
        assert request.config.alphas == (0.0, 0.3927, 0.7854, 1.1781, 1.5708)

    def test_quantum_delayed_defaults_to_five_alphas(self):
        request = parse_args(["run", "--variant", "quantum-delayed"])
        assert request.config.alphas == default_alphas()

    def test_degrees_flag_converts_alphas(self):
        request = parse_args(
            ["run", "--variant", "quantum-delayed", "--alphas", "0,45,90", "--degrees"]
        )
        assert request.config.alphas == pytest.approx((0.0, np.pi / 4.0, np.pi / 2.0))

    def test_pulse_mode_and_physics_flags(self):
        request = parse_args(
            ["run", "--variant", "closed", "--mode", "pulse", "--phi-steps", "11",
             "--noise-p", "0.03", "--purity", "0.8", "--seed", "7", "--shots", "123"]
        )
        cfg = request.config
        assert cfg.mode == "pulse_sequence"
        assert len(cfg.phis) == 11
        assert cfg.noise_p == 0.03
        assert cfg.purity == 0.8
        assert cfg.rng_seed == 7
        assert cfg.n_shots == 123

    @pytest.mark.parametrize(
        "argv",
        [
            ["run", "--variant", "closed", "--noise-p", "1.5"],
            ["run", "--variant", "closed", "--purity", "0"],
            ["run", "--variant", "closed", "--phi-steps", "0"],
            ["run", "--variant", "closed", "--shots", "0"],
            ["run", "--variant", "closed", "--alphas", "0.1"],
            ["run", "--variant", "quantum-delayed", "--alphas", "0.1,zebra"],
            ["run", "--variant", "ring"],
            ["run"],
        ],
    )
    def test_usage_errors_exit_with_code_2(self, argv, capsys):
        with pytest.raises(SystemExit) as excinfo:
            parse_args(argv)
        assert excinfo.value.code == 2

    def test_round_trip_through_canonical_flags(self):
        original = parse_args(
            ["run", "--variant", "quantum-delayed", "--alphas", "0,0.3927,1.5708",
             "--phi-steps", "13", "--noise-p", "0.05", "--purity", "0.9",
             "--seed", "42", "--shots", "777", "--mode", "pulse"]
        ).config
        echoed = parse_args(config_argv(original)).config
        assert echoed == original


class TestCsvEmission:
    def test_grid_dimensions_and_parseability(self):
        result = qd_result()
        buffer = io.StringIO()
        count = emit_sweep_csv(result, buffer)
        text = buffer.getvalue()
        assert count == len(text.encode("utf-8"))
        rows = list(csv.reader(io.StringIO(text)))
        assert len(rows) == 1 + 5 * 21
        assert all(len(row) == 11 for row in rows)

    def test_single_qubit_rows_leave_alpha_and_lines_empty(self):
        result = sweep(ExperimentConfig(variant="closed"))
        buffer = io.StringIO()
        emit_sweep_csv(result, buffer)
        rows = list(csv.reader(io.StringIO(buffer.getvalue())))
        assert len(rows) == 22
        for row in rows[1:]:
            assert row[2] == ""          # alpha
            assert row[7:] == ["", "", "", ""]  # line amplitudes

    def test_significant_digits(self):
        result = sweep(ExperimentConfig(variant="closed", phis=(np.pi / 3.0,)))
        buffer = io.StringIO()
        emit_sweep_csv(result, buffer)
        row = buffer.getvalue().splitlines()[1].split(",")
        assert row[3] == format(np.pi / 3.0, ".12g")
        assert row[4] == format(result.points[0].s0, ".12g")

    def test_identical_runs_are_byte_identical(self):
        cfg = ExperimentConfig(variant="wheeler", rng_seed=99, n_shots=4000)
        first, second = io.StringIO(), io.StringIO()
        emit_sweep_csv(sweep(cfg), first)
        emit_sweep_csv(sweep(cfg), second)
        assert first.getvalue() == second.getvalue()


class TestVisibilityTable:
    def test_quantum_delayed_rows(self):
        buffer = io.StringIO()
        emit_visibility_table(qd_result(), buffer)
        rows = list(csv.reader(io.StringIO(buffer.getvalue())))[1:]
        assert len(rows) == 5
        first, mid, last = rows[0], rows[2], rows[4]
        assert float(first[1]) == pytest.approx(0.0, abs=1e-12)
        assert float(first[2]) == pytest.approx(0.0, abs=1e-12)
        assert float(mid[1]) == pytest.approx(0.5, abs=1e-9)
        assert float(mid[2]) == pytest.approx(0.5, abs=1e-12)
        assert float(last[1]) == pytest.approx(1.0, abs=1e-9)
        assert float(last[2]) == pytest.approx(1.0, abs=1e-12)

    def test_closed_variant_reference_is_full_visibility(self):
        buffer = io.StringIO()
        emit_visibility_table(sweep(ExperimentConfig(variant="closed")), buffer)
        row = buffer.getvalue().splitlines()[1].split(",")
        assert row[0] == ""
        assert float(row[1]) == pytest.approx(1.0, abs=1e-12)
        assert float(row[2]) == pytest.approx(1.0, abs=1e-12)

    def test_wheeler_is_rejected(self):
        result = sweep(ExperimentConfig(variant="wheeler", n_shots=100))
        with pytest.raises(ValueError, match="wheeler"):
            emit_visibility_table(result, io.StringIO())


class TestJsonEmission:
    def test_payload_shape(self):
        result = qd_result()
        buffer = io.StringIO()
        count = emit_sweep_json(result, buffer, argv=config_argv(result.config))
        text = buffer.getvalue()
        assert count == len(text.encode("utf-8"))
        payload = json.loads(text)
        assert payload["metadata"]["tool"] == "mzsim"
        assert payload["metadata"]["config"]["variant"] == "quantum_delayed"
        assert len(payload["points"]) == 105
        # alpha = 0: the particle branch dephases to equal populations
        assert payload["points"][0]["line_t_low"] == pytest.approx(0.0, abs=1e-12)
        assert payload["points"][0]["line_reference"] == pytest.approx(0.5)
        # alpha = pi/2, phi = 0: single interfering line at full amplitude
        last_group_first = payload["points"][4 * 21]
        assert last_group_first["line_t_high"] == pytest.approx(0.5, abs=1e-12)
        assert payload["max_abs_error_vs_theory"] <= 1e-10

    def test_metadata_argv_reproduces_the_config(self):
        result = qd_result(noise_p=0.03)
        buffer = io.StringIO()
        emit_sweep_json(result, buffer, argv=config_argv(result.config))
        payload = json.loads(buffer.getvalue())
        assert parse_args(payload["metadata"]["argv"]).config == result.config


class TestMain:
    def test_run_writes_csv_file(self, tmp_path):
        out = tmp_path / "closed.csv"
        code = main(["run", "--variant", "closed", "--out", str(out)])
        assert code == 0
        rows = out.read_text().splitlines()
        assert len(rows) == 22
        assert rows[0].startswith("variant,mode,alpha,phi,s0")

    def test_run_writes_json_to_stdout(self, capsys):
        code = main(["run", "--variant", "open", "--format", "json", "--phi-steps", "5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["points"]) == 5

    def test_identical_seeded_runs_are_byte_identical(self, tmp_path):
        args = ["run", "--variant", "wheeler", "--seed", "4", "--shots", "2000"]
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_unwritable_output_exits_1(self, tmp_path, capsys):
        out = tmp_path / "missing" / "deep" / "file.csv"
        code = main(["run", "--variant", "open", "--out", str(out)])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_report_writes_tables_and_figures(self, tmp_path, capsys):
        out_dir = tmp_path / "report"
        code = main(
            ["report", "--variant", "quantum-delayed", "--phi-steps", "9",
             "--alphas", "0,0.7854,1.5708", "--out-dir", str(out_dir)]
        )
        assert code == 0
        names = sorted(p.name for p in out_dir.iterdir())
        assert names == ["intensity.png", "spectra.png", "sweep.csv",
                         "visibility.csv", "visibility.png"]
        assert all((out_dir / n).stat().st_size > 0 for n in names)

    def test_wheeler_report_skips_visibility(self, tmp_path):
        out_dir = tmp_path / "wheeler"
        code = main(
            ["report", "--variant", "wheeler", "--phi-steps", "5", "--shots", "200",
             "--out-dir", str(out_dir)]
        )
        assert code == 0
        names = sorted(p.name for p in out_dir.iterdir())
        assert names == ["intensity.png", "sweep.csv"]
