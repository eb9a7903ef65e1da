import json
import math

import numpy as np
import pytest

from islocc.amplitudes import BOSON, FERMION
from islocc.cli import load_config_file, main
from islocc.entanglement import binary_entropy
from islocc.sweeps import (BELL_REGION_FIELDS, CSV_FIELDS, ConfigError,
                           GridSpec, SweepConfig, find_threshold,
                           indist_on_family, l_for_indist, records_to_csv,
                           records_to_json, run_bell_region, run_sweep,
                           run_verify)

SQRT_HALF = 1.0 / math.sqrt(2.0)


class TestGridSpec:
    def test_parse(self):
        grid = GridSpec.parse("0:1:5")
        np.testing.assert_allclose(grid.values(), [0, 0.25, 0.5, 0.75, 1.0])

    def test_single_point(self):
        np.testing.assert_allclose(GridSpec.parse("0.3:0.9:1").values(), [0.3])

    def test_rejects_malformed(self):
        with pytest.raises(ConfigError):
            GridSpec.parse("0:1")
        with pytest.raises(ConfigError):
            GridSpec.parse("a:b:c")
        with pytest.raises(ConfigError):
            GridSpec(1.0, 0.0, 5)
        with pytest.raises(ConfigError):
            GridSpec(0.0, 1.0, 0)


class TestIndistInversion:
    def test_endpoints(self):
        assert l_for_indist(1.0) == pytest.approx(SQRT_HALF, abs=1e-12)
        assert l_for_indist(0.0) == 1.0

    def test_round_trip(self):
        for target in np.linspace(0.02, 0.98, 25):
            l = l_for_indist(float(target))
            assert indist_on_family(l) == pytest.approx(target, abs=1e-10)

    def test_family_formula_matches_entropy_definition(self):
        for l in np.linspace(SQRT_HALF, 1.0, 20):
            t = l * l
            z = t * t + (1 - t) ** 2
            assert indist_on_family(float(l)) == pytest.approx(
                binary_entropy(t * t / z), abs=1e-15)

    def test_out_of_range_rejected(self):
        with pytest.raises(ConfigError):
            l_for_indist(1.5)


class TestRunSweep:
    def test_noise_free_family_has_constant_concurrence(self):
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             constraint="l_eq_lprime",
                             l_grid=GridSpec(0.6, 0.9, 4), p_grid=GridSpec(0, 1, 11))
        records = run_sweep(config)
        assert len(records) == 44
        for record in records:
            assert record.concurrence == pytest.approx(1.0, abs=1e-9)
            assert record.indist == pytest.approx(1.0, abs=1e-12)

    def test_triplet_family_follows_closed_form(self):
        config = SweepConfig(statistics=BOSON, target="1_plus",
                             constraint="l_eq_lprime",
                             l_grid=GridSpec(SQRT_HALF, SQRT_HALF, 1),
                             p_grid=GridSpec(0, 1, 21))
        for record in run_sweep(config):
            expected = max(0.0, (4 - 5 * record.p) / (4 - record.p))
            assert record.concurrence == pytest.approx(expected, abs=1e-9)

    def test_distinguishable_family_recovers_standard_werner(self):
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             constraint="l_eq_rprime",
                             indist_grid=GridSpec(0, 0, 1), p_grid=GridSpec(0, 1, 21))
        for record in run_sweep(config):
            assert record.concurrence == pytest.approx(
                max(0.0, 1 - 1.5 * record.p), abs=1e-9)
            assert record.p_lr == pytest.approx(1.0, abs=1e-12)

    def test_cross_metric_identity(self):
        config = SweepConfig(statistics=BOSON, target="1_minus",
                             indist_grid=GridSpec(0.2, 0.9, 5), p_grid=GridSpec(0, 1, 7))
        for record in run_sweep(config):
            expected = binary_entropy((1 + math.sqrt(1 - record.concurrence ** 2)) / 2)
            assert record.eof == pytest.approx(expected, abs=1e-12)

    def test_rows_ordered_outer_then_inner(self):
        config = SweepConfig(statistics=FERMION, indist_grid=GridSpec(0.1, 0.9, 3),
                             p_grid=GridSpec(0, 1, 4))
        records = run_sweep(config)
        degrees = [r.indist for r in records]
        assert degrees == sorted(degrees)
        for i in range(0, len(records), 4):
            ps = [r.p for r in records[i:i + 4]]
            assert ps == sorted(ps)

    def test_flagged_rows_kept_with_warning(self):
        # l = l' extremely close to 1: detection probability below the flag
        # threshold but the family is still well defined
        l = math.sqrt(1 - 1e-13)
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             constraint="l_eq_lprime", l_grid=GridSpec(l, l, 1),
                             p_grid=GridSpec(0, 0, 1))
        with pytest.warns(RuntimeWarning, match="detection probability"):
            records = run_sweep(config)
        assert len(records) == 1
        assert records[0].flagged
        assert records[0].p_lr < 1e-12

    def test_degenerate_family_fully_flagged(self):
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             constraint="l_eq_lprime", l_grid=GridSpec(1.0, 1.0, 1),
                             p_grid=GridSpec(0, 1, 3))
        with pytest.warns(RuntimeWarning):
            records = run_sweep(config)
        assert all(r.flagged for r in records)
        assert all(r.concurrence == 0.0 for r in records)

    def test_determinism_and_thread_independence(self, monkeypatch):
        config = SweepConfig(statistics=BOSON, target="1_plus",
                             indist_grid=GridSpec(0, 1, 4), p_grid=GridSpec(0, 1, 5))
        monkeypatch.setenv("ISLOCC_THREADS", "1")
        serial = records_to_csv(run_sweep(config), CSV_FIELDS)
        monkeypatch.setenv("ISLOCC_THREADS", "4")
        threaded = records_to_csv(run_sweep(config), CSV_FIELDS)
        assert serial == threaded
        assert records_to_csv(run_sweep(config), CSV_FIELDS) == serial

    def test_json_and_csv_encode_identical_records(self):
        config = SweepConfig(statistics=FERMION, indist_grid=GridSpec(0.3, 0.8, 3),
                             p_grid=GridSpec(0, 1, 4))
        records = run_sweep(config)
        csv_text = records_to_csv(records, CSV_FIELDS)
        json_rows = json.loads(records_to_json(records, CSV_FIELDS))["records"]
        csv_lines = csv_text.strip().splitlines()
        assert csv_lines[0] == ",".join(CSV_FIELDS)
        assert len(csv_lines) == len(json_rows) + 1
        for line, row in zip(csv_lines[1:], json_rows):
            for name, cell in zip(CSV_FIELDS, line.split(",")):
                if name == "statistics":
                    assert cell == row[name]
                else:
                    assert float(cell) == row[name]

    def test_config_validation(self):
        with pytest.raises(ConfigError, match="not both"):
            SweepConfig(indist_grid=GridSpec(0, 1, 3), l_grid=GridSpec(0, 1, 3)).validate()
        with pytest.raises(ConfigError, match="l_eq_rprime"):
            SweepConfig(constraint="l_eq_lprime", indist_grid=GridSpec(0, 1, 3)).validate()
        with pytest.raises(ConfigError, match="lprime"):
            SweepConfig(constraint="free", l_grid=GridSpec(0, 1, 3)).validate()
        with pytest.raises(ConfigError, match="constraint"):
            SweepConfig(constraint="bogus").validate()
        with pytest.raises(ConfigError, match="target"):
            SweepConfig(target="bell").validate()


class TestBellRegion:
    def test_full_indistinguishability_always_violates(self):
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             indist_grid=GridSpec(1, 1, 1), p_grid=GridSpec(0, 1, 11))
        rows = run_bell_region(config)
        assert all(row.violated for row in rows)
        assert all(row.bell == pytest.approx(2 * math.sqrt(2), abs=1e-9) for row in rows)

    def test_distinguishable_boundary(self):
        config = SweepConfig(statistics=FERMION, target="1_minus",
                             indist_grid=GridSpec(0, 0, 1), p_grid=GridSpec(0, 1, 101))
        boundary = 1 - SQRT_HALF
        for row in run_bell_region(config):
            assert row.violated == int(row.p < boundary)

    def test_triplet_target_boundary_at_full_indistinguishability(self):
        config = SweepConfig(statistics=BOSON, target="1_plus",
                             indist_grid=GridSpec(1, 1, 1), p_grid=GridSpec(0, 1, 100))
        for row in run_bell_region(config):
            assert row.violated == int(row.p < 4.0 / 11.0)


class TestThreshold:
    def test_singlet_target_threshold_window(self):
        result = find_threshold(SweepConfig(statistics=FERMION, target="1_minus"))
        assert result.found
        assert 0.75 <= result.indist <= 0.77
        assert 0.55 <= result.concurrence_at_worst <= 0.57
        assert result.bell_at_worst > 2.0
        # the minimum over noise sits at the fully noisy end on this family
        assert result.worst_p == pytest.approx(1.0, abs=1e-3)

    def test_statistics_independence(self):
        fermion = find_threshold(SweepConfig(statistics=FERMION, target="1_minus"))
        boson = find_threshold(SweepConfig(statistics=BOSON, target="1_minus"))
        assert fermion.indist == pytest.approx(boson.indist, abs=1e-6)

    def test_triplet_target_has_no_all_noise_threshold(self):
        result = find_threshold(SweepConfig(statistics=FERMION, target="1_plus"))
        assert not result.found
        assert result.indist is None
        assert result.as_dict()["found"] is False

    def test_requires_family_constraint(self):
        with pytest.raises(ConfigError, match="l_eq_rprime"):
            find_threshold(SweepConfig(constraint="free", lprime=0.3,
                                       l_grid=GridSpec(0.8, 0.9, 2)))


class TestVerify:
    def test_all_suites_pass_within_budget(self):
        import time

        start = time.monotonic()
        report = run_verify()
        elapsed = time.monotonic() - start
        assert report.ok, "\n".join(report.summary_lines())
        assert len(report.suites) == 9
        assert all("worst" in s.detail or "boundaries" in s.detail
                   for s in report.suites)
        assert elapsed < 60.0, f"verification took {elapsed:.1f}s"

    def test_fault_injection_is_detected(self, monkeypatch):
        monkeypatch.setattr("islocc.werner.closed_form_concurrence_minus",
                            lambda *args, **kwargs: 0.123)
        report = run_verify()
        assert not report.ok
        failed = {s.name for s in report.suites if not s.passed}
        assert "closed-forms-vs-pipeline" in failed


class TestCli:
    def test_sweep_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        code = main(["sweep", "--statistics", "fermion", "--target", "1_minus",
                     "--constraint", "l_eq_lprime", "--l-grid", "0.8:0.8:1",
                     "--p-grid", "0:1:3", "--output", str(out)])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == ",".join(CSV_FIELDS)
        assert len(lines) == 4

    def test_sweep_stdout_json(self, capsys):
        code = main(["sweep", "--statistics", "boson", "--target", "1_plus",
                     "--indist-grid", "1:1:1", "--p-grid", "0:1:3",
                     "--format", "json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["records"]) == 3
        assert payload["records"][0]["statistics"] == "boson"

    def test_bell_region_csv_fields(self, tmp_path):
        out = tmp_path / "region.csv"
        code = main(["bell-region", "--indist-grid", "0:1:3", "--p-grid", "0:1:3",
                     "--output", str(out)])
        assert code == 0
        header = out.read_text().splitlines()[0]
        assert header == ",".join(BELL_REGION_FIELDS)

    def test_threshold_prints_json(self, capsys):
        code = main(["threshold", "--statistics", "fermion"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["found"] is True
        assert 0.75 <= payload["indist"] <= 0.77

    def test_svg_output(self, tmp_path):
        out = tmp_path / "plot.svg"
        code = main(["sweep", "--indist-grid", "0.5:1:2", "--p-grid", "0:1:5",
                     "--format", "svg", "--output", str(out)])
        assert code == 0
        text = out.read_text()
        assert text.startswith("<svg") and "polyline" in text

    def test_svg_requires_output(self, capsys):
        code = main(["sweep", "--format", "svg"])
        assert code == 2
        assert "config error" in capsys.readouterr().err

    def test_config_file_with_flag_override(self, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text(
            "# sweep configuration\n"
            "statistics = boson\n"
            "target = 1_plus\n"
            "constraint = l_eq_lprime\n"
            "l_grid = 0.75:0.75:1\n"
            "p_grid = 0:1:2\n")
        values = load_config_file(str(config))
        assert values["statistics"] == "boson"
        out = tmp_path / "out.csv"
        code = main(["sweep", "--config", str(config), "--statistics", "fermion",
                     "--output", str(out)])
        assert code == 0
        rows = out.read_text().strip().splitlines()[1:]
        assert all(row.split(",")[4] == "fermion" for row in rows)

    def test_unknown_config_key_exits_2(self, tmp_path, capsys):
        config = tmp_path / "bad.conf"
        config.write_text("franken = key\n")
        assert main(["sweep", "--config", str(config)]) == 2
        assert "unknown config key" in capsys.readouterr().err

    def test_missing_config_file_exits_2(self, capsys):
        assert main(["sweep", "--config", "/nonexistent/file.conf"]) == 2

    def test_bad_grid_flag_exits_2(self, capsys):
        assert main(["sweep", "--p-grid", "zero:one:ten"]) == 2

    def test_verify_exit_codes(self, monkeypatch, capsys):
        monkeypatch.setattr("islocc.werner.closed_form_concurrence_plus",
                            lambda *args, **kwargs: -1.0)
        code = main(["verify"])
        assert code == 1
        out = capsys.readouterr().out
        assert "[FAIL] closed-forms-vs-pipeline" in out
