import json

import pytest

from churate import ConfigError
from churate.cli import main
from churate.experiments import CSV_HEADERS, SCENARIOS, Scenario, list_scenarios, run

EXPECTED_HEADERS = {
    "snr_profile": "f_hz,lambda_over_a,mode,snr",
    "fraction_vs_size": "lambda_over_a,bw_over_fc,mode,fraction,status",
    "rate_vs_bw": "bw_over_fc,mode,rate_bps",
    "fraction_vs_power": "lambda_over_a,power_w,mode,fraction",
    "interference_vs_density": "rho,lambda_over_a,mode,rate_ratio,status",
}


class TestRegistry:
    def test_builtin_names(self):
        names = [name for name, _ in list_scenarios()]
        assert names == ["fig7a", "fig7b", "fig7c", "fig7d", "fig8",
                         "fig9a", "fig9b", "fig9c", "fig10", "fig11"]
        assert len(set(names)) == len(names)

    def test_low_power_variant(self):
        base = SCENARIOS["fig9c"].base
        assert base.total_power == pytest.approx(10e-3)

    def test_ultrawideband_variant(self):
        base = SCENARIOS["fig7d"].base
        assert base.fc == 60e9 and base.bw == 120e9

    def test_interference_geometry(self):
        s = SCENARIOS["fig11"]
        assert s.extra["alpha"] == 2.5
        assert s.base.total_power == pytest.approx(6.0)
        assert tuple(s.extra["lambda_over_a"]) == (50.0, 33.33)

    def test_headers_are_pinned(self):
        assert CSV_HEADERS == EXPECTED_HEADERS

    def test_empty_sweep_rejected(self):
        s = SCENARIOS["fig7a"]
        with pytest.raises(ConfigError):
            Scenario(name="x", kind=s.kind, base=s.base,
                     sweep=("lambda_over_a", ()), matching_modes=s.matching_modes,
                     description="empty")

    def test_unknown_kind_rejected(self):
        s = SCENARIOS["fig7a"]
        with pytest.raises(ConfigError):
            Scenario(name="x", kind="nope", base=s.base, sweep=s.sweep,
                     matching_modes=s.matching_modes, description="bad kind")


class TestRun:
    def test_unknown_scenario(self, tmp_path):
        with pytest.raises(ConfigError):
            run("fig99", tmp_path)

    def test_snr_profile_artifact(self, tmp_path):
        csv_path, meta_path = run("fig7a", tmp_path, seed=3)
        lines = csv_path.read_text().splitlines()
        assert lines[0] == EXPECTED_HEADERS["snr_profile"]
        # 3 sizes x 2 modes x 512 points
        assert len(lines) == 1 + 3 * 2 * 512
        meta = json.loads(meta_path.read_text())
        assert meta["seed"] == 3 and meta["n_rows"] == len(lines) - 1
        assert {"git_hash", "wall_time_s", "created_utc", "rel_tol"} <= set(meta)

    def test_byte_identical_reruns(self, tmp_path):
        first, _ = run("fig7a", tmp_path / "one", seed=7)
        second, _ = run("fig7a", tmp_path / "two", seed=7)
        assert first.read_bytes() == second.read_bytes()


class TestCli:
    def test_list(self, capsys):
        assert main(["list-scenarios"]) == 0
        out = capsys.readouterr().out
        assert "fig9c" in out and "fig11" in out

    def test_run_with_overrides(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CHURATE_SEED", "9")
        code = main(["run", "--scenario", "fig7a", "--out", str(tmp_path),
                     "--workers", "1"])
        assert code == 0
        meta = json.loads((tmp_path / "fig7a.meta.json").read_text())
        assert meta["seed"] == 9   # env default applied
        assert (tmp_path / "fig7a.csv").exists()

    def test_flag_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CHURATE_SEED", "9")
        main(["run", "--scenario", "fig7a", "--out", str(tmp_path),
              "--seed", "4", "--workers", "1"])
        meta = json.loads((tmp_path / "fig7a.meta.json").read_text())
        assert meta["seed"] == 4

    def test_bad_scenario_flag(self):
        with pytest.raises(SystemExit):
            main(["run", "--scenario", "nope"])

    def test_config_override(self, tmp_path):
        doc = {"fc_hz": 600e6, "bw_hz": 1.2e8, "power_w": 4.0,
               "distance_m": 2000.0, "lambda_over_a": 20.0}
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(doc))
        code = main(["run", "--scenario", "fig7a", "--out", str(tmp_path),
                     "--config", str(cfg_path), "--workers", "1"])
        assert code == 0
        body = (tmp_path / "fig7a.csv").read_text()
        assert body.splitlines()[0] == EXPECTED_HEADERS["snr_profile"]
