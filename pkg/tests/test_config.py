"""Config file parsing and diagnostics."""

import pytest

from eavesim.config import ConfigError, SweepSpec, parse_config


def write(tmp_path, text):
    p = tmp_path / "run.cfg"
    p.write_text(text)
    return p


class TestParsing:
    def test_symmetric_scenario(self, tmp_path):
        cfg = parse_config(write(tmp_path, """
            # two attackers
            basis = xy
            eve.d = 0.1
            eve.d = 0.2   # trailing comment
            seed = 7
        """), "analyze")
        assert cfg.scenario.n == 2
        assert cfg.symmetric_d == (0.1, 0.2)
        assert cfg.seed == 7

    def test_asymmetric_pair(self, tmp_path):
        cfg = parse_config(write(tmp_path, """
            eve.delta_uv = 0.3
            eve.d_xy = 0.05
        """), "analyze")
        assert cfg.scenario.eves[0].delta_uv == 0.3
        assert cfg.scenario.eves[0].d_xy == 0.05
        assert cfg.symmetric_d is None

    def test_empty_scenario_is_legal(self, tmp_path):
        cfg = parse_config(write(tmp_path, "basis = uv\n"), "analyze")
        assert cfg.scenario.n == 0
        assert cfg.scenario.signal_basis == "uv"

    def test_sweep_block(self, tmp_path):
        cfg = parse_config(write(tmp_path, """
            eve.d = 0.0
            eve.d = 0.1
            sweep.eve = 1
            sweep.start = 0.0
            sweep.stop = 0.5
            sweep.step = 0.05
        """), "diagram")
        assert cfg.sweep.eve == 1
        assert len(cfg.sweep.values()) == 11

    def test_output_and_format(self, tmp_path):
        cfg = parse_config(write(tmp_path, """
            eve.d = 0.1
            output = out/report.json
            format = json
        """), "analyze")
        assert cfg.output == "out/report.json"
        assert cfg.output_format == "json"


class TestDiagnostics:
    def test_bad_number_carries_line(self, tmp_path):
        with pytest.raises(ConfigError, match=r"run\.cfg:3: .*not a number"):
            parse_config(write(tmp_path, "\nbasis = xy\neve.d = lots\n"),
                         "analyze")

    def test_out_of_range_value(self, tmp_path):
        with pytest.raises(ConfigError, match=r":1: .*\[0, 0\.5\]"):
            parse_config(write(tmp_path, "eve.d = 0.7\n"), "analyze")

    def test_unknown_key(self, tmp_path):
        with pytest.raises(ConfigError, match=r":2: unknown key"):
            parse_config(write(tmp_path, "eve.d = 0.1\nevil.d = 0.2\n"),
                         "analyze")

    def test_missing_equals(self, tmp_path):
        with pytest.raises(ConfigError, match=r":1: expected 'key = value'"):
            parse_config(write(tmp_path, "just words\n"), "analyze")

    def test_orphan_d_xy(self, tmp_path):
        with pytest.raises(ConfigError, match="without a preceding"):
            parse_config(write(tmp_path, "eve.d_xy = 0.1\n"), "analyze")

    def test_unfinished_asymmetric_pair(self, tmp_path):
        with pytest.raises(ConfigError, match="missing its eve.d_xy"):
            parse_config(write(tmp_path, "eve.delta_uv = 0.3\n"), "analyze")

    def test_duplicate_scalar(self, tmp_path):
        with pytest.raises(ConfigError, match="duplicate basis"):
            parse_config(write(tmp_path, "basis = xy\nbasis = uv\n"), "analyze")

    def test_sweep_keys_ignored_outside_sweep_modes(self, tmp_path):
        # one config file may drive analyze and diagram runs alike
        cfg = parse_config(write(tmp_path, """
            eve.d = 0.1
            sweep.eve = 1
            sweep.start = 0.0
            sweep.stop = 0.5
            sweep.step = 0.01
        """), "analyze")
        assert cfg.sweep is None

    def test_missing_sweep_keys(self, tmp_path):
        with pytest.raises(ConfigError, match="needs sweep.start"):
            parse_config(write(tmp_path, "eve.d = 0.1\nsweep.eve = 1\n"),
                         "diagram")

    def test_sweep_eve_out_of_range(self, tmp_path):
        with pytest.raises(ConfigError, match="out of range"):
            parse_config(write(tmp_path, """
                eve.d = 0.1
                sweep.eve = 2
                sweep.start = 0
                sweep.stop = 0.5
                sweep.step = 0.1
            """), "diagram")

    def test_sweep_rejects_asymmetric_attackers(self, tmp_path):
        with pytest.raises(ConfigError, match="declared symmetric"):
            parse_config(write(tmp_path, """
                eve.delta_uv = 0.3
                eve.d_xy = 0.1
                sweep.eve = 1
                sweep.start = 0
                sweep.stop = 0.5
                sweep.step = 0.1
            """), "diagram")

    def test_zero_step_with_extent(self, tmp_path):
        with pytest.raises(ConfigError, match="positive"):
            parse_config(write(tmp_path, """
                eve.d = 0.1
                sweep.eve = 1
                sweep.start = 0
                sweep.stop = 0.5
                sweep.step = 0
            """), "diagram")

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            parse_config(tmp_path / "absent.cfg", "analyze")


class TestSweepSpec:
    def test_inclusive_endpoints(self):
        values = SweepSpec(eve=1, start=0.0, stop=0.5, step=0.01).values()
        assert len(values) == 51
        assert values[0] == 0.0
        assert values[-1] == pytest.approx(0.5, abs=1e-12)

    def test_single_point(self):
        assert SweepSpec(eve=1, start=0.3, stop=0.3, step=0.01).values() == [0.3]

    def test_reversed_bounds_rejected(self):
        with pytest.raises(ConfigError, match="below"):
            SweepSpec(eve=1, start=0.4, stop=0.1, step=0.01).values()
