import csv
import io
import json

import numpy as np
import pytest

from primordia import cli
from primordia.config import config_sha256, parse_config, parse_config_text, resolved_config
from primordia.errors import ConfigError, NumericalError
from primordia.model import ParameterSet, steady_state
from primordia.pdesim.config import SimConfig

TINY = """\
# tiny run
[model]
tau = 0.001
xi_f = 0.001
[grid]
nx = 8
ny = 8
Lx = 4
Ly = 4
[simulation]
dt = 0.05
t_final = 0.2
output_interval = 0.1
noise_amplitude = 0.01
seed = 3
"""


class TestConfig:
    def test_empty_is_default(self):
        cfg = parse_config_text("")
        assert cfg.params == ParameterSet()
        assert resolved_config(cfg) == resolved_config(SimConfig())

    def test_bare_keys_are_model(self):
        cfg = parse_config_text("tau = 0\n")
        assert cfg.params.tau == 0.0

    def test_sections(self):
        cfg = parse_config_text(TINY)
        assert (cfg.grid.nx, cfg.grid.Lx, cfg.dt, cfg.seed) == (8, 4.0, 0.05, 3)
        assert cfg.params.xi_f == 0.001

    def test_duplicate_key_names_both_lines(self):
        with pytest.raises(ConfigError, match=r"<config>:3: duplicate key 'tau'.*line 1"):
            parse_config_text("tau = 1\n\ntau = 2\n")

    @pytest.mark.parametrize("text, pattern", [
        ("[model]\nbogus = 1\n", r":2: unknown key 'bogus'"),
        ("[nowhere]\n", r":1: unknown section"),
        ("[grid]\nnx = 1.5\n", r":2: malformed value for 'nx'"),
        ("tau\n", r":1: expected 'key = value'"),
        ("[grid\n", r":1: malformed section header"),
        ("\n\nnu = 0.7\n", r":3: .*nu"),
        ("[simulation]\nsaturated_wave = maybe\n", r":2: malformed value"),
    ])
    def test_errors_cite_lines(self, text, pattern):
        with pytest.raises(ConfigError, match=pattern):
            parse_config_text(text)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="no such configuration file"):
            parse_config(tmp_path / "absent.cfg")

    def test_file_and_hash(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text(TINY)
        assert parse_config(path).grid.ny == 8
        assert len(config_sha256(path)) == 64
        assert config_sha256(None) is None


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCli:
    def test_steady(self, capsys):
        code, out, _ = _run(capsys, "steady", "--set", "alpha=2")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 1
        s = steady_state(ParameterSet(alpha=2.0))
        for key, value in s.as_dict().items():
            assert float(rows[0][key]) == value

    def test_dispersion(self, tmp_path, capsys):
        out = tmp_path / "disp.csv"
        assert _run(capsys, "dispersion", "--out", str(out))[0] == 0
        data = out.read_bytes()
        assert b"\r" not in data
        rows = list(csv.reader(io.StringIO(data.decode("utf-8"))))
        assert len(rows) == 501
        assert rows[0][:2] == ["k2", "max_re"]
        k2 = np.array([float(r[0]) for r in rows[1:]])
        np.testing.assert_allclose(k2, np.geomspace(1e-3, 50, 500), rtol=1e-15)
        manifest = json.loads((tmp_path / "disp.csv.manifest.json").read_text())
        assert manifest["subcommand"] == "dispersion"
        assert manifest["config_sha256"] is None

    def test_patternspace_grid(self, tmp_path, capsys):
        out = tmp_path / "ps.csv"
        code, _, _ = _run(capsys, "patternspace", "--axis1", "alpha:0.01:5:100",
                          "--axis2", "m0:0.1:5:100", "--out", str(out))
        assert code == 0
        rows = list(csv.reader(io.StringIO(out.read_text())))
        assert rows[0][:2] == ["alpha", "m0"]
        assert len(rows) == 10001

    def test_usage_errors(self, capsys):
        assert _run(capsys, "frobnicate")[0] == 1
        assert _run(capsys)[0] == 1
        assert _run(capsys, "patternspace", "--axis1", "alpha:1:2:3")[0] == 1
        assert _run(capsys, "patternspace", "--axis1", "alpha:1:2", "--axis2", "m0:1:2:3")[0] == 1
        code, _, err = _run(capsys, "steady", "--set", "nu=0.7")
        assert code == 1 and "nu" in err
        assert _run(capsys, "steady", "--set", "alpha")[0] == 1
        assert _run(capsys, "steady", "--config", "/nonexistent.cfg")[0] == 1
        assert _run(capsys, "--version")[0] == 0

    def test_numerical_exit(self, monkeypatch, capsys):
        def boom(*a, **k):
            raise NumericalError("diverged")
        monkeypatch.setattr(cli, "run_simulation", boom)
        code, _, err = _run(capsys, "simulate", "--out", "/tmp/unused-primordia-run")
        assert code == 2 and "diverged" in err

    def test_simulate_reproducible(self, tmp_path, capsys):
        cfg = tmp_path / "tiny.cfg"
        cfg.write_text(TINY)
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert _run(capsys, "simulate", "--config", str(cfg), "--out", str(out))[0] == 0
            outputs.append(out)
        files = sorted(p.name for p in outputs[0].iterdir())
        assert "diagnostics.csv" in files and "manifest.json" in files
        assert any(f.startswith("m_") for f in files)
        for f in files:
            if f != "manifest.json":
                assert (outputs[0] / f).read_bytes() == (outputs[1] / f).read_bytes(), f
        man = json.loads((outputs[0] / "manifest.json").read_text())
        assert man["seed"] == 3
        assert man["config_sha256"] == config_sha256(cfg)
        assert man["config"]["grid"]["nx"] == 8
        assert man["version"] == cli.__version__

    def test_growth_check(self, capsys):
        code, out, _ = _run(capsys, "growth-check", "--samples", "50", "--seed", "2")
        assert code == 0
        assert out.count("PASS") == 6
