import subprocess
import sys

import pytest

from chirppapr import cli
from chirppapr.config import (ExperimentConfig, apply_overrides, dump_config, load_config,
                              parse_config_text)
from chirppapr.errors import ConfigError


def test_parse_grammar():
    text = """
    # comment line
    n = 32          # trailing comment
    waveform = ocdm, afdm
    zc-root = 3
    pts_phases = 1, -1, 1j
    stride = auto
    """
    cfg = apply_overrides(ExperimentConfig(), parse_config_text(text))
    assert cfg.n == 32
    assert cfg.waveform == ["OCDM", "AFDM"]
    assert cfg.zc_root == 3
    assert cfg.pts_phases == [1, -1, 1j]
    assert cfg.stride is None


def test_spreading_none_gives_empty_list():
    cfg = apply_overrides(ExperimentConfig(), {"spreading": "none"})
    assert cfg.spreading == []


@pytest.mark.parametrize("text", ["n 32", "bogus = 1"])
def test_parse_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_bad_value():
    with pytest.raises(ConfigError):
        apply_overrides(ExperimentConfig(), {"n": "sixty-four"})


def test_dump_round_trip(tmp_path):
    cfg = ExperimentConfig(n=16, trials=77, waveform=["AFDM"], spreading=[], stride=4, c2=0.3125,
                           pts_phases=[1, -1j, 0.5 + 0.8660254037844386j], clip_cutoff=0.5, sensors=[5])
    path = tmp_path / "c.cfg"
    path.write_text(dump_config(cfg))
    assert load_config(path) == cfg


def test_default_dump_round_trip(tmp_path):
    path = tmp_path / "d.cfg"
    path.write_text(dump_config(ExperimentConfig()))
    assert load_config(path) == ExperimentConfig()


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.cfg")


@pytest.mark.parametrize("override", [{"trials": "0"}, {"n": "1"}, {"modulation": "16qam"},
                                      {"seed": "-1"}, {"grid_step_db": "0"}, {"oversample": "0"},
                                      {"workers": "0"}, {"waveform": "none"}])
def test_validate(override):
    with pytest.raises(ConfigError):
        apply_overrides(ExperimentConfig(), override).validate()


# --- CLI ---

def small(tmp_path, *extra):
    return ["--trials", "50", "--n", "16", "--out", str(tmp_path), *extra]


def test_cli_ccdf_writes_outputs(tmp_path, capsys):
    assert cli.main(["ccdf", *small(tmp_path, "--waveform", "OFDM,OCDM", "--spreading", "WHT")]) == 0
    text = (tmp_path / "ccdf.csv").read_text().splitlines()
    assert text[0] == "papr0_db,OFDM,OFDM+WHT,OCDM,OCDM+WHT"
    assert len(text) == 1 + 241
    assert "wrote" in capsys.readouterr().out


def test_cli_flags_override_config_file(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("n = 8\ntrials = 20\nwaveform = OFDM\nspreading = DCT\nseed = 5\n")
    out = tmp_path / "o"
    assert cli.main(["ccdf", "--config", str(cfgfile), "--n", "16", "--out", str(out)]) == 0
    resolved = load_config(out / "ccdf_manifest.txt")
    assert resolved.n == 16 and resolved.trials == 20 and resolved.seed == 5
    assert resolved.waveform == ["OFDM"] and resolved.spreading == ["DCT"]


def test_cli_manifest_reruns_identically(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["ccdf", *small(a, "--out", str(a))]) == 0
    assert cli.main(["ccdf", "--config", str(a / "ccdf_manifest.txt"), "--out", str(b)]) == 0
    assert (a / "ccdf.csv").read_bytes() == (b / "ccdf.csv").read_bytes()


@pytest.mark.parametrize("args", [
    ["ccdf", "--n", "12", "--spreading", "WHT"],
    ["ccdf", "--waveform", "OCDM", "--n", "7", "--spreading", "none"],
    ["ccdf", "--spreading", "ZC", "--zc-root", "2"],
    ["ccdf", "--spreading", "IDFT", "--stride", "5"],
    ["ccdf", "--trials", "0"],
    ["ccdf", "--waveform", "OTFS"],
    ["compare", "--pts-blocks", "3"],
    ["compare", "--baseline", "FOO"],
    ["compare", "--gps-groups", "5"],
    ["ccdf", "--n", "abc"],
])
def test_cli_config_errors_exit_1_before_running(tmp_path, args, capsys):
    assert cli.main([*args, "--out", str(tmp_path / "never")]) == 1
    assert "config error" in capsys.readouterr().err
    assert not (tmp_path / "never").exists()


def test_cli_missing_curve_exit_2(tmp_path):
    # 100 trials cannot resolve CCDF 1e-3
    assert cli.main(["energy", "--trials", "100", "--out", str(tmp_path)]) == 2


def test_cli_energy_without_proposed_curve(tmp_path, capsys):
    assert cli.main(["energy", "--trials", "20000", "--spreading", "WHT", "--waveform", "OCDM",
                     "--out", str(tmp_path)]) == 2
    assert "OCDM+IDFT" in capsys.readouterr().err


def test_cli_io_error_exit_2(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert cli.main(["ccdf", *small(tmp_path, "--out", str(blocker / "sub"))]) == 2


def test_cli_selftest():
    assert cli.main(["selftest"]) == 0


def test_cli_selftest_failure_exit_3(monkeypatch):
    monkeypatch.setitem(cli.run_selftest.__globals__["CHECKS"], "broken", lambda: False)
    assert cli.main(["selftest"]) == 3


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "chirppapr", "ccdf", *small(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "ccdf_report.txt").exists()
