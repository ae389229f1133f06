import json

import numpy as np
import pytest

from movsig.cli import run
from movsig.results import ResultTable


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coverage_los_text(capsys):
    code, out, _ = call(capsys, "coverage", "--mode", "los", "--W", "1.8")
    assert code == 0
    assert "theta_plus_deg: 33.749" in out
    assert "coverage_deg: 112.502" in out


def test_coverage_nlos_json(capsys):
    code, out, _ = call(capsys, "coverage", "--mode", "nlos", "--W", "1.8", "--theta-t", "-10",
                        "--format", "json", "--reproducible")
    doc = json.loads(out)
    assert code == 0 and "timestamp" not in doc
    assert doc["result"]["theta_r_minus_deg"] == pytest.approx(-28.580, abs=1e-3)
    assert doc["result"]["theta_r_plus_deg"] == pytest.approx(55.657, abs=1e-3)
    assert doc["config"]["command"] == "coverage"


def test_freq_opt(capsys):
    code, out, _ = call(capsys, "freq-opt", "--mode", "nlos", "--theta-r", "-90", "--theta-t", "-10",
                        "--fa", "8e9", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["f_opt_hz"] == pytest.approx(6816352764.16739, rel=1e-12)
    code, out, _ = call(capsys, "freq-opt", "--mode", "los", "--theta", "0")
    assert code == 0
    assert "f_opt_hz: any" in out and "resolved to f_min" in out


def test_protocol_table(capsys):
    code, out, _ = call(capsys, "protocol", "--mode", "los", "--theta", "40", "--N", "8", "--S", "16",
                        "--reproducible")
    assert code == 0
    table = ResultTable.from_csv(out)
    assert table.columns == ["subchannel", "frequency_hz", "power_w"]
    assert len(table) == 16
    s = table.metadata["selected_subchannel"]
    assert table.column("power_w")[s - 1] == table.column("power_w").max()
    assert table.metadata["config"]["theta"] == 40


def test_pattern_table(capsys):
    code, out, _ = call(capsys, "pattern", "--N", "16", "--n-freqs", "3", "--step", "30", "--reproducible")
    table = ResultTable.from_csv(out)
    assert code == 0
    assert table.columns == ["angle_deg", "pattern_f1", "pattern_f2", "pattern_f3"]
    row0 = table.rows[table.column("angle_deg") == 0][0]
    np.testing.assert_allclose(row0[1:], 1.0, rtol=1e-12)
    assert len(table.metadata["frequencies_hz"]) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep-los", "--N", "8", "--step", "10", "--S", "32"],
        ["sweep-nlos", "--N", "8", "--step", "10", "--S", "32", "--theta-t", "-30"],
        ["average", "--N", "8", "--S", "32", "--trials", "50", "--W-list", "1.1,1.5"],
        ["scaling", "--N-list", "2,4", "--trials", "50"],
    ],
)
def test_table_commands_reproducible(capsys, argv):
    code, first, _ = call(capsys, *argv, "--reproducible")
    code2, second, _ = call(capsys, *argv, "--reproducible", "--threads", "8")
    assert code == code2 == 0
    assert first == second
    assert "timestamp" not in first
    header = ResultTable.from_csv(first).metadata
    assert header["config"]["command"] == argv[0]


def test_timestamp_without_reproducible(capsys):
    _, out, _ = call(capsys, "scaling", "--N-list", "2", "--trials", "5")
    assert "# timestamp:" in out


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "coverage", "mode": "los", "W": 2.0}))
    _, out, _ = call(capsys, "coverage", "--config", str(cfg))
    assert "theta_plus_deg: 30.000" in out
    _, out, _ = call(capsys, "coverage", "--config", str(cfg), "--W", "1.8")
    assert "theta_plus_deg: 33.749" in out


@pytest.mark.parametrize(
    "content",
    ['{"command": "coverage", "W": "wide"}', '{"bogus": 1}', '{"command": "scaling"}', "not json"],
)
def test_bad_config_is_a_validation_error(tmp_path, capsys, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    code, _, err = call(capsys, "coverage", "--config", str(cfg))
    assert code == 1 and err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["coverage", "--nope"],
        ["coverage", "--W", "0.5"],
        ["freq-opt", "--theta", "120"],
        ["protocol", "--S", "1"],
        ["sweep-los", "--power", "-1"],
        ["scaling", "--N-list", "0"],
        ["average", "--trials", "0"],
        ["scaling", "--threads", "0"],
    ],
)
def test_invalid_input_exits_1(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 1
    assert err


def test_io_errors_exit_2(tmp_path, capsys):
    code, _, _ = call(capsys, "coverage", "--config", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, _ = call(capsys, "coverage", "-o", str(tmp_path / "no" / "such" / "dir.txt"))
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = call(capsys, "scaling", "--N-list", "2", "--trials", "5", "--reproducible", "-o", str(target))
    assert code == 0 and out == ""
    assert ResultTable.from_csv(target.read_text()).columns[0] == "N"


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0
