import csv
import io
import subprocess
import sys

import pytest

from truncosc import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_fig1_stdout(capsys):
    code, out, _ = run(capsys, "fig1", "--s", "2", "--z", "5", "--r1-grid", "0:1:0.5")
    assert code == 0
    got = rows(out)
    assert [r["R1"] for r in got] == ["0.00000000000e+00", "5.00000000000e-01", "1.00000000000e+00"]
    assert float(got[1]["S"]) == pytest.approx(0.5190031578070466, abs=1e-11)


def test_fig2_and_fig3(capsys):
    code, out, _ = run(capsys, "fig2", "--s", "1,2,3", "--z-weak", "0.5", "--z-strong", "10")
    assert code == 0
    assert {r["scenario"] for r in rows(out)} == {"fig2a", "fig2b"} and len(rows(out)) == 6
    code, out, _ = run(capsys, "fig3", "--s", "2", "--z-grid", "0:2:1")
    assert code == 0 and len(rows(out)) == 3


def test_surfaces_and_custom_to_file(tmp_path, capsys):
    target = tmp_path / "surf.csv"
    code, out, _ = run(capsys, "surfaces", "--r1-grid", "0:1:0.5", "--r2-grid", "0:1:0.5", "--out", str(target))
    assert code == 0 and out == ""
    got = rows(target.read_text())
    assert len(got) == 9 and all(r["scenario"] == "fig7" for r in got)
    code, out, _ = run(capsys, "custom", "--s", "1", "--z", "1", "--r1-grid", "0.5:0.5:0.1")
    assert code == 0 and float(rows(out)[0]["S"]) == pytest.approx(0.125)


def test_config_file_and_flag_override(tmp_path, capsys):
    ini = tmp_path / "sweep.ini"
    ini.write_text("[sweep]\ns = 2,4\nz = 5\nr1_grid = 0:1:0.25\n")
    code, out, _ = run(capsys, "fig1", "--config", str(ini))
    assert code == 0 and len(rows(out)) == 10
    code, out, _ = run(capsys, "fig1", "--config", str(ini), "--s", "6")
    assert code == 0 and {r["two_s"] for r in rows(out)} == {"6"}


@pytest.mark.parametrize("text", ["[sweep]\nbogus = 1\n", "[sweep]\nr1_grid = 0:2:0.5\n", "[sweep]\nz = nan,\n", "[sweep]\njobs = 0\n"])
def test_bad_config_exit_code(tmp_path, capsys, text):
    ini = tmp_path / "bad.ini"
    ini.write_text(text)
    code, out, err = run(capsys, "fig1", "--config", str(ini))
    assert code == 2 and out == "" and "bad configuration" in err


def test_missing_config_file(tmp_path, capsys):
    code, _, err = run(capsys, "fig1", "--config", str(tmp_path / "nope.ini"))
    assert code == 2 and "nope.ini" in err


def test_verify_subcommand(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "0 failed" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "truncosc", "fig1", "--s", "1", "--r1-grid", "0:1:1"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("scenario,two_s,z,R1")
