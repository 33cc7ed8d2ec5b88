import json

import numpy as np
import pytest

from discordbench.cli import main


def run_to_file(tmp_path, args, name="out.txt"):
    path = tmp_path / name
    rc = main(args + ["--output", str(path)])
    return rc, path.read_text()


def test_state_incoherent_json(tmp_path):
    rc, text = run_to_file(tmp_path, ["state", "incoherent"])
    assert rc == 0
    doc = json.loads(text)
    assert doc["state"]["dim"] == 4
    assert doc["state"]["basis"] == ["HH", "HV", "VH", "VV"]
    assert doc["purity"] == pytest.approx(0.375, abs=1e-9)
    assert doc["concurrence"] == 0.0
    assert doc["discord"] == pytest.approx(0.311278124459, abs=1e-6)
    assert doc["state"]["re"][1][2] == pytest.approx(-0.25, abs=1e-12)
    assert doc["state"]["im"][1][2] == 0.0
    assert doc["reduced_b"]["re"][0][0] == pytest.approx(0.5, abs=1e-12)


def test_state_coherent_csv_provenance(tmp_path):
    rc, text = run_to_file(tmp_path, ["state", "coherent", "--phi", "0.5",
                                      "--format", "csv"])
    assert rc == 0
    lines = text.splitlines()
    assert lines[0].startswith("# generated-by discordbench state coherent ")
    assert "--phi=0.5" in lines[0]
    assert lines[1] == "quantity,value"
    values = dict(line.split(",") for line in lines[2:])
    assert float(values["purity"]) == pytest.approx(1.0, abs=1e-9)
    assert float(values["discord"]) <= 1e-6


def test_state_flag_validation():
    with pytest.raises(SystemExit) as exc:
        main(["state", "incoherent", "--phi", "0.3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["state", "coherent", "--delta", "10"])
    assert exc.value.code == 2


def test_state_delayed_accepts_delta(tmp_path):
    rc, text = run_to_file(tmp_path, ["state", "delayed", "--delta", "500"])
    assert rc == 0
    doc = json.loads(text)
    assert doc["purity"] == pytest.approx(0.25, abs=1e-6)
    assert doc["discord"] <= 1e-6


def test_deterministic_output(tmp_path):
    _, first = run_to_file(tmp_path, ["delay-scan", "--points", "7"], "a.csv")
    _, second = run_to_file(tmp_path, ["delay-scan", "--points", "7"], "b.csv")
    assert first == second
    _, third = run_to_file(
        tmp_path, ["tomography", "--resamples", "3", "--seed", "4"], "c.json")
    _, fourth = run_to_file(
        tmp_path, ["tomography", "--resamples", "3", "--seed", "4"], "d.json")
    assert third == fourth


def test_homdip_csv(tmp_path):
    rc, text = run_to_file(tmp_path, ["homdip", "--points", "9",
                                      "--delta-max", "400"])
    assert rc == 0
    lines = text.splitlines()
    assert lines[0].startswith("# generated-by discordbench homdip ")
    assert lines[1] == "# visibility 0.5"
    fwhm = float(lines[2].split()[-1])
    assert 170.0 <= fwhm <= 215.0
    assert lines[3] == "delta_um,coincidence_norm"
    rows = np.array([[float(x) for x in line.split(",")] for line in lines[4:]])
    assert rows.shape == (9, 2)
    assert rows[4, 1] == pytest.approx(0.5, abs=1e-12)


def test_delay_scan_endpoints(tmp_path):
    rc, text = run_to_file(tmp_path, ["delay-scan", "--points", "5",
                                      "--delta-max", "500"])
    assert rc == 0
    rows = [line.split(",") for line in text.splitlines()
            if line and not line.startswith("#") and not line.startswith("delta")]
    first, last = rows[0], rows[-1]
    assert float(first[1]) == pytest.approx(0.375, abs=1e-9)
    assert float(first[2]) == pytest.approx(0.3113, abs=1e-4)
    assert float(last[1]) == pytest.approx(0.25, abs=1e-6)
    assert float(last[2]) <= 1e-6


def test_error_curve_reference_row(tmp_path):
    rc, text = run_to_file(tmp_path, ["error-curve"])
    assert rc == 0
    rows = np.array([
        [float(x) for x in line.split(",")]
        for line in text.splitlines()
        if line and not line.startswith("#") and not line.startswith("mu,")
    ])
    k = np.argmin(np.abs(rows[:, 0] - 0.1))
    assert rows[k, 0] == pytest.approx(0.1, abs=1e-9)
    assert rows[k, 1] == pytest.approx(0.096, abs=1e-3)
    assert np.all(np.diff(rows[:, 1]) > 0)
    with pytest.raises(SystemExit) as exc:
        main(["error-curve", "--mu-min", "0.5", "--mu-max", "0.1"])
    assert exc.value.code == 2


def test_tomography_json_report(tmp_path):
    rc, text = run_to_file(
        tmp_path, ["tomography", "--resamples", "4", "--seed", "1"])
    assert rc == 0
    doc = json.loads(text)
    assert doc["true_state"] == "coherent"
    assert set(doc["counts"]) == {a + b for a in "HVDR" for b in "HVDR"}
    assert doc["fidelity_to_true"] > 0.99
    assert doc["reconstructed"]["dim"] == 4
    assert doc["discord_std"] >= 0.0
    assert "note" in doc


def test_tomography_nonconvergence_exit_code(tmp_path):
    rc = main(["tomography", "--max-iter", "1", "--resamples", "2",
               "--output", str(tmp_path / "x.json")])
    assert rc == 3


def test_unwritable_output_path(tmp_path):
    rc = main(["error-curve", "--points", "3", "--output", str(tmp_path)])
    assert rc == 1


def test_stdout_output(capsys):
    rc = main(["homdip", "--points", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("# generated-by discordbench homdip ")


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "discordbench" in capsys.readouterr().out
