import json
import subprocess
import sys
from pathlib import Path

import pytest

from mfquiver.cli import main
from mfquiver.jsonio import load_mf, mf_to_json
from mfquiver.mfcore import indecomposable

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(text):
    data = json.loads(text)
    assert data["schema"] == 1
    return data


@pytest.mark.parametrize("path", sorted(SAMPLES.glob("*.json")), ids=lambda p: p.name)
def test_every_sample_verifies(capsys, path):
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and payload(out)["passed"]


def test_sample_round_trip():
    m = load_mf(SAMPLES / "m_2_0_h4.json")
    assert m == indecomposable(2, 0, 4)
    assert mf_to_json(m) == {k: v for k, v in json.loads((SAMPLES / "m_2_0_h4.json").read_text()).items()
                             if k != "schema"}


def test_hom_between_samples(capsys):
    code, out, _ = run(capsys, "hom", str(SAMPLES / "m_2_0_h4.json"), str(SAMPLES / "m_1_0_h4.json"),
                       "--degree", "0")
    assert code == 0 and payload(out)["dim"] == 0
    code, out, _ = run(capsys, "hom", str(SAMPLES / "m_1_0_h4.json"), str(SAMPLES / "m_2_0_h4.json"),
                       "--table", "--window", "2")
    assert payload(out)["dims"] == [0, 0, 1, 0, 0]


def test_decompose_with_certificate(capsys):
    code, out, _ = run(capsys, "decompose", str(SAMPLES / "mixed_h4.json"), "--certificate")
    data = payload(out)
    assert code == 0 and data["labels"] == [[1, 0], [3, 0]] and data["stripped_trivial"] == 1
    assert data["certificate_verified"] and "odd_change" in data["certificate"]


def test_euler_both(capsys):
    code, out, _ = run(capsys, "euler", "--h", "4", "--source", "both")
    data = payload(out)
    assert code == 0 and data["verdict"] == "match"
    assert data["mf"]["I"] == data["cartan"] == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


def test_small_commands(capsys):
    assert run(capsys, "ar", "--h", "4", "--window", "1")[0] == 0
    assert run(capsys, "serre", "--h", "3", "--range", "1")[0] == 0
    assert run(capsys, "quiver", "compare", "--h", "3")[0] == 0
    code, out, _ = run(capsys, "stability", "hn", str(SAMPLES / "mixed_h4.json"))
    assert code == 0 and [s["phase"] for s in payload(out)["filtration"]] == ["1/4", "-1/4"]
    code, out, _ = run(capsys, "weights", "check", "--a", "1", "--b", "1", "--c", "1", "--h", "3")
    assert code == 0 and payload(out)["milnor_number"] == "8/1"


def test_stability_check_is_deterministic(capsys):
    first = run(capsys, "stability", "check", "--h", "3", "--window", "1", "--seed", "4")
    second = run(capsys, "stability", "check", "--h", "3", "--window", "1", "--seed", "4")
    assert first == second and first[0] == 0


def test_report_writes_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "report", "--h", "3", "-o", str(target))
    assert code == 0 and payload(target.read_text())["passed"]


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "hom", "a", "b", "--bogus")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"weights": {"a": [1], "h": 4}, "f": [')
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "line 1" in err
    wrong = tmp_path / "wrong.json"
    data = mf_to_json(indecomposable(1, 0, 4))
    data["q_pm"] = [[[{"c": "1/1", "e": [1, 2]}]]]
    wrong.write_text(json.dumps(data))
    code, _, err = run(capsys, "verify", str(wrong))
    assert code == 2 and "q_pm[0][0]" in err
    code, _, err = run(capsys, "decompose", str(SAMPLES / "knorrer_m_2_0_h4.json"))
    assert code == 2 and "one-variable" in err
    assert run(capsys, "ar", "--h", "1")[0] == 2


def test_check_failure_exit_code(capsys, tmp_path):
    data = mf_to_json(indecomposable(1, 0, 4))
    data["q_mp"] = [[[{"c": "1/1", "e": [1]}]]]
    path = tmp_path / "nonmf.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and not payload(out)["maurer_cartan"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mfquiver.cli", "euler", "--h", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "match"
