import json
import subprocess
import sys

import pytest

from qchiral.cli import main
from qchiral.properties import Samples


def _strip_timing(path):
    data = json.loads(path.read_text())
    for suite in data["suites"]:
        for rec in suite["records"]:
            rec.pop("elapsed")
    return data


def test_passing_subset_exits_zero(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "coaction,coinvariants", "--report", str(out)]) == 0
    data = json.loads(out.read_text())
    assert [s["suite"] for s in data["suites"]] == ["coaction", "coinvariants"]
    assert data["summary"]["failed"] == 0


def test_discrepancy_exits_one(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "plucker", "--report", str(out)]) == 1
    rec = next(r for r in json.loads(out.read_text())["suites"][0]["records"] if not r["pass"])
    assert rec["id"] == "pl.11" and rec["certificate"]["lhs_normal_form"]


def test_plucker_at_q1_is_clean():
    assert main(["--suite", "plucker", "--q", "1"]) == 0


def test_rational_q_other_than_one_keeps_the_discrepancy(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--suite", "plucker", "--q", "2/3", "--report", str(out)]) == 1
    rec = next(r for r in json.loads(out.read_text())["suites"][0]["records"] if not r["pass"])
    assert "symbolic_residue" in rec["certificate"]


@pytest.mark.parametrize("argv", [
    ["--suite", "no-such-suite"],
    ["--q", "0", "--suite", "plucker"],
    ["--q", "banana"],
    ["--jobs", "0"],
    ["--format", "yaml"],
    ["--samples", "confluence=lots"],
])
def test_configuration_errors_exit_two(argv):
    assert main(argv) == 2


def test_environment_override(monkeypatch, tmp_path):
    out = tmp_path / "r.md"
    monkeypatch.setenv("QCHIRAL_SUITE", "coaction")
    monkeypatch.setenv("QCHIRAL_FORMAT", "markdown")
    monkeypatch.setenv("QCHIRAL_REPORT", str(out))
    from qchiral import cli

    assert cli.main([]) == 0
    assert "| coaction | 34 | 0 |" in out.read_text()


def test_report_is_deterministic_across_workers(tmp_path):
    suites = "manin-properties,grassmann-cr,hopf-axioms,cleaving"
    r1, r3 = tmp_path / "1.json", tmp_path / "3.json"
    common = ["--suite", suites, "--samples", "confluence=40,associativity=20,morphism=10,counit=10,tensor=5,termination=10"]
    main(common + ["--jobs", "1", "--report", str(r1)])
    main(common + ["--jobs", "3", "--report", str(r3)])
    assert _strip_timing(r1) == _strip_timing(r3)


def test_samples_spec():
    assert Samples.parse("7") == Samples(*(7,) * len(Samples.__dataclass_fields__))
    assert Samples.parse("confluence=3").confluence == 3
    with pytest.raises(ValueError):
        Samples.parse("widgets=4")


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "qchiral", "--version"], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.startswith("qchiral ")
