import json
import re
import subprocess
import sys

import pytest

from monodromy import __version__
from monodromy.checks import ACCEPTANCE_CHECK_IDS, REGISTRY, SUITES, checks_for
from monodromy.cli import main


def _strip_elapsed(text):
    return re.sub(r'"elapsed_ms": \d+', '"elapsed_ms": 0', text)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "all", "--prime", "4"],
        ["verify", "all", "--prime", "x"],
        ["verify", "nosuch"],
        ["verify", "transporter", "--prime", "89"],
        ["verify", "decomp", "--prime", "53"],
        ["verify", "ledger", "--seed", "1.5"],
        ["verify", "rootsys", "--suite", "ledger"],
        ["report", "--family", "Q", "--rank", "3"],
        ["report", "--family", "E", "--rank", "5"],
        ["report", "--family", "A"],
        [],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_registry_ids_and_anchors():
    ids = [c.check_id for c in checks_for("all")]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    assert all(c.anchor for c in REGISTRY.values())
    assert {c.suite for c in REGISTRY.values()} == set(SUITES)


def test_acceptance_numbers_map_to_distinct_checks():
    ids = list(ACCEPTANCE_CHECK_IDS.values())
    assert len(ids) == len(set(ids))
    for cid in ids:
        assert cid in REGISTRY
        assert REGISTRY[cid].anchor != "plumbing"


def test_verify_json_deterministic(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "monodromy", "verify", "ledger", "--json", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        outs.append(path.read_bytes())
    assert b"\r\n" not in outs[0]
    assert _strip_elapsed(outs[0].decode("utf-8")) == _strip_elapsed(outs[1].decode("utf-8"))
    doc = json.loads(outs[0])
    assert doc["schema_version"] == 1 and doc["tool_version"] == __version__
    ids = [c["check_id"] for c in doc["checks"]]
    assert ids == sorted(ids)
    assert {"ledger.slack.sp2n", "ledger.slack.e7"} <= set(ids)
    for c in doc["checks"]:
        assert set(c) == {"check_id", "paper_anchor", "status", "observed", "expected", "elapsed_ms"}
        assert c["status"] == "pass"
    slack = {c["check_id"]: c["observed"] for c in doc["checks"]}
    assert slack["ledger.slack.e7"] == 7
    assert slack["ledger.slack.sln"]["SL_9"] == 8


def test_verify_json_to_stdout(capsys):
    assert main(["verify", "--suite", "transporter", "--json", "-"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["parameters"]["suite"] == "transporter"
    assert doc["summary"] == {"pass": len(checks_for("transporter")), "fail": 0, "skipped": 0}


def _report(capsys, *args):
    assert main(["report", *args]) == 0
    return json.loads(capsys.readouterr().out)


def test_report_c3(capsys):
    doc = _report(capsys, "--family", "C", "--rank", "3", "--prime", "73")
    assert doc["decomposition"]["dims"] == [3, 6, 12]
    assert doc["ledger"]["weyl_slack"] == {"group": "Sp_6", "rhs": 5, "closed_form": 5}
    assert doc["orbits"]["weyl"] == [6, 12]
    assert doc["notes"] == []


def test_report_e7(capsys):
    doc = _report(capsys, "--family", "E", "--rank", "7")
    assert doc["decomposition"]["dims"] == [7, 56, 70]
    assert doc["ledger"]["weyl_slack"]["rhs"] == 7
    assert doc["h0"]["weyl_real_h0_bound"]["holds"]
    assert doc["orbits"]["alternating_part"] == [56, 70]


def test_report_a1_notes_exclusion(capsys):
    doc = _report(capsys, "--family", "A", "--rank", "1")
    assert any("SL_2" in n for n in doc["notes"])
    assert doc["decomposition"]["dims"] == [1, 2]


def test_report_without_construction(capsys):
    doc = _report(capsys, "--family", "G", "--rank", "2")
    assert doc["decomposition"] is None
    assert doc["h0"]["exponents"] == [1, 5]


def test_report_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["report", "--family", "B", "--rank", "4", "--json", str(a)]) == 0
    assert main(["report", "--family", "B", "--rank", "4", "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_failure_exit_code(monkeypatch, capsys):
    from monodromy import checks

    bad = checks.Check("zz.forced_failure", "ledger", "plumbing", lambda ctx: (False, 1, 2))
    monkeypatch.setitem(checks.REGISTRY, bad.check_id, bad)
    assert main(["verify", "ledger"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_console_script_version():
    proc = subprocess.run([sys.executable, "-m", "monodromy", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and __version__ in proc.stdout
