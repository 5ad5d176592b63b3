import json
from importlib import resources

import pytest

from qserre import algebras as A
from qserre import cli, report
from qserre.pbw import SpecDocumentError

FIXTURES = __import__("pathlib").Path(__file__).parent / "fixtures"


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_lemma12_json(capsys):
    code, out, err = _run(capsys, "verify", "lemma12")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "report/v1"
    assert doc["summary"] == {"pass": 6, "fail": 0, "discrepancy": 0}
    assert all(set(c) == {"id", "paper_anchor", "status", "residual", "note"} for c in doc["checks"])
    assert "6 pass" in err


def test_verify_writes_file_and_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert _run(capsys, "verify", "torus", "--out", str(a))[0] == 0
    assert _run(capsys, "verify", "torus", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert {c["id"]: c["status"] for c in doc["checks"]}["torus.T1T4"] == "discrepancy"


def test_usage_errors(capsys):
    assert _run(capsys, "verify", "nope")[0] == 2
    assert _run(capsys, "verify")[0] == 2
    assert _run(capsys, "explain", "no.such.id")[0] == 2
    assert _run(capsys, "verify", "lemma12", "--numeric-sample", "x", "1")[0] == 2
    assert _run(capsys, "hopf", "check")[0] == 2


def test_numeric_sample_note(capsys):
    code, out, _ = _run(capsys, "verify", "embedding", "--numeric-sample", "2", "3")
    assert code == 0
    notes = [c["note"] for c in json.loads(out)["checks"] if c["id"].startswith("embedding.rel")]
    assert all("numeric sample at r=2, s=3: 0" in n for n in notes)


def test_env_degbound(monkeypatch):
    monkeypatch.setenv("QSERRE_DEGBOUND", "5")
    assert report.Config().bound(6) == 5
    assert report.Config(degbound=7).bound(6) == 7
    monkeypatch.setenv("QSERRE_DEGBOUND", "five")
    with pytest.raises(report.ConfigError):
        report.Config().bound(6)


def test_ingest_shipped_spec(capsys):
    path = resources.files("qserre") / "data" / "u.json"
    alg = cli.ingest(str(path), "mine")
    assert alg.spec == A.build_u().spec
    assert cli.REGISTRY["mine"] is alg
    code, out, _ = _run(capsys, "ingest", str(path))
    assert code == 0 and "equal to built-in u" in out


def test_ingest_nonconfluent_spec(capsys):
    with pytest.raises(SpecDocumentError, match=r"overlap triple \(X4, X2, X1\)"):
        cli.ingest(str(FIXTURES / "u_nonconfluent.json"))
    code, _, err = _run(capsys, "ingest", str(FIXTURES / "u_nonconfluent.json"))
    assert code == 1 and "X4, X2, X1" in err


def test_ingest_reports_line_numbers(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "vars": ["a", "b"],\n  "q": {"(2,1)": "r +"}\n}\n')
    with pytest.raises(SpecDocumentError, match="line 3"):
        cli.ingest(str(bad))
    broken = tmp_path / "broken.json"
    broken.write_text('{\n  "vars": ["a"]\n  "q": {}\n}\n')
    with pytest.raises(SpecDocumentError, match=":3:"):
        cli.ingest(str(broken))


def test_explain_torus(capsys):
    code, out, _ = _run(capsys, "explain", "torus.T1T4")
    assert code == 0
    assert "T_{1}T_{4}=r^{2}T_{4}T_{2}" in out
    assert "T1 T4 = (r^2) T4 T1" in out


def test_derivations_scan(tmp_path, capsys):
    out = tmp_path / "d.json"
    assert _run(capsys, "derivations", "scan", "--window", "1", "--degbound", "5", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert doc["total_outer"] == 2 and doc["support"] == [[0, 0]]


def test_hopf_commands(capsys):
    code, out, _ = _run(capsys, "hopf", "verify", "--algebra", "vcheck")
    assert code == 0
    statuses = {c["id"]: c["status"] for c in json.loads(out)["checks"]}
    assert statuses["hopf.Vcheck.antipode_printed"] == "discrepancy"
    assert statuses["hopf.Vcheck.antipode_solved"] == "pass"
    code, out, _ = _run(capsys, "hopf", "check", "sigma=id", "a=1", "b=2", "c=1", "d=-3")
    assert code == 0 and json.loads(out)["automorphism"] is True
    assert _run(capsys, "hopf", "verify", "--algebra", "u")[0] == 2


def test_normalize(capsys):
    code, out, _ = _run(capsys, "normalize", "X4 X1")
    assert code == 0 and out.strip() == "(-1/r^2)*X2 + (1/r^2)*X1*X4"
    assert _run(capsys, "normalize", "X9")[0] == 1


def test_report_records_and_suites():
    rep = report.run_suite("derivations")
    disc = [c for c in rep.checks if c.status == "discrepancy"]
    assert [c.id for c in disc if "D2" in c.id] == ["der.D2_printed"]
    assert not rep.failed
    with pytest.raises(report.UnknownSuite):
        report.run_suite("bogus")
    with pytest.raises(ValueError):
        report.CheckRecord("x", "y", "maybe")
    timed = report.run_suite("gk-growth", report.Config(timing=True))
    assert "gk-growth" in timed.to_dict()["timing"]
    assert "timing" not in report.run_suite("gk-growth").to_dict()
