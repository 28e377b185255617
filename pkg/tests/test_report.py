import json
import warnings

import pytest

from bolza.errors import DomainError
from bolza.report import ReportDocument, RunConfig, export_report
from bolza.verify import literature_bounds, run_suite


def test_config_validation():
    assert RunConfig(2).cutoff
    for bad in (dict(genus=1), dict(genus=2, grid_n=0), dict(genus=2, ball_cutoff=-1.0), dict(genus=2, format="xml")):
        with pytest.raises(DomainError):
            RunConfig(**bad)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        RunConfig(60)
    assert caught


def test_empty_document(tmp_path, params2):
    doc = ReportDocument.build(RunConfig(2), params2)
    path = export_report(doc, tmp_path / "r.json")
    data = json.loads(path.read_text())
    assert data["checks"] == []
    assert set(data) == {"version", "config", "constants", "checks"}
    assert data["constants"]["R"] == pytest.approx(params2.R)


def test_round_trip_and_bytes(tmp_path, params2, ball2):
    suite = run_suite(params2, ball2, ["theorem2", "bounds"])
    doc = ReportDocument.from_suite(RunConfig(2), params2, suite)
    text = doc.to_json()
    again = ReportDocument.from_dict(json.loads(text))
    assert again.to_json() == text
    assert [c["name"] for c in json.loads(text)["checks"]] == ["theorem2", "bounds"]
    assert doc.passed


def test_csv(tmp_path, params2):
    rep = literature_bounds(params2, 3.0571418, params2.R)
    doc = ReportDocument.build(RunConfig(2), params2, [rep], [0.5])
    path = export_report(doc, tmp_path / "r.csv", "csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "name,pass,margin,samples,seconds"
    assert lines[1].startswith("bounds,True,")


def test_rejects_non_finite(params2):
    from bolza.verify import Part, VerificationReport

    rep = VerificationReport("x", [Part("p", float("nan"), 0.0)])
    with pytest.raises(DomainError):
        ReportDocument.build(RunConfig(2), params2, [rep], [0.0])


def test_unwritable_path(params2, tmp_path):
    doc = ReportDocument.build(RunConfig(2), params2)
    with pytest.raises(OSError):
        export_report(doc, tmp_path / "missing" / "r.json")
    with pytest.raises(DomainError):
        export_report(doc, tmp_path / "r.txt", "txt")
