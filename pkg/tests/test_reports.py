import json

import pandas as pd

from pipeline import AnalysisReport, CorpusSummary, FixtureResult
from report_logger import AnalysisLogger
from report_viewer import ReportViewer, view


def sample_report(case="quartic", verdict="IsoSymmetric", invariants="0"):
    return AnalysisReport(case, planes=4, edges=3, vertices=4, verdict=verdict, cosets=24,
                          kernel_invariants=invariants, affine_invariants="Z^2")


def write_session(directory, label, reports):
    path = directory / f"report_{label}.json"
    path.write_text(json.dumps({"session_start": label, "session_duration_seconds": 1.5,
                                "reports": [r.to_dict() for r in reports]}))
    return str(path)


def test_logger_writes_a_session(tmp_path, capsys):
    session = AnalysisLogger(str(tmp_path / "out"))
    session.log_report(sample_report())
    session.save()
    with open(session.json_file) as f:
        data = json.load(f)
    assert data["total_reports"] == 1
    assert data["exit_codes"] == [0]
    assert data["reports"][0]["verdict"] == "IsoSymmetric"
    assert data["files"]["csv"] is None
    with open(session.text_file) as f:
        assert "ANALYSIS: quartic" in f.read()
    assert "[INFO] Session saved: 1 report(s)" in capsys.readouterr().out


def test_logger_writes_corpus_rows(tmp_path):
    session = AnalysisLogger(str(tmp_path))
    summary = CorpusSummary([FixtureResult("a", True, "IsoSymmetric", 120, "0", report=sample_report("a")),
                             FixtureResult("b", False, failures=["index 60, expected 120", "x"])])
    session.log_corpus(summary)
    session.save()
    table = pd.read_csv(session.csv_file)
    assert list(table["case"]) == ["a", "b"]
    assert list(table["passed"]) == [True, False]
    assert table.loc[1, "failures"] == "index 60, expected 120; x"
    assert len(session.reports) == 1


def test_empty_session_writes_nothing(tmp_path, capsys):
    AnalysisLogger(str(tmp_path / "never")).save()
    assert not (tmp_path / "never").exists()
    assert "[WARNING] No reports recorded" in capsys.readouterr().out


def test_viewer_loads_a_session(tmp_path):
    path = write_session(tmp_path, "1", [sample_report(), sample_report("veronese", "KernelNontrivial", "Z^8")])
    viewer = ReportViewer(str(tmp_path))
    assert viewer.list_available_sessions() == [path]
    df = viewer.load_session(path)
    assert list(df["case"]) == ["quartic", "veronese"]
    assert list(df["exit_code"]) == [0, 0]
    assert viewer.analyze_session(path) is not None


def test_viewer_compares_verdicts(tmp_path, capsys):
    first = write_session(tmp_path, "1", [sample_report()])
    second = write_session(tmp_path, "2", [sample_report(verdict="Inconclusive")])
    table = ReportViewer(str(tmp_path)).compare_sessions([first, second])
    assert list(table.columns[:2]) == ["1:verdict", "1:kernel_invariants"]
    assert "[WARNING] Verdict changed for: quartic" in capsys.readouterr().out
    assert ReportViewer(str(tmp_path)).compare_sessions([first]) is None


def test_view_exit_codes(tmp_path):
    assert view(str(tmp_path)) == 1
    write_session(tmp_path, "1", [sample_report()])
    assert view(str(tmp_path), latest=True) == 0
    assert view(str(tmp_path), session=5) == 1
    assert view(str(tmp_path)) == 0
