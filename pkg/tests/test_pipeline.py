import json
import os

import pytest

import pipeline
from degeneration.model import Edge, PlanarDegeneration, Vertex
from kernel_analysis.abelian import AbelianInvariants
from pipeline import (AnalysisReport, CaffProbe, CaseFixture, FixtureResult, CorpusSummary,
                      analyze, analyze_quotient, caff_probe, check_expectations,
                      load_fixtures, probe_elements, probe_exit_code, report_json,
                      run_corpus, run_fixture)
from vankampen.schemas import MissingSchema

from test_degeneration import SHIPPED


def test_quartic_quotients(load_case_file, params):
    d = load_case_file("quartic_chain.json")
    for projective in (True, False):
        qa = analyze_quotient(d, projective, params)
        assert qa.image_order == 24
        assert qa.hom.is_consistent(qa.presentation)
        assert len(qa.kernel.generators) == qa.kernel.raw_count
        assert qa.crosscheck == "agree"
        assert qa.index_check == 24
        assert qa.failures() == []
    assert qa.mode == "affine"
    assert qa.to_dict()["image_order"] == 24


def test_quartic_report(load_case_file, params):
    report = analyze(load_case_file("quartic_chain.json"), params)
    assert report.errors == [] and report.failures == []
    assert report.verdict == "IsoSymmetric"
    assert report.cosets == 24
    assert report.kernel_invariants == "0"
    assert report.vertex_arity == {1: 1, 2: 1, 3: 1, 4: 3}
    assert report.image_map == {"g1": "(1 2)", "g2": "(2 3)", "g3": "(3 4)"}
    assert report.exit_code == 0
    data = json.loads(report_json(report))
    assert data["verdict"] == "IsoSymmetric"
    assert data["projective"]["image_order"] == 24
    assert "ANALYSIS: Quartic (degree 4)" in report.to_text()


def test_invalid_degeneration_is_reported_not_raised(params):
    d = PlanarDegeneration("broken", 3, (Edge(1, (1, 2, 3)),), (Vertex(1, (1,), "one_point"),))
    report = analyze(d, params)
    assert report.errors
    assert report.verdict is None
    assert report.exit_code == 1


def test_schema_errors_become_report_errors(load_case_file, params, monkeypatch):
    d = load_case_file("quartic_chain.json")

    def missing(*args, **kwargs):
        raise MissingSchema("no schema for three_point/unknown")
    monkeypatch.setattr(pipeline, "generate", missing)
    report = analyze(d, params)
    assert report.errors == ["MissingSchema: no schema for three_point/unknown"]
    assert report.exit_code == 1


def test_unexpected_value_errors_propagate(load_case_file, params, monkeypatch):
    def broken(*args, **kwargs):
        raise ValueError("bug")
    monkeypatch.setattr(pipeline, "generate", broken)
    with pytest.raises(ValueError, match="bug"):
        analyze(load_case_file("quartic_chain.json"), params)


@pytest.mark.parametrize("name,projective,invariants", [
    ("cp1xcp1_plus_plane.json", True, "0"),
    ("quartic_4point_plus_plane.json", True, "0"),
    ("five_point.json", True, "0"),
    ("quintic_4point_fan.json", True, "0"),
    ("veronese_plus_plane.json", False, "Z^5"),
    ("cayley_type1.json", False, "(Z/2)^14"),
    ("cayley_type2.json", False, "(Z/2)^9"),
])
def test_kernel_of_each_case(load_case_file, params, name, projective, invariants):
    qa = analyze_quotient(load_case_file(name), projective, params)
    assert qa.image_order == 120
    assert qa.invariants == AbelianInvariants.parse(invariants)
    assert qa.failures() == []


def test_commutator_in_cayley_type_two_has_order_two(load_case_file, params):
    qa = analyze_quotient(load_case_file("cayley_type2.json"), False, params)
    (probe,) = probe_elements(qa, ["[g3 g4 g3^-1, g2^-1]"])
    assert probe.classification == "disjoint-transposition commutator"
    assert probe.components == ["(2 4)", "(1 3)"]
    assert probe.verdict == "nontrivial"
    assert probe.order == 2
    assert len(probe.image) == 9
    assert probe_exit_code([probe]) == 0


def test_probe_exit_code():
    def probe(verdict):
        return CaffProbe("x", "affine", "unclassified", verdict)
    assert probe_exit_code([probe("nontrivial")]) == 0
    assert probe_exit_code([probe("nontrivial"), probe("inconclusive-zero")]) == 2
    assert probe_exit_code([probe("inconclusive-zero"), probe("not-in-kernel")]) == 1
    assert probe_exit_code([]) == 1


def test_published_value_that_disagrees_is_a_note(load_case_file, params):
    d = load_case_file("quartic_chain.json")
    fixture = CaseFixture("quartic_chain.json", d, {"invariants": "0", "published_invariants": "Z^3"})
    result = run_fixture(fixture, params)
    assert result.passed
    assert result.notes == ["published kernel invariants Z^3 differ from computed 0"]
    assert result.notes[0] in result.report.notes


def test_probe_classification(load_case_file, params):
    d = load_case_file("quartic_chain.json")
    probes = caff_probe(d, ["[g1, g3]", "<g2, g1>", "g1", "g1 g2"], params)
    by_element = {p.element: p for p in probes}
    assert by_element["[g1, g3]"].classification == "disjoint-transposition commutator"
    assert by_element["[g1, g3]"].components == ["(1 2)", "(3 4)"]
    assert by_element["[g1, g3]"].verdict == "inconclusive-zero"
    assert by_element["<g2, g1>"].classification == "one-common-letter triple relation"
    assert by_element["g1"].verdict == "not-in-kernel"
    assert by_element["g1 g2"].classification == "unclassified"
    assert all(p.mode == "affine" for p in probes)
    assert "g x g^-1" in probes[0].to_dict()["note"]


def report_with(**fields):
    report = AnalysisReport("case")
    for key, value in fields.items():
        setattr(report, key, value)
    return report


def test_check_expectations():
    report = report_with(verdict="KernelNontrivial", projective={"image_order": 120},
                         kernel_invariants="Z^4 + Z/2", affine_invariants="Z^8",
                         torsion_two_power=True)
    assert check_expectations(report, {"verdict": "KernelNontrivial", "index": 120,
                                       "invariants": "Z/2 + Z^4", "torsion_two_power": True,
                                       "max_free_rank": 4, "affine_invariants": "Z^8"}) == []
    failures = check_expectations(report, {"verdict": "IsoSymmetric", "index": 24, "max_free_rank": 2,
                                           "invariants": "0"})
    assert len(failures) == 4


def test_exit_codes():
    assert report_with().exit_code == 0
    assert report_with(verdict="Inconclusive").exit_code == 2
    assert report_with(affine={"budget_exceeded": True}).exit_code == 2
    assert report_with(verdict="Inconclusive", failures=["x"]).exit_code == 1
    summary = CorpusSummary([FixtureResult("a", True), FixtureResult("b", True, inconclusive=True)])
    assert summary.exit_code == 2
    summary.results.append(FixtureResult("c", False))
    assert (summary.passed, summary.failed, summary.exit_code) == (2, 1, 1)


def test_fixture_files(cases_dir):
    fixtures = load_fixtures(cases_dir)
    assert len(fixtures) == len(SHIPPED)
    fan = next(f for f in fixtures if f.path.endswith("quintic_4point_fan.json"))
    assert fan.factorization == (os.path.join(cases_dir, "quintic_fan_vertex5_table.txt"), 6)
    cayley = next(f for f in fixtures if f.path.endswith("cayley_type2.json"))
    assert cayley.probes[0]["element"] == "[g3 g4 g3^-1, g2^-1]"
    assert cayley.probes[0]["order"] == 2
    veronese = next(f for f in fixtures if f.path.endswith("veronese_plus_plane.json"))
    assert (veronese.expected["invariants"], veronese.expected["published_invariants"]) == ("Z^5", "Z^8")
    for fixture in fixtures:
        for key in fixture.expected.get("provenance", {}):
            assert key in fixture.expected or key == "probes"
            assert fixture.expected["provenance"][key] in ("PUBLISHED", "DERIVED", "TRIVIAL")


def test_validation_only_fixture(cases_dir, params):
    fixture = CaseFixture.from_file(os.path.join(cases_dir, "hirzebruch_f1.json"))
    result = run_fixture(fixture, params)
    assert result.passed
    assert result.report is None
    assert fixture.degeneration.schema_extrapolation


@pytest.mark.slow
@pytest.mark.parametrize("name", [n for n in SHIPPED if n != "hirzebruch_f1.json"])
def test_shipped_case_meets_expectations(cases_dir, params, name):
    result = run_fixture(CaseFixture.from_file(os.path.join(cases_dir, name)), params)
    assert result.passed, "\n".join(result.failures)
    assert result.index == (24 if name == "quartic_chain.json" else 120)
    assert bool(result.notes) == (name == "veronese_plus_plane.json")


@pytest.mark.slow
def test_corpus_run(cases_dir, params):
    summary = run_corpus(load_fixtures(cases_dir), params)
    assert summary.failed == 0, [r.failures for r in summary.results if not r.passed]
    assert [row["case"] for row in summary.rows()] == [r.case for r in summary.results]
