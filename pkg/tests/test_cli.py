import os

import pytest

from galois_cover import build_parser, main


def case(cases_dir, name):
    return os.path.join(cases_dir, name)


def test_validate(cases_dir, capsys):
    assert main(["validate", case(cases_dir, "five_point.json")]) == 0
    assert "[INFO] valid" in capsys.readouterr().out


def test_bad_case_file_is_an_input_error(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("[1, 2")
    assert main(["validate", str(broken)]) == 1
    assert "[ERROR] CaseFormatError" in capsys.readouterr().out
    assert main(["validate", str(tmp_path / "absent.json")]) == 1


def test_present(cases_dir, capsys):
    assert main(["present", case(cases_dir, "quartic_chain.json")]) == 0
    out = capsys.readouterr().out
    assert "# Quartic (degree 4) (projective)" in out
    assert "# generators: 6" in out
    assert "# relators: 16" in out
    assert main(["present", "--affine", case(cases_dir, "quartic_chain.json")]) == 0
    assert "# relators: 15" in capsys.readouterr().out


def test_analyze_and_save(cases_dir, tmp_path, capsys):
    code = main(["--report-dir", str(tmp_path), "analyze", "--json", "--save",
                 case(cases_dir, "quartic_chain.json")])
    assert code == 0
    assert '"verdict": "IsoSymmetric"' in capsys.readouterr().out
    assert len(list(tmp_path.glob("report_*.json"))) == 1
    assert len(list(tmp_path.glob("report_*.txt"))) == 1


def test_probe(cases_dir, capsys):
    assert main(["probe", case(cases_dir, "quartic_chain.json"), "--element", "[g1, g3]"]) == 2
    out = capsys.readouterr().out
    assert "disjoint-transposition commutator" in out
    assert "verdict: inconclusive-zero" in out
    assert main(["probe", case(cases_dir, "quartic_chain.json"), "--element", "g9"]) == 1
    assert main(["probe", case(cases_dir, "quartic_chain.json"), "--element", "g1"]) == 1
    assert "verdict: not-in-kernel" in capsys.readouterr().out


def test_audit(cases_dir, capsys):
    assert main(["audit", case(cases_dir, "full_twist_p4.txt"), "--strands", "4"]) == 0
    assert "exponent_sum: 12" in capsys.readouterr().out
    assert main(["audit", case(cases_dir, "full_twist_p4.txt"), "--strands", "3"]) == 1


def test_view_without_sessions(tmp_path):
    assert main(["--report-dir", str(tmp_path), "view", "--latest"]) == 1


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    args = build_parser().parse_args(["audit", "f.txt", "--strands", "6"])
    assert args.strands == 6
