import os

import pytest

from braids.audit import (Factorization, FactorizationSyntaxError,
                          HalfTwistFactor, UnknownCompound, audit,
                          audit_factorization, expand, exponent_sum,
                          format_permutation, full_twist_degree,
                          induced_permutation, parse_factorization,
                          strand_labels)


def test_vertex5_table(cases_dir):
    result = audit(os.path.join(cases_dir, "quintic_fan_vertex5_table.txt"), 6)
    assert result.factors == 11
    assert result.exponent_sum == 26
    assert result.permutation == "(1 2)(4 5)"
    assert len(result.unresolved) == 1
    assert result.full_degree_ok is None
    assert result.passed


def test_vertex5_local_factorization(cases_dir):
    result = audit(os.path.join(cases_dir, "quintic_fan_vertex5_local.txt"), 8)
    assert result.factors == 12
    assert result.atoms == 23
    assert result.exponent_sum == 53


@pytest.mark.parametrize("name,p", [("full_twist_p4.txt", 4), ("full_twist_p10.txt", 10)])
def test_full_twists(cases_dir, name, p):
    result = audit(os.path.join(cases_dir, name), p)
    assert result.exponent_sum == full_twist_degree(p) == p * (p - 1)
    assert result.permutation == "()"
    assert result.full_degree_ok and result.full_permutation_ok
    assert result.passed


def test_short_full_twist_fails():
    text = "@labels plain\n@full\n" + "Z1 1 2\nZ1 2 3\nZ1 3 4\n" * 3
    result = audit_factorization(parse_factorization(text, 4))
    assert result.exponent_sum == 9
    assert result.full_degree_ok is False
    assert result.full_permutation_ok is False
    assert not result.passed


def test_expand_doubled_supports():
    node = HalfTwistFactor(("1", "1'"), ("4", "4'"), 2)
    assert [a.support_label() for a in expand(node)] == ["1,4", "1,4'", "1',4", "1',4'"]

    cusp = HalfTwistFactor(("1",), ("2", "2'"), 3)
    atoms = expand(cusp)
    assert len(atoms) == 3
    assert atoms[0].conjugators == ()
    assert atoms[1].conjugators[0].support_label() == "2,2'"
    assert atoms[2].conjugators[0].exponent == -1
    assert all(a.exponent == 3 for a in atoms)

    mirrored = HalfTwistFactor(("1", "1'"), ("2",), 2)
    assert [a.support_label() for a in expand(mirrored)] == ["1,2", "1',2"]


def test_negative_exponent_reverses_the_atoms():
    node = HalfTwistFactor(("1",), ("2", "2'"), -2)
    assert [a.support_label() for a in expand(node)] == ["1,2'", "1,2"]


def test_unknown_compounds():
    with pytest.raises(UnknownCompound):
        expand(HalfTwistFactor(("1",), ("2", "2'"), 4))
    with pytest.raises(UnknownCompound):
        expand(HalfTwistFactor(("1", "1'"), ("2", "2'"), 3))


def test_conjugation_moves_the_transposition():
    F = parse_factorization("@labels plain\nZ1 1 2 ^ Z1 2 3\n", 3)
    assert format_permutation(induced_permutation(F), F.labels) == "(1 3)"
    even = parse_factorization("@labels plain\nZ2 1 2 ^ Z1 2 3\n", 3)
    assert induced_permutation(even).is_Identity
    assert exponent_sum(even) == 2


def test_doubled_labels_are_the_default():
    F = parse_factorization("Z1 1 1'  # branch point\n~Z2 1' 2\n", 4)
    assert F.labels == ("1", "1'", "2", "2'")
    assert F.factors[1].bar
    assert str(F.factors[1]).startswith("~Z^2")
    assert format_permutation(induced_permutation(F), F.labels) == "(1 1')"


@pytest.mark.parametrize("text", [
    "Z2 1",
    "Z0 1 2",
    "Z-1 1 2",
    "Z1 1 1",
    "Z1 1 9",
    "Z1 {1 2 3} 4",
    "Z1 1 2 ^",
    "Z1 1 2 3",
    "@bogus",
    "@labels sideways",
    "1 2",
])
def test_malformed_lines(text):
    with pytest.raises(FactorizationSyntaxError):
        parse_factorization("@labels plain\n" + text + "\n", 4)


def test_strand_labels():
    assert strand_labels(3, "plain") == ("1", "2", "3")
    assert strand_labels(4, "doubled") == ("1", "1'", "2", "2'")
    with pytest.raises(ValueError):
        strand_labels(3, "doubled")


def test_factorization_rejects_foreign_labels():
    with pytest.raises(ValueError):
        Factorization(3, [HalfTwistFactor(("1",), ("7",))])


def test_audit_result_dict():
    result = audit_factorization(parse_factorization("@labels plain\nZ1 1 2\n", 2), "inline")
    data = result.to_dict()
    assert data["source"] == "inline"
    assert data["strands"] == 2
    assert data["permutation"] == "(1 2)"
    assert data["full_degree_ok"] is None
