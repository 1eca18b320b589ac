import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from fpgroup.coset_enum import (CosetTable, EnumerationLimits, InconsistentHom,
                                NonSurjective, Overflow, Verdict,
                                certify_symmetric, check_surjective,
                                table_from_hom, todd_coxeter)
from fpgroup.presentation import PermutationHom, Presentation, transposition
from fpgroup.words import commutator, power


def sympy_group(p):
    F = free_group(", ".join(p.generators))[0]
    gens = F.generators

    def element(word):
        result = F.identity
        for letter in word:
            g = gens[abs(letter) - 1]
            result = result * (g if letter > 0 else g ** -1)
        return result

    return FpGroup(F, [element(r) for r in p.relators]), element


PRESENTATIONS = {
    "s3": Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 3)]),
    "s4": Presentation(("x", "y"), [(1, 1), power((2,), 3), power((1, 2), 4)]),
    "a5": Presentation(("x", "y"), [(1, 1), power((2,), 3), power((1, 2), 5)]),
    "coxeter_s4": Presentation(("a", "b", "c"), [(1, 1), (2, 2), (3, 3), power((1, 2), 3),
                                                 power((2, 3), 3), commutator((1,), (3,))]),
    "quaternion": Presentation(("i", "j"), [power((1,), 4), (1, 1, -2, -2), (1, 2, 1, -2)]),
}


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_trivial_subgroup_matches_sympy_order(name):
    p = PRESENTATIONS[name]
    table = todd_coxeter(p)
    assert isinstance(table, CosetTable)
    G, _ = sympy_group(p)
    assert table.index == G.order()
    assert table.problems(p) == []


@pytest.mark.parametrize("name,subgroup", [
    ("coxeter_s4", [(1,)]),
    ("coxeter_s4", [(1,), (2,)]),
    ("a5", [(2,)]),
    ("a5", [(1,), (2, 1, -2)]),
])
def test_subgroup_index_matches_sympy(name, subgroup):
    p = PRESENTATIONS[name]
    table = todd_coxeter(p, subgroup)
    assert isinstance(table, CosetTable)
    G, element = sympy_group(p)
    assert table.index == G.index([element(w) for w in subgroup])
    assert table.problems(p) == []


def test_table_is_standardized():
    table = todd_coxeter(PRESENTATIONS["s4"])
    seen = [0]
    for row in table.rows:
        for x in row:
            if x not in seen:
                assert x == len(seen)
                seen.append(x)
    assert table.as_array().shape == (24, 4)


def test_infinite_group_overflows():
    z2 = Presentation(("x", "y"), [commutator((1,), (2,))])
    result = todd_coxeter(z2, (), EnumerationLimits(max_cosets=60, lookahead_rounds=1))
    assert isinstance(result, Overflow)
    assert result.max_cosets == 60
    assert "Overflow" in str(result)


def test_limits_must_be_positive():
    with pytest.raises(ValueError):
        EnumerationLimits(max_cosets=0)


@settings(max_examples=20, deadline=None)
@given(st.permutations(list(PRESENTATIONS["coxeter_s4"].relators)))
def test_coset_count_ignores_relator_order(relators):
    p = Presentation(("a", "b", "c"), relators)
    table = todd_coxeter(p)
    assert isinstance(table, CosetTable)
    assert table.index == 24


def s3_hom():
    return PermutationHom(3, (transposition(1, 2, 3), transposition(2, 3, 3)))


def test_table_from_hom_is_the_regular_action():
    p = PRESENTATIONS["s3"]
    table = table_from_hom(p, s3_hom())
    assert table.index == 6
    assert table.label == "kernel"
    assert table.problems(p) == []
    assert np.array_equal(table.as_array()[0], [1, 1, 2, 2])
    assert table.dump().splitlines()[2] == "# cosets: 6"


def test_table_from_hom_rejects_inconsistent_maps():
    p = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 2)])
    with pytest.raises(InconsistentHom):
        table_from_hom(p, s3_hom())
    with pytest.raises(InconsistentHom):
        table_from_hom(p, PermutationHom(3, (transposition(1, 2, 3),)))


def test_problems_flag_broken_tables():
    table = CosetTable(("x",), [[1, 1], [0, 0]])
    assert table.problems(Presentation(("x",), [(1, 1)])) == []
    assert table.problems(Presentation(("x",), [(1,)])) != []
    assert CosetTable(("x",), [[None, 0]]).problems() == ["table has undefined entries"]
    assert "not inverse" in " ".join(CosetTable(("x",), [[1, 1], [0, 1]]).problems())


def test_certify_symmetric_on_s3():
    certificate = certify_symmetric(PRESENTATIONS["s3"], s3_hom())
    assert certificate.verdict is Verdict.ISO_SYMMETRIC
    assert certificate.cosets == 6


def test_certify_symmetric_finds_a_larger_group():
    d6 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 6)])
    certificate = certify_symmetric(d6, s3_hom())
    assert certificate.verdict is Verdict.KERNEL_NONTRIVIAL
    assert certificate.cosets == 12


def test_certify_symmetric_uses_kernel_evidence():
    d6 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 6)])
    certificate = certify_symmetric(d6, s3_hom(), kernel_nonzero=True)
    assert certificate.verdict is Verdict.KERNEL_NONTRIVIAL
    assert certificate.cosets is None


def test_certify_symmetric_overflow_is_inconclusive():
    infinite_dihedral = Presentation(("x", "y"), [(1, 1), (2, 2)])
    certificate = certify_symmetric(infinite_dihedral, s3_hom(), EnumerationLimits(max_cosets=30, lookahead_rounds=1))
    assert certificate.verdict is Verdict.INCONCLUSIVE
    assert certificate.overflow is not None


def test_non_surjective_hom_is_rejected():
    h = PermutationHom(3, (transposition(1, 2, 3), transposition(1, 2, 3)))
    with pytest.raises(NonSurjective):
        check_surjective(h)
    with pytest.raises(NonSurjective):
        certify_symmetric(PRESENTATIONS["s3"], h)
