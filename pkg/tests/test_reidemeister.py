import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation

from fpgroup.coset_enum import CosetTable, table_from_hom, todd_coxeter
from fpgroup.presentation import PermutationHom, Presentation, transposition
from fpgroup.words import power
from kernel_analysis.reidemeister import (NotInKernel, OpenTable, element_image,
                                          reidemeister_schreier)


def s3_hom():
    return PermutationHom(3, (transposition(1, 2, 3), transposition(2, 3, 3)))


def test_free_group_kernel_has_schreier_rank():
    free = Presentation(("x", "y"))
    kd = reidemeister_schreier(free, table_from_hom(free, s3_hom()))
    assert kd.index == 6
    assert len(kd.generators) == kd.raw_count == 6 * (2 - 1) + 1
    assert kd.presentation.relators == ()
    assert str(kd.abelian_reduction().invariants) == "Z^7"


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda g: st.lists(st.permutations(range(4)), min_size=g, max_size=g)))
def test_schreier_rank_formula(images):
    g = len(images)
    free = Presentation(tuple(f"x{i + 1}" for i in range(g)))
    hom = PermutationHom(4, tuple(Permutation(list(p)) for p in images))
    kd = reidemeister_schreier(free, table_from_hom(free, hom))
    assert len(kd.generators) == kd.index * (g - 1) + 1


def test_symmetric_group_has_trivial_kernel():
    s3 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 3)])
    kd = reidemeister_schreier(s3, table_from_hom(s3, s3_hom()))
    assert kd.abelian_reduction().invariants.is_trivial


def test_dihedral_kernel_is_central_z2():
    d6 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 6)])
    kd = reidemeister_schreier(d6, table_from_hom(d6, s3_hom()))
    assert str(kd.abelian_reduction().invariants) == "Z/2"
    center = power((1, 2), 3)
    image = element_image(center, kd)
    assert not image.is_zero
    assert element_image(center + center, kd).is_zero


def test_schreier_generators_rewrite_to_themselves():
    d6 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 6)])
    kd = reidemeister_schreier(d6, table_from_hom(d6, s3_hom()))
    for i, s in enumerate(kd.generators):
        assert kd.rewrite(s.word) == (i + 1,)
        rep = kd.representatives[s.coset]
        assert s.word[:len(rep)] == rep


def test_words_outside_the_subgroup_are_rejected():
    d6 = Presentation(("x", "y"), [(1, 1), (2, 2), power((1, 2), 6)])
    kd = reidemeister_schreier(d6, table_from_hom(d6, s3_hom()))
    with pytest.raises(NotInKernel):
        kd.rewrite((1,))


def test_kernel_of_an_enumerated_table():
    a5 = Presentation(("x", "y"), [(1, 1), power((2,), 3), power((1, 2), 5)])
    table = todd_coxeter(a5, [(2,)])
    assert isinstance(table, CosetTable) and table.index == 20
    kd = reidemeister_schreier(a5, table)
    assert len(kd.generators) == 20 * 2 - 19
    assert str(kd.abelian_reduction().invariants) == "Z/3"


def test_open_tables_are_rejected():
    p = Presentation(("x",), [(1, 1)])
    with pytest.raises(OpenTable):
        reidemeister_schreier(p, CosetTable(("x",), [[None, None]]))
