import pytest

from degeneration.model import parasitic_pairs
from fpgroup.presentation import Presentation
from vankampen.generate import (GeneratorSymbol, SymmetricImage,
                                check_image_consistency, edge_images, generate,
                                generator_symbols, projective_relator,
                                structure_problems)
from vankampen.schemas import get_schema

from test_degeneration import SHIPPED, chain


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_presentations_map_onto_s_n(load_case_file, name):
    d = load_case_file(name)
    gp = generate(d)
    assert gp.presentation.num_generators == 2 * d.m
    assert check_image_consistency(gp)
    assert structure_problems(gp) == []
    assert len(gp.structures) == len(gp.components) == len(gp.presentation.relators)
    assert len(gp.provenance) == len(gp.presentation.relators)


@pytest.mark.parametrize("name", SHIPPED)
def test_relator_count_adds_up(load_case_file, name):
    d = load_case_file(name)
    expected = 4 * len(parasitic_pairs(d)) + 1
    for v in d.vertices:
        expected += len(get_schema(v.vertex_kind, v.resolved_variant()).templates)
    assert len(generate(d).presentation.relators) == expected
    assert len(generate(d, projective=False).presentation.relators) == expected - 1


def test_generator_symbols():
    assert [s.name for s in generator_symbols(2)] == ["g1", "g1p", "g2", "g2p"]
    assert [s.id for s in generator_symbols(2)] == [1, 2, 3, 4]
    assert GeneratorSymbol.from_id(4) == GeneratorSymbol(2, True)
    assert GeneratorSymbol.from_id(5) == GeneratorSymbol(3, False)


def test_projective_relator():
    assert projective_relator(3) == (6, 5, 4, 3, 2, 1)


def test_relators_are_ordered_and_tagged(load_case_file):
    d = load_case_file("cp1xcp1_plus_plane.json")
    gp = generate(d)
    tags = gp.provenance
    assert tags[0] == "vertex 1 one_point/branch #1: a = a'"
    assert tags[-1] == "projective"
    parasitic = [t for t in tags if t.startswith("parasitic")]
    assert parasitic[0] == "parasitic (1,4): [g1, g4]"
    assert len(parasitic) == 8
    assert parasitic[-1] == "parasitic (2,4): [g2p, g4p]"
    assert gp.structures[-1] == "projective"
    assert gp.presentation.relators[-1] == projective_relator(4)


def test_affine_mode_drops_the_projective_relator(load_case_file):
    gp = generate(load_case_file("five_point.json"), projective=False)
    assert "projective" not in gp.structures
    assert not gp.projective


def test_edge_images(load_case_file):
    gp = generate(load_case_file("cayley_type2.json"))
    assert edge_images(gp) == {"g1": "(1 2)", "g2": "(1 3)", "g3": "(3 4)", "g4": "(2 3)", "g5": "(4 5)"}
    hom = gp.hom
    assert hom.images[0] == hom.images[1]


def test_wrong_plane_numbering_is_caught(load_case_file):
    gp = generate(load_case_file("cayley_type2.json"))
    swapped = type(gp)(gp.name, gp.presentation, gp.image.swapped(1, 5), gp.structures,
                       gp.components, gp.projective)
    assert not check_image_consistency(swapped)
    assert structure_problems(swapped)


def test_chain_of_two_points():
    gp = generate(chain(4))
    assert check_image_consistency(gp)
    assert gp.image == SymmetricImage(4, ((1, 2), (2, 3), (3, 4)))
    assert isinstance(gp.presentation, Presentation)
    assert gp.presentation.parse("g1 g1p^-1").word in gp.presentation.relators
