#!/usr/bin/env python3

"""
Van Kampen presentations of the branch-curve complement.

generate() instantiates the relation schema of every vertex, adds four
commutators per parasitic pair and (in projective mode) the relator
Gamma_m' Gamma_m ... Gamma_1' Gamma_1, and pairs the result with the map
to S_n sending Gamma_j and Gamma_j' to the transposition of edge j.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy.combinatorics import Permutation

from degeneration.model import PlanarDegeneration, edge_transposition, parasitic_pairs
from fpgroup.presentation import PermutationHom, Presentation, transposition
from fpgroup.words import Word, commutator, free_reduce
from vankampen.schemas import generator_id, generator_name, schema_for_vertex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSymbol:
    edge: int
    primed: bool = False

    @property
    def id(self) -> int:
        return generator_id(self.edge, self.primed)

    @property
    def name(self) -> str:
        return generator_name(self.edge, self.primed)

    @classmethod
    def from_id(cls, g: int) -> "GeneratorSymbol":
        return cls((g + 1) // 2, g % 2 == 0)


def generator_symbols(m: int) -> List[GeneratorSymbol]:
    return [GeneratorSymbol(j, primed) for j in range(1, m + 1) for primed in (False, True)]


@dataclass(frozen=True)
class SymmetricImage:
    """
    Gamma_j, Gamma_j' -> transposition of the planes of edge j.

    Attributes:
        degree: n
        transpositions: (a, b) per edge, edge j at position j-1
    """
    degree: int
    transpositions: Tuple[Tuple[int, int], ...]

    def of(self, symbol: GeneratorSymbol) -> Permutation:
        a, b = self.transpositions[symbol.edge - 1]
        return transposition(a, b, self.degree)

    def as_hom(self) -> PermutationHom:
        images = [self.of(GeneratorSymbol.from_id(g)) for g in range(1, 2 * len(self.transpositions) + 1)]
        return PermutationHom(self.degree, images)

    def swapped(self, i: int, j: int) -> "SymmetricImage":
        """Copy with the transpositions of edges i and j exchanged"""
        t = list(self.transpositions)
        t[i - 1], t[j - 1] = t[j - 1], t[i - 1]
        return SymmetricImage(self.degree, tuple(t))


@dataclass(frozen=True)
class GeneratedPresentation:
    """
    Attributes:
        presentation: generators g1, g1p, ..., gm, gmp and the relators
        image: the map to S_n
        structures: per relator, "equation", "commutator", "triple",
            "parasitic" or "projective"
        components: per relator, the (u, v) words of its bracket or
            equation form, empty for the projective relator
        projective: whether the projective relator is included
    """
    name: str
    presentation: Presentation
    image: SymmetricImage
    structures: Tuple[str, ...]
    components: Tuple[Tuple[Word, ...], ...]
    projective: bool
    schema_extrapolation: bool = False

    @property
    def provenance(self) -> Tuple[str, ...]:
        return self.presentation.provenance

    @property
    def hom(self) -> PermutationHom:
        return self.image.as_hom()


def projective_relator(m: int) -> Word:
    letters = []
    for j in range(m, 0, -1):
        letters.extend((generator_id(j, True), generator_id(j)))
    return tuple(letters)


def generate(d: PlanarDegeneration, projective: bool = True) -> GeneratedPresentation:
    """
    Van Kampen presentation of the complement of the branch curve of d.

    Raises:
        MissingSchema: a vertex kind or variant has no schema
        RoleArityMismatch: a vertex's roles do not fit its schema
    """
    relators: List[Word] = []
    tags: List[str] = []
    structures: List[str] = []
    components: List[Tuple[Word, ...]] = []

    for v in d.sorted_vertices():
        schema = schema_for_vertex(v)
        for k, r in enumerate(schema.instantiate(v.assignment())):
            relators.append(free_reduce(r.word))
            tags.append(f"vertex {v.id} {schema.kind.value}/{schema.variant} #{k + 1}: {r.template}")
            structures.append(r.structure)
            components.append(r.components)

    for i, j in sorted(parasitic_pairs(d)):
        for pi in (False, True):
            for pj in (False, True):
                x, y = (generator_id(i, pi),), (generator_id(j, pj),)
                relators.append(commutator(x, y))
                tags.append(f"parasitic ({i},{j}): [{generator_name(i, pi)}, {generator_name(j, pj)}]")
                structures.append("parasitic")
                components.append((x, y))

    if projective and d.m:
        relators.append(projective_relator(d.m))
        tags.append("projective")
        structures.append("projective")
        components.append(())

    names = tuple(s.name for s in generator_symbols(d.m))
    image = SymmetricImage(d.n, tuple(edge_transposition(d, j) for j in range(1, d.m + 1)))
    gp = GeneratedPresentation(d.name, Presentation(names, relators, tags), image,
                               tuple(structures), tuple(components), projective, d.schema_extrapolation)
    logger.info("%s: %d generators, %d relators (%s)", d.name, len(names), len(relators),
                "projective" if projective else "affine")
    return gp


def check_image_consistency(gp: GeneratedPresentation) -> bool:
    """True iff every relator maps to the identity of S_n"""
    return not gp.hom.failing_relators(gp.presentation)


def structure_problems(gp: GeneratedPresentation) -> List[str]:
    """
    Component-level checks: commutator and parasitic components have
    commuting images, parasitic pairs map to disjoint transpositions and
    triple components map to transpositions with exactly one common letter.
    """
    hom = gp.hom
    issues = []
    for i, (structure, parts) in enumerate(zip(gp.structures, gp.components)):
        if structure not in ("commutator", "parasitic", "triple"):
            continue
        x, y = (hom.image(part) for part in parts)
        tag = gp.presentation.tag(i)
        if structure in ("commutator", "parasitic") and x * y != y * x:
            issues.append(f"{tag}: component images do not commute")
        if structure == "parasitic" and set(x.support()) & set(y.support()):
            issues.append(f"{tag}: parasitic images are not disjoint")
        if structure == "triple":
            sx, sy = set(x.support()), set(y.support())
            if len(sx) != 2 or len(sy) != 2 or len(sx & sy) != 1:
                issues.append(f"{tag}: triple images are not transpositions sharing one letter")
    return issues


def edge_images(gp: GeneratedPresentation) -> Dict[str, str]:
    """generator name -> transposition, 1-based"""
    return {f"g{j + 1}": f"({a} {b})" for j, (a, b) in enumerate(gp.image.transpositions)}
