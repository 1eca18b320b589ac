#!/usr/bin/env python3

"""
Finitely presented groups and permutation homomorphisms.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from sympy.combinatorics import Permutation

from fpgroup.words import (Word, WordSyntaxError, cyclic_reduce, format_word,
                           parse_element)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Presentation:
    """
    A finitely presented group < generators | relators >.

    Generator ids are 1-based positions in ``generators``. Relators are
    stored cyclically reduced; ``provenance`` (when given) runs parallel
    to ``relators`` and tags where each relator came from.
    """
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...] = ()
    provenance: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        relators = tuple(cyclic_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", relators)
        provenance = tuple(self.provenance)
        if provenance and len(provenance) != len(relators):
            raise ValueError(f"Provenance has {len(provenance)} tags for {len(relators)} relators")
        object.__setattr__(self, "provenance", provenance)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"Duplicate generator names in {self.generators}")
        count = len(self.generators)
        for relator in relators:
            for letter in relator:
                if letter == 0 or abs(letter) > count:
                    raise ValueError(f"Relator letter {letter} outside generators 1..{count}")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def tag(self, i: int) -> str:
        return self.provenance[i] if self.provenance else ""

    def generator_id(self, name: str) -> int:
        """Resolve a generator name; ``g3'`` is accepted for ``g3p``"""
        lookup = self._name_index()
        if name in lookup:
            return lookup[name]
        if name.endswith("'") and name[:-1] + "p" in lookup:
            return lookup[name[:-1] + "p"]
        raise WordSyntaxError(f"Unknown generator {name!r}")

    def _name_index(self) -> Dict[str, int]:
        cached = self.__dict__.get("_names")
        if cached is None:
            cached = {name: i + 1 for i, name in enumerate(self.generators)}
            object.__setattr__(self, "_names", cached)
        return cached

    def parse(self, text: str):
        return parse_element(text, self.generator_id)

    def format(self, word: Sequence[int]) -> str:
        return format_word(word, self.generators)

    def with_relators(self, relators, provenance=()) -> "Presentation":
        """Copy with extra relators appended"""
        relators = tuple(relators)
        tags = ()
        if self.provenance or provenance:
            tags = (self.provenance or ("",) * len(self.relators)) + (tuple(provenance) or ("",) * len(relators))
        return Presentation(self.generators, self.relators + relators, tags)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self):
        return f"<{self.num_generators} generators | {len(self.relators)} relators, length {self.total_length()}>"


def add_square_relators(p: Presentation) -> Presentation:
    """Append g^2 for every generator g (the squares quotient)"""
    squares = [(g, g) for g in range(1, p.num_generators + 1)]
    tags = [f"square {name}" for name in p.generators]
    return p.with_relators(squares, tags)


def dump_presentation(p: Presentation, title: str = "") -> str:
    """
    Text form: header comments, one generator per line, then one relator
    per line with its provenance as a trailing comment.
    """
    lines = []
    if title:
        lines.append(f"# {title}")
    lines.append(f"# generators: {p.num_generators}")
    lines.append(f"# relators: {len(p.relators)}")
    lines.extend(p.generators)
    lines.append("#")
    for i, relator in enumerate(p.relators):
        text = p.format(relator)
        tag = p.tag(i)
        lines.append(f"{text}  # {tag}" if tag else text)
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Read back the output of dump_presentation"""
    generators = []
    relator_lines = []
    in_relators = False
    for raw in text.splitlines():
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            if raw.strip() == "#" and generators:
                in_relators = True
            continue
        if not in_relators:
            generators.append(body)
        else:
            relator_lines.append((body, comment.strip()))
    p = Presentation(tuple(generators))
    words, tags = [], []
    for body, tag in relator_lines:
        words.append(p.parse(body).word if body != "e" else ())
        tags.append(tag)
    return Presentation(p.generators, words, tags)


@dataclass(frozen=True)
class PermutationHom:
    """
    A map from the generators of a presentation to permutations of 1..n.

    Permutations are sympy ``Permutation`` objects on 0..n-1; products are
    read left to right (apply the first letter first), matching sympy's
    ``p * q`` convention.
    """
    degree: int
    images: Tuple[Permutation, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        for image in self.images:
            if image.size != self.degree:
                raise ValueError(f"Image {image} is not a permutation of degree {self.degree}")

    def identity(self) -> Permutation:
        return Permutation(list(range(self.degree)))

    def image(self, word: Sequence[int]) -> Permutation:
        result = self.identity()
        for letter in word:
            g = self.images[abs(letter) - 1]
            result = result * (g if letter > 0 else ~g)
        return result

    def is_total_on(self, p: Presentation) -> bool:
        return len(self.images) == p.num_generators

    def failing_relators(self, p: Presentation):
        """Indices of relators whose image is not the identity"""
        return [i for i, r in enumerate(p.relators) if not self.image(r).is_Identity]

    def is_consistent(self, p: Presentation) -> bool:
        return self.is_total_on(p) and not self.failing_relators(p)


def transposition(a: int, b: int, n: int) -> Permutation:
    """The transposition (a b) of 1..n as a 0-based sympy permutation"""
    return Permutation([[a - 1, b - 1]], size=n)


def cycle_notation(perm: Permutation) -> str:
    """1-based cycle notation, '()' for the identity"""
    cycles = [c for c in perm.cyclic_form if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)
