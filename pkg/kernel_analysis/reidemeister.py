#!/usr/bin/env python3

"""
Reidemeister-Schreier presentations of finite-index subgroups.

Given a closed coset table of a presentation over a subgroup H, the
Schreier generators are the non-tree edges of a breadth-first spanning
tree of the coset graph, and the relators are the rewrites of every
relator traced from every coset.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from fpgroup.coset_enum import CosetTable, column
from fpgroup.presentation import Presentation
from fpgroup.words import Word, cyclic_key, cyclic_reduce, exponent_sums, free_reduce, invert
from kernel_analysis.abelian import AbelianImage, AbelianReduction, abelian_reduction

logger = logging.getLogger(__name__)


class OpenTable(ValueError):
    """Raised when the coset table still has undefined entries"""


class NotInKernel(ValueError):
    """Raised when a word does not lie in the subgroup of the table"""


@dataclass(frozen=True)
class SchreierGenerator:
    """
    s = rep(coset) x rep(coset^x)^-1 for a non-tree edge.

    Attributes:
        coset: 0-based source coset
        generator: ambient generator id x
        word: the ambient word rep(coset) x rep(target)^-1
    """
    coset: int
    generator: int
    word: Word


@dataclass
class KernelData:
    """
    Presentation of the subgroup of a coset table.

    Attributes:
        ambient: the presentation the table acts on
        table: the closed coset table
        representatives: coset representatives (ambient words)
        generators: Schreier generators, kernel generator i+1 is generators[i]
        presentation: kernel presentation on s1, s2, ...
        raw_count: index * (ambient generators) - (index - 1)
    """
    ambient: Presentation
    table: CosetTable
    representatives: List[Word]
    generators: List[SchreierGenerator]
    presentation: Presentation
    labels: Dict[Tuple[int, int], int] = field(repr=False, default_factory=dict)
    _reduction: Optional[AbelianReduction] = field(default=None, repr=False)

    @property
    def index(self) -> int:
        return self.table.index

    @property
    def raw_count(self) -> int:
        return self.index * self.ambient.num_generators - (self.index - 1)

    def trace(self, coset: int, word: Sequence[int]) -> Tuple[Word, int]:
        """Rewrite ``word`` read from ``coset``; returns (kernel word, end coset)"""
        rows = self.table.rows
        out: List[int] = []
        for letter in word:
            if letter > 0:
                label = self.labels[(coset, letter)]
                if label:
                    out.append(label)
                coset = rows[coset][column(letter)]
            else:
                previous = rows[coset][column(letter)]
                label = self.labels[(previous, -letter)]
                if label:
                    out.append(-label)
                coset = previous
        return free_reduce(out), coset

    def rewrite(self, word: Sequence[int]) -> Word:
        """Kernel word equal to an ambient word lying in the subgroup"""
        kernel_word, end = self.trace(0, word)
        if end != 0:
            raise NotInKernel(f"{self.ambient.format(word)} ends at coset {end + 1}, not in the subgroup")
        return kernel_word

    def abelian_reduction(self) -> AbelianReduction:
        if self._reduction is None:
            self._reduction = abelian_reduction(self.presentation)
        return self._reduction


def _spanning_tree(table: CosetTable):
    """Breadth-first tree from coset 0; returns representatives and tree edges"""
    reps: List[Optional[Word]] = [None] * table.index
    reps[0] = ()
    tree = {}
    order = [0]
    for c in order:
        for col, target in enumerate(table.rows[c]):
            if reps[target] is None:
                letter = col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)
                reps[target] = reps[c] + (letter,)
                tree[target] = (c, col)
                order.append(target)
    return reps, tree


def reidemeister_schreier(p: Presentation, t: CosetTable) -> KernelData:
    """
    Presentation of the subgroup whose coset table is t.

    Raises:
        OpenTable: t has undefined entries
    """
    if not t.is_closed():
        raise OpenTable("Reidemeister-Schreier needs a closed coset table")
    if len(t.generators) != p.num_generators:
        raise ValueError(f"Table has {len(t.generators)} generators, presentation {p.num_generators}")
    reps, tree = _spanning_tree(t)
    labels: Dict[Tuple[int, int], int] = {}
    generators: List[SchreierGenerator] = []
    for c in range(t.index):
        for g in range(1, p.num_generators + 1):
            col = column(g)
            target = t.rows[c][col]
            if tree.get(target) == (c, col) or tree.get(c) == (target, col ^ 1):
                labels[(c, g)] = 0
                continue
            word = free_reduce(reps[c] + (g,) + invert(reps[target]))
            generators.append(SchreierGenerator(c, g, word))
            labels[(c, g)] = len(generators)
    names = tuple(f"s{i + 1}" for i in range(len(generators)))
    kd = KernelData(p, t, reps, generators, Presentation(names), labels)

    relators, tags, seen = [], [], set()
    for c in range(t.index):
        for i, relator in enumerate(p.relators):
            rewritten, end = kd.trace(c, relator)
            if end != c:
                raise OpenTable(f"Relator {i} does not close at coset {c + 1}")
            rewritten = cyclic_reduce(rewritten)
            key = cyclic_key(rewritten)
            if not rewritten or key in seen:
                continue
            seen.add(key)
            relators.append(rewritten)
            tags.append(f"coset {c + 1}, relator {i + 1}")
    kd.presentation = Presentation(names, relators, tags)
    logger.info("Reidemeister-Schreier: index %d, %d Schreier generators, %d relators",
                t.index, len(generators), len(relators))
    return kd


def element_image(word: Sequence[int], kd: KernelData) -> AbelianImage:
    """
    Image of an ambient word in the abelianized subgroup.

    Raises:
        NotInKernel: the word does not lie in the subgroup
    """
    kernel_word = kd.rewrite(word)
    reduction = kd.abelian_reduction()
    return reduction.image(exponent_sums(kernel_word, kd.presentation.num_generators))
