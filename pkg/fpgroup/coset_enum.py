#!/usr/bin/env python3

"""
Coset enumeration.

todd_coxeter() runs a relator-based (HLT) enumeration with lookahead and
compaction when the table fills up; table_from_hom() builds the table of
the kernel of a permutation homomorphism directly from the image group;
certify_symmetric() turns both into the "isomorphic to S_n" verdict.

Cosets are 0-based internally (coset 0 is the subgroup itself) and printed
1-based. Column 2k is generator k+1, column 2k+1 its inverse.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.combinatorics import PermutationGroup

from fpgroup.presentation import PermutationHom, Presentation
from fpgroup.words import Word, free_reduce

logger = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 1_000_000


class InconsistentHom(ValueError):
    """Raised when some relator does not map to the identity"""


class NonSurjective(ValueError):
    """Raised when a homomorphism is expected to hit all of S_n but does not"""


def column(letter: int) -> int:
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


def column_letter(col: int) -> int:
    g = col // 2 + 1
    return g if col % 2 == 0 else -g


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = DEFAULT_MAX_COSETS
    lookahead_rounds: int = 3

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError(f"max_cosets must be at least 1, got {self.max_cosets}")


@dataclass(frozen=True)
class Overflow:
    """Enumeration ran out of room; says nothing about finiteness"""
    max_cosets: int
    defined: int
    live: int

    def __str__(self):
        return f"Overflow after {self.defined} definitions ({self.live} live cosets, limit {self.max_cosets})"


@dataclass
class CosetTable:
    """
    A closed coset table.

    Attributes:
        generators: generator names of the presentation acted on
        rows: rows[c][col] is the coset reached from c along column col
        subgroup: subgroup words (empty for the trivial subgroup or when
            the subgroup is given by a label instead)
        label: human-readable subgroup tag ("trivial", "kernel", ...)
        defined: total cosets defined while building the table
    """
    generators: Tuple[str, ...]
    rows: List[List[int]]
    subgroup: Tuple[Word, ...] = ()
    label: str = ""
    defined: int = 0

    @property
    def index(self) -> int:
        return len(self.rows)

    @property
    def num_columns(self) -> int:
        return 2 * len(self.generators)

    def act(self, coset: int, word: Sequence[int]) -> int:
        for letter in word:
            coset = self.rows[coset][column(letter)]
        return coset

    def is_closed(self) -> bool:
        return all(entry is not None for row in self.rows for entry in row)

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.index, self.num_columns)

    def problems(self, p: Optional[Presentation] = None) -> List[str]:
        """
        Check the table invariants; returns an empty list when all hold.

        Closed, every column a permutation, paired columns mutually
        inverse, every relator of p closing from every coset, subgroup
        words fixing coset 0.
        """
        issues = []
        if not self.is_closed():
            return ["table has undefined entries"]
        table = self.as_array()
        n = self.index
        for col in range(self.num_columns):
            if sorted(table[:, col].tolist()) != list(range(n)):
                issues.append(f"column {col} is not a permutation")
        for col in range(0, self.num_columns, 2):
            forward, backward = table[:, col], table[:, col + 1]
            if not np.array_equal(backward[forward], np.arange(n)):
                issues.append(f"columns {col} and {col + 1} are not inverse")
        if p is not None:
            for i, relator in enumerate(p.relators):
                for c in range(n):
                    if self.act(c, relator) != c:
                        issues.append(f"relator {i} does not close at coset {c + 1}")
                        break
        for word in self.subgroup:
            if self.act(0, word) != 0:
                issues.append(f"subgroup word {word} moves coset 1")
        return issues

    def dump(self) -> str:
        """Header (generators, subgroup, coset count) then row-major entries, 1-based"""
        lines = [
            f"# generators: {' '.join(self.generators)}",
            f"# subgroup: {self.label or 'given'} ({len(self.subgroup)} words)",
            f"# cosets: {self.index}",
        ]
        for c, row in enumerate(self.rows):
            lines.append(f"{c + 1}: " + " ".join(str(x + 1) for x in row))
        return "\n".join(lines) + "\n"


class _TableFull(Exception):
    pass


class _Enumerator:
    """HLT enumeration state, following the union-find coincidence scheme"""

    def __init__(self, p: Presentation, subgroup: Sequence[Word], limits: EnumerationLimits):
        self.presentation = p
        self.relators = [free_reduce(r) for r in p.relators if r]
        self.subgroup = [free_reduce(w) for w in subgroup]
        self.limits = limits
        self.ncols = 2 * p.num_generators
        self.table: List[List[Optional[int]]] = [[None] * self.ncols]
        self.parent: List[int] = [0]
        self.defined = 1

    # union-find over cosets

    def _rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            nxt = self.parent[k]
            self.parent[k] = root
            k = nxt
        return root

    def _live(self, k: int) -> bool:
        return self.parent[k] == k

    def _merge(self, k: int, l: int, queue: List[int]):
        a, b = self._rep(k), self._rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def _coincidence(self, a: int, b: int):
        table = self.table
        queue: List[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for col in range(self.ncols):
                delta = table[gamma][col]
                if delta is None:
                    continue
                table[delta][col ^ 1] = None
                mu, nu = self._rep(gamma), self._rep(delta)
                if table[mu][col] is not None:
                    self._merge(nu, table[mu][col], queue)
                elif table[nu][col ^ 1] is not None:
                    self._merge(mu, table[nu][col ^ 1], queue)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu

    def _define(self, alpha: int, col: int):
        if len(self.table) >= self.limits.max_cosets:
            raise _TableFull()
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(beta)
        self.defined += 1
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha

    def _scan(self, alpha: int, word: Word, fill: bool):
        """
        Trace word from alpha forwards and backwards; record a deduction
        or a coincidence when the trace closes. With fill, define new
        cosets to bridge the gap.
        """
        table = self.table
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][column(word[i])] is not None:
                f = table[f][column(word[i])]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and table[b][column(-word[j])] is not None:
                b = table[b][column(-word[j])]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                col = column(word[i])
                table[f][col] = b
                table[b][col ^ 1] = f
                return
            if not fill:
                return
            self._define(f, column(word[i]))

    def _lookahead(self):
        for beta in range(len(self.table)):
            for word in self.relators:
                if not self._live(beta):
                    break
                self._scan(beta, word, fill=False)

    def _compact(self, alpha: int) -> int:
        """Drop dead cosets, keeping order; returns the new position of alpha"""
        live = [c for c in range(len(self.table)) if self._live(c)]
        renumber = {c: i for i, c in enumerate(live)}
        rows = []
        for c in live:
            rows.append([None if x is None else renumber[self._rep(x)] for x in self.table[c]])
        self.table = rows
        self.parent = list(range(len(rows)))
        return sum(1 for c in live if c < alpha)

    def _make_room(self, alpha: int) -> Optional[int]:
        for _ in range(self.limits.lookahead_rounds):
            self._lookahead()
            alpha = self._compact(alpha)
            if len(self.table) < self.limits.max_cosets:
                logger.debug("lookahead freed room: %d live cosets", len(self.table))
                return alpha
        return None

    def _sweep(self) -> bool:
        """One HLT pass over all cosets; False on overflow"""
        alpha = 0
        while alpha < len(self.table):
            if self._live(alpha):
                try:
                    for word in self.relators:
                        if not self._live(alpha):
                            break
                        self._scan(alpha, word, fill=True)
                    if self._live(alpha):
                        row = self.table[alpha]
                        for col in range(self.ncols):
                            if row[col] is None:
                                self._define(alpha, col)
                except _TableFull:
                    moved = self._make_room(alpha)
                    if moved is None:
                        return False
                    alpha = moved
                    continue
            alpha += 1
        return True

    def _complete(self) -> bool:
        return all(x is not None
                   for c, row in enumerate(self.table) if self._live(c)
                   for x in row)

    def run(self) -> Union[CosetTable, Overflow]:
        try:
            for word in self.subgroup:
                self._scan(0, word, fill=True)
        except _TableFull:
            return self._overflow()
        while True:
            if not self._sweep():
                return self._overflow()
            self._compact(0)
            if self._complete():
                break
        return self._standardized()

    def _overflow(self) -> Overflow:
        live = sum(1 for c in range(len(self.table)) if self._live(c))
        logger.info("coset enumeration overflow: %d defined, %d live", self.defined, live)
        return Overflow(self.limits.max_cosets, self.defined, live)

    def _standardized(self) -> CosetTable:
        order = [0]
        seen = {0}
        for c in order:
            for x in self.table[c]:
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        renumber = {c: i for i, c in enumerate(order)}
        rows = [[renumber[x] for x in self.table[c]] for c in order]
        return CosetTable(self.presentation.generators, rows, tuple(self.subgroup),
                          "trivial" if not self.subgroup else "", self.defined)


def todd_coxeter(p: Presentation, subgroup: Sequence[Word] = (),
                 limits: Optional[EnumerationLimits] = None) -> Union[CosetTable, Overflow]:
    """
    Enumerate the cosets of the subgroup generated by ``subgroup`` in p.

    Args:
        p: the presentation
        subgroup: subgroup generators as words over p's generators
        limits: EnumerationLimits (default max 10^6 cosets)

    Returns:
        a closed, standardized CosetTable, or Overflow when the limit was
        reached (inconclusive, never a proof of infiniteness)
    """
    limits = limits or EnumerationLimits()
    result = _Enumerator(p, subgroup, limits).run()
    if isinstance(result, CosetTable):
        logger.info("coset enumeration: index %d after %d definitions", result.index, result.defined)
    return result


def table_from_hom(p: Presentation, h: PermutationHom) -> CosetTable:
    """
    Coset table of the kernel of h.

    Cosets are the elements of the image group, reached by breadth-first
    right multiplication from the identity; coset 0 is the identity, so
    the stabilizer of coset 0 is exactly the kernel.
    """
    if not h.is_total_on(p):
        raise InconsistentHom(f"Homomorphism has {len(h.images)} images for {p.num_generators} generators")
    failing = h.failing_relators(p)
    if failing:
        first = failing[0]
        raise InconsistentHom(f"Relator {first} ({p.format(p.relators[first])}) does not map to the identity")
    gens = []
    for image in h.images:
        forward = tuple(image.array_form)
        backward = tuple((~image).array_form)
        gens.extend((forward, backward))
    identity = tuple(range(h.degree))
    elements = [identity]
    position = {identity: 0}
    rows = []
    for element in elements:
        row = []
        for g in gens:
            product = tuple(g[x] for x in element)
            if product not in position:
                position[product] = len(elements)
                elements.append(product)
            row.append(position[product])
        rows.append(row)
    logger.info("table from homomorphism: image of order %d", len(elements))
    return CosetTable(p.generators, rows, (), "kernel", len(elements))


class Verdict(Enum):
    ISO_SYMMETRIC = "IsoSymmetric"
    KERNEL_NONTRIVIAL = "KernelNontrivial"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Certificate:
    """
    Verdict on whether p is isomorphic to S_n through h.

    Attributes:
        verdict: the Verdict
        cosets: coset count of the trivial-subgroup enumeration, if run
        reason: one-line explanation
    """
    verdict: Verdict
    cosets: Optional[int] = None
    reason: str = ""
    overflow: Optional[Overflow] = field(default=None, repr=False)


def check_surjective(h: PermutationHom):
    group = PermutationGroup(list(h.images)) if h.images else None
    order = group.order() if group is not None else 1
    if order != math.factorial(h.degree):
        raise NonSurjective(f"Image has order {order}, not {h.degree}! = {math.factorial(h.degree)}")


def certify_symmetric(p: Presentation, h: PermutationHom,
                      limits: Optional[EnumerationLimits] = None,
                      kernel_nonzero: Optional[bool] = None) -> Certificate:
    """
    Decide p ~ S_n (equivalently, trivial kernel of h).

    Args:
        p: presentation (normally the squares quotient)
        h: homomorphism onto S_n
        limits: enumeration limits
        kernel_nonzero: abelianization evidence from kernel analysis; when
            True the trivial-subgroup enumeration is skipped

    Raises:
        NonSurjective: h does not hit all of S_n
    """
    check_surjective(h)
    target = math.factorial(h.degree)
    if kernel_nonzero:
        return Certificate(Verdict.KERNEL_NONTRIVIAL, None,
                           "kernel abelianization is nonzero; trivial-subgroup enumeration skipped")
    result = todd_coxeter(p, (), limits)
    if isinstance(result, Overflow):
        return Certificate(Verdict.INCONCLUSIVE, None, str(result), result)
    if result.index == target:
        return Certificate(Verdict.ISO_SYMMETRIC, result.index, f"enumeration closed with {target} = {h.degree}! cosets")
    return Certificate(Verdict.KERNEL_NONTRIVIAL, result.index,
                       f"enumeration closed with {result.index} > {target} cosets")
