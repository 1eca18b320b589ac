#!/usr/bin/env python3

"""
Tietze simplification of finite presentations.

Only two kinds of moves are made: eliminating a generator g through a
relator in which g occurs exactly once, and shortening a relator by
substituting a long subword of another relator. Both preserve the group.
Element equality is never decided here.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from fpgroup.presentation import PermutationHom, Presentation
from fpgroup.words import (Word, cyclic_key, cyclic_reduce, free_reduce,
                           invert, occurrences, substitute)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000
DEFAULT_SUBSTITUTION_MAX_RELATORS = 200


@dataclass
class TietzeResult:
    """
    Outcome of tietze_simplify.

    Attributes:
        presentation: the simplified presentation (generators renumbered 1..k)
        survivors: original ids of the kept generators, in new-id order
        passes: budget units consumed
        budget_exceeded: True when simplification stopped on the budget
        original: the input presentation
    """
    presentation: Presentation
    survivors: Tuple[int, ...]
    passes: int
    budget_exceeded: bool
    original: Presentation
    _eliminations: List[Tuple[int, Word]] = field(default_factory=list, repr=False)
    _resolved: Optional[Dict[int, Word]] = field(default=None, repr=False)

    @property
    def eliminated(self) -> Tuple[int, ...]:
        return tuple(g for g, _ in self._eliminations)

    @property
    def elimination(self) -> Dict[int, Word]:
        """Original generator id -> word in the simplified generators"""
        if self._resolved is None:
            self._resolved = self._resolve()
        return self._resolved

    def _resolve(self) -> Dict[int, Word]:
        renumber = {g: i + 1 for i, g in enumerate(self.survivors)}
        resolved: Dict[int, Word] = {g: (renumber[g],) for g in self.survivors}
        # later eliminations only mention generators alive at their time
        for g, defining in reversed(self._eliminations):
            resolved[g] = substitute(defining, lambda h: resolved[h])
        return resolved


def rewrite_word(word, result: TietzeResult) -> Word:
    """Map a word over the original generators to the simplified presentation"""
    return substitute(word, lambda g: result.elimination[g])


def carry_hom(h: PermutationHom, result: TietzeResult) -> PermutationHom:
    """Restrict a homomorphism to the surviving generators"""
    return PermutationHom(h.degree, tuple(h.images[g - 1] for g in result.survivors))


class TietzeSimplifier:
    """
    Incremental Tietze engine.

    Relators live in a dict keyed by insertion id, with an occurrence
    index generator -> relator ids so that an elimination only touches the
    relators that mention the eliminated generator.
    """

    def __init__(self, p: Presentation, budget: int = DEFAULT_BUDGET,
                 substitution_max_relators: int = DEFAULT_SUBSTITUTION_MAX_RELATORS):
        self.original = p
        self.budget = budget
        self.substitution_max_relators = substitution_max_relators
        self.alive = set(range(1, p.num_generators + 1))
        self.relators: Dict[int, Word] = {}
        self.keys: Dict[Word, int] = {}
        self.index: Dict[int, set] = {g: set() for g in self.alive}
        self.blocked = set()
        self.eliminations: List[Tuple[int, Word]] = []
        self.passes = 0
        self.budget_exceeded = False
        self._next_id = 0
        self._piece_cache = {}
        for relator in p.relators:
            self._add(relator)

    # relator bookkeeping

    def _add(self, word) -> Optional[int]:
        w = cyclic_reduce(word)
        if not w:
            return None
        key = cyclic_key(w)
        if key in self.keys:
            return None
        rid = self._next_id
        self._next_id += 1
        self.relators[rid] = w
        self.keys[key] = rid
        for letter in w:
            self.index[abs(letter)].add(rid)
            self.blocked.discard(abs(letter))
        return rid

    def _remove(self, rid: int) -> Word:
        w = self.relators.pop(rid)
        self._piece_cache.pop(rid, None)
        del self.keys[cyclic_key(w)]
        for letter in w:
            self.index[abs(letter)].discard(rid)
        return w

    def _spend(self) -> bool:
        if self.passes >= self.budget:
            self.budget_exceeded = True
            return False
        self.passes += 1
        return True

    # eliminations

    def _candidate(self, g: int):
        best = None
        for rid in sorted(self.index[g]):
            w = self.relators[rid]
            if occurrences(w, g) == 1 and (best is None or len(w) < len(self.relators[best])):
                best = rid
        return best

    def _find_elimination(self):
        for g in sorted(self.alive - self.blocked):
            rid = self._candidate(g)
            if rid is not None:
                return g, rid
            self.blocked.add(g)
        return None

    def _eliminate(self, g: int, rid: int):
        w = self._remove(rid)
        i = next(k for k, x in enumerate(w) if abs(x) == g)
        rotated = w[i:] + w[:i]
        rest = rotated[1:]
        # g rest = 1 gives g = rest^-1; g^-1 rest = 1 gives g = rest
        defining = invert(rest) if rotated[0] == g else free_reduce(rest)
        touched = sorted(self.index[g])
        for other in touched:
            old = self._remove(other)
            self._add(substitute(old, {g: defining}))
        self.alive.discard(g)
        self.blocked.discard(g)
        del self.index[g]
        self.eliminations.append((g, defining))
        logger.debug("eliminated generator %d via relator %d (%d relators touched)", g, rid, len(touched))

    def eliminate_all(self) -> int:
        count = 0
        while True:
            found = self._find_elimination()
            if found is None:
                return count
            if not self._spend():
                return count
            self._eliminate(*found)
            count += 1

    # substring substitution

    def _pieces(self, rid: int):
        """
        For relator r: k -> {u: v^-1} over every cyclic conjugate u v of r
        and r^-1 with len(u) = k > len(r)/2, longest k first.
        """
        cached = self._piece_cache.get(rid)
        if cached is None:
            r = self.relators[rid]
            length = len(r)
            cached = []
            for k in range(length, length // 2, -1):
                table = {}
                for base in (r, invert(r)):
                    for shift in range(length):
                        c = base[shift:] + base[:shift]
                        table.setdefault(c[:k], invert(c[k:]))
                cached.append((k, table))
            self._piece_cache[rid] = cached
        return cached

    def _shorten(self, rid: int, s: Word) -> Optional[Word]:
        """Replace the longest cyclic subword of s matching a piece of relator rid"""
        doubled = s + s
        for k, table in self._pieces(rid):
            if k > len(s):
                continue
            for start in range(len(s)):
                replacement = table.get(doubled[start:start + k])
                if replacement is not None:
                    rotated = doubled[start:start + len(s)]
                    return cyclic_reduce(replacement + rotated[k:])
        return None

    def substitute_all(self) -> int:
        if len(self.relators) > self.substitution_max_relators:
            return 0
        count = 0
        progress = True
        while progress:
            progress = False
            for rid in sorted(self.relators, key=lambda x: (len(self.relators[x]), x)):
                if rid not in self.relators:
                    continue
                length = len(self.relators[rid])
                for other in sorted(self.relators):
                    if other == rid or other not in self.relators or rid not in self.relators:
                        continue
                    s = self.relators[other]
                    if len(s) < length:
                        continue
                    shorter = self._shorten(rid, s)
                    if shorter is None or len(shorter) >= len(s):
                        continue
                    if not self._spend():
                        return count
                    self._remove(other)
                    self._add(shorter)
                    count += 1
                    progress = True
        return count

    def run(self) -> TietzeResult:
        while True:
            self.eliminate_all()
            if self.budget_exceeded:
                break
            if self.substitute_all() == 0 or self.budget_exceeded:
                break
        if self.budget_exceeded:
            logger.warning("Tietze budget of %d passes exceeded; returning best-so-far", self.budget)
        return self._result()

    def _result(self) -> TietzeResult:
        survivors = tuple(sorted(self.alive))
        renumber = {g: i + 1 for i, g in enumerate(survivors)}
        names = tuple(self.original.generators[g - 1] for g in survivors)
        relators = []
        for rid in sorted(self.relators):
            w = self.relators[rid]
            relators.append(tuple(renumber[x] if x > 0 else -renumber[-x] for x in w))
        presentation = Presentation(names, relators, ("tietze",) * len(relators))
        logger.info("Tietze: %d -> %d generators, %d -> %d relators in %d passes",
                    self.original.num_generators, len(survivors),
                    len(self.original.relators), len(relators), self.passes)
        return TietzeResult(presentation, survivors, self.passes, self.budget_exceeded,
                            self.original, list(self.eliminations))


def tietze_simplify(p: Presentation, budget: int = DEFAULT_BUDGET,
                    substitution_max_relators: int = DEFAULT_SUBSTITUTION_MAX_RELATORS) -> TietzeResult:
    """
    Simplify a presentation by Tietze moves.

    Eliminations go lowest generator id first, then shortest defining
    relator. When the budget runs out the best presentation so far is
    returned with ``budget_exceeded`` set.
    """
    return TietzeSimplifier(p, budget, substitution_max_relators).run()
