#!/usr/bin/env python3

"""
Abelian invariants of finitely presented groups.

The relation matrix of a presentation (one row per relator, one column per
generator, entries exponent sums) is first thinned by eliminating columns
through +-1 entries, which is where almost all of the work goes for
Reidemeister-Schreier kernels, and the small dense residue is then put in
Smith normal form.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from fpgroup.presentation import Presentation
from kernel_analysis.snf import SmithNormalForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianInvariants:
    """
    Z^free_rank + Z/d1 + Z/d2 + ... with 1 < d1 | d2 | ...
    """
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError(f"Negative free rank {self.free_rank}")
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"Torsion divisor {d} must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"Torsion divisors {self.torsion} do not form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def torsion_is_two_power(self) -> bool:
        return all(d & (d - 1) == 0 for d in self.torsion)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianInvariants":
        """
        Inverse of str(): "Z^8", "Z^2 + Z/2 + Z/4", "0". Also reads "Z" for
        Z^1 and "(Z/2)^9" for nine copies of Z/2; str() never emits those.
        """
        text = text.strip()
        if text in ("0", ""):
            return cls(0)
        rank, torsion = 0, []
        for part in (p.strip() for p in text.split("+")):
            free = re.fullmatch(r"Z\^(\d+)", part)
            cyclic = re.fullmatch(r"Z/(\d+)", part)
            repeated = re.fullmatch(r"\(Z/(\d+)\)\^(\d+)", part)
            if free:
                rank += int(free.group(1))
            elif part == "Z":
                rank += 1
            elif cyclic:
                torsion.append(int(cyclic.group(1)))
            elif repeated:
                torsion.extend([int(repeated.group(1))] * int(repeated.group(2)))
            else:
                raise ValueError(f"Cannot parse abelian invariant term {part!r} in {text!r}")
        return cls(rank, tuple(sorted(torsion)))

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int], columns: int) -> "AbelianInvariants":
        nonzero = [d for d in diagonal if d != 0]
        return cls(columns - len(nonzero), tuple(d for d in nonzero if d > 1))


@dataclass(frozen=True)
class AbelianImage:
    """
    Coordinates of an element in Z^r + Z/d1 + ...

    Attributes:
        torsion: (value mod d, d) per torsion factor
        free: coordinates in the free part
    """
    torsion: Tuple[Tuple[int, int], ...]
    free: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v, _ in self.torsion) and all(v == 0 for v in self.free)

    @property
    def order(self) -> Optional[int]:
        """Order of the element, None when it has infinite order"""
        if any(self.free):
            return None
        return math.lcm(1, *(d // math.gcd(v, d) for v, d in self.torsion))

    def as_list(self) -> List[int]:
        return [v for v, _ in self.torsion] + list(self.free)

    def __str__(self):
        parts = [f"{v} mod {d}" for v, d in self.torsion] + [str(v) for v in self.free]
        return "(" + ", ".join(parts) + ")"


def relation_rows(p: Presentation) -> List[Dict[int, int]]:
    """Sparse exponent-sum rows, 0-based columns, zero rows dropped"""
    rows = []
    for relator in p.relators:
        row: Dict[int, int] = {}
        for letter in relator:
            col = abs(letter) - 1
            row[col] = row.get(col, 0) + (1 if letter > 0 else -1)
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)
    return rows


def relation_matrix(p: Presentation) -> List[List[int]]:
    """Dense relation matrix: one row per relator, one column per generator"""
    matrix = []
    for relator in p.relators:
        row = [0] * p.num_generators
        for letter in relator:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        matrix.append(row)
    return matrix


class AbelianReduction:
    """
    Z^n / (row span of the relation rows), reduced to Smith form.

    Columns hit by a +-1 entry are solved for and removed first (each
    removal is logged so element coordinates can be pushed through), then
    the remaining block goes through SmithNormalForm.
    """

    def __init__(self, rows: Sequence[Dict[int, int]], columns: int):
        self.columns = columns
        self.eliminations: List[Tuple[int, Dict[int, int], int]] = []
        self._eliminate_units([dict(r) for r in rows])
        self._reduce_residue()

    def _eliminate_units(self, rows: List[Dict[int, int]]):
        live: Dict[int, Dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
        by_column: Dict[int, set] = {}
        for i, row in live.items():
            for c in row:
                by_column.setdefault(c, set()).add(i)
        alive = set(range(self.columns))
        progress = True
        while progress:
            progress = False
            for i in sorted(live):
                row = live.get(i)
                if row is None:
                    continue
                units = [c for c, v in row.items() if v in (1, -1)]
                if not units:
                    continue
                c = min(units, key=lambda col: (len(by_column[col]), col))
                sign = row[c]
                for k in sorted(by_column[c] - {i}):
                    other = live[k]
                    factor = other[c] * sign
                    for col, v in row.items():
                        updated = other.get(col, 0) - factor * v
                        if updated:
                            if col not in other:
                                by_column.setdefault(col, set()).add(k)
                            other[col] = updated
                        else:
                            other.pop(col, None)
                            by_column[col].discard(k)
                    if not other:
                        del live[k]
                for col in row:
                    by_column[col].discard(i)
                del live[i]
                alive.discard(c)
                self.eliminations.append((c, row, sign))
                progress = True
        self.residual_columns = sorted(alive)
        self.residual_rows = [live[i] for i in sorted(live)]
        logger.debug("unit elimination removed %d of %d columns", len(self.eliminations), self.columns)

    def _reduce_residue(self):
        position = {c: j for j, c in enumerate(self.residual_columns)}
        dense = []
        for row in self.residual_rows:
            line = [0] * len(self.residual_columns)
            for c, v in row.items():
                line[position[c]] = v
            dense.append(line)
        self.snf = SmithNormalForm(dense, len(self.residual_columns))
        self.snf.run()
        self.diagonal = self.snf.diagonal()
        self.invariants = AbelianInvariants.from_diagonal(self.diagonal, len(self.residual_columns))

    def image(self, vector: Sequence[int]) -> AbelianImage:
        """Coordinates of the element with exponent-sum vector ``vector``"""
        x = {c: v for c, v in enumerate(vector) if v}
        for c, row, sign in self.eliminations:
            xc = x.pop(c, 0)
            if not xc:
                continue
            # relation sign*e_c + sum(row[j] e_j) = 0 solves e_c
            for j, v in row.items():
                if j != c:
                    updated = x.get(j, 0) - sign * v * xc
                    if updated:
                        x[j] = updated
                    else:
                        x.pop(j, None)
        residual = [x.get(c, 0) for c in self.residual_columns]
        right = self.snf.right
        size = len(residual)
        y = [sum(residual[t] * right[t][i] for t in range(size)) for i in range(size)]
        torsion, free = [], []
        for i in range(size):
            d = self.diagonal[i] if i < len(self.diagonal) else 0
            if d == 1:
                continue
            if d == 0:
                free.append(y[i])
            else:
                torsion.append((y[i] % d, d))
        return AbelianImage(tuple(torsion), tuple(free))


def abelian_reduction(p: Presentation) -> AbelianReduction:
    return AbelianReduction(relation_rows(p), p.num_generators)


def abelianization(p: Presentation) -> AbelianInvariants:
    """Abelian invariants of the group presented by p"""
    invariants = abelian_reduction(p).invariants
    logger.debug("abelianization of %s: %s", p, invariants)
    return invariants
