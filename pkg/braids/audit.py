#!/usr/bin/env python3

"""
Braid monodromy bookkeeping.

Only the two shadows of a braid that the relation calculus needs are
tracked: the exponent sum and the induced strand permutation. Compound
factors such as Z^2_{i, jj'} are expanded into half-twists first.

Factorization files hold one factor per line::

    @labels doubled            # strands 1, 1', ..., m, m' (default)
    @full                      # the product should be the full twist
    Z2 1 {4 4'}                # Z^2_{1, 44'}
    ~Z2 2' 3' ^ Z2 3' {4 4'}   # bar half-twist conjugated by Z^2_{3', 44'}
    ? row 12 has no entry      # unresolved row
"""

import logging
import math
import re
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

logger = logging.getLogger(__name__)

Side = Tuple[str, ...]


class UnknownCompound(ValueError):
    """Raised when a compound support has no known expansion"""


class FactorizationSyntaxError(ValueError):
    """Raised on malformed factorization files"""


@dataclass(frozen=True)
class HalfTwistFactor:
    """
    Z^exponent on a support, conjugated by ``conjugators`` in order.

    Attributes:
        left, right: strand labels; a side with two labels is a doubled
            support such as jj'
        exponent: nonzero; factors of a factorization use exponents >= 1
        conjugators: factors b1, b2, ... of (Z^e)^{b1 b2 ...}
        bar: marks a bar half-twist (same exponent and permutation)
    """
    left: Side
    right: Side
    exponent: int = 1
    conjugators: Tuple["HalfTwistFactor", ...] = ()
    bar: bool = False

    def __post_init__(self):
        if self.exponent == 0:
            raise ValueError("Half-twist exponent must be nonzero")
        labels = self.left + self.right
        if len(set(labels)) != len(labels):
            raise ValueError(f"Repeated strand label in support {self.support_label()}")

    @property
    def is_atomic(self) -> bool:
        return len(self.left) == 1 and len(self.right) == 1

    def labels(self) -> List[str]:
        found = list(self.left + self.right)
        for c in self.conjugators:
            found.extend(c.labels())
        return found

    def support_label(self) -> str:
        return ",".join("".join(side) for side in (self.left, self.right))

    def __str__(self):
        text = f"{'~' if self.bar else ''}Z^{self.exponent}_{{{self.support_label()}}}"
        if self.conjugators:
            text = f"({text})^{{{' '.join(str(c) for c in self.conjugators)}}}"
        return text


def _atom(a: str, b: str, exponent: int, conjugators=(), bar=False) -> HalfTwistFactor:
    return HalfTwistFactor((a,), (b,), exponent, tuple(conjugators), bar)


def expand(f: HalfTwistFactor) -> List[HalfTwistFactor]:
    """
    Atomic half-twists whose product is f.

    Z^2_{i,jj'} -> Z^2_{ij} Z^2_{ij'};
    Z^3_{i,jj'} -> Z^3_{ij} (Z^3_{ij})^{Z_{jj'}} (Z^3_{ij})^{Z^-1_{jj'}};
    Z^2_{ii',jj'} -> Z^2_{ij} Z^2_{ij'} Z^2_{i'j} Z^2_{i'j'};
    mirrored forms with the doubled side on the left likewise.

    Raises:
        UnknownCompound: any other compound support or exponent
    """
    if f.is_atomic:
        return [f]
    magnitude = abs(f.exponent)
    outer = f.conjugators
    if len(f.left) == 2 and len(f.right) == 2:
        if magnitude != 2:
            raise UnknownCompound(f"No expansion for {f}: doubled-doubled supports take exponent 2 only")
        atoms = [_atom(i, j, f.exponent, outer, f.bar) for i in f.left for j in f.right]
    elif len(f.left) + len(f.right) == 3:
        doubled = f.right if len(f.right) == 2 else f.left
        if len(f.right) == 2:
            pairs = [(f.left[0], x) for x in doubled]
        else:
            pairs = [(x, f.right[0]) for x in doubled]
        if magnitude == 2:
            atoms = [_atom(a, b, f.exponent, outer, f.bar) for a, b in pairs]
        elif magnitude == 3:
            a, b = pairs[0]
            twist = _atom(doubled[0], doubled[1], 1)
            atoms = [
                _atom(a, b, f.exponent, outer, f.bar),
                _atom(a, b, f.exponent, (twist,) + outer, f.bar),
                _atom(a, b, f.exponent, (replace(twist, exponent=-1),) + outer, f.bar),
            ]
        else:
            raise UnknownCompound(f"No expansion for {f}: single-doubled supports take exponent 2 or 3")
    else:
        raise UnknownCompound(f"No expansion for support {f.support_label()}")
    if f.exponent < 0:
        atoms.reverse()
    return atoms


@dataclass
class Factorization:
    """
    Ordered product of half-twist factors on p strands.

    Attributes:
        p: strand count
        factors: the factors, in order
        labels: strand labels; labels[k] is strand k (0-based)
        unresolved: text of rows that could not be transcribed
        full: whether the product is claimed to be the full twist
    """
    p: int
    factors: List[HalfTwistFactor] = field(default_factory=list)
    labels: Tuple[str, ...] = ()
    unresolved: List[str] = field(default_factory=list)
    full: bool = False

    def __post_init__(self):
        if not self.labels:
            self.labels = strand_labels(self.p, "plain")
        position = set(self.labels)
        for f in self.factors:
            for label in f.labels():
                if label not in position:
                    raise ValueError(f"Strand {label!r} of {f} is not among the {self.p} strands")

    def index(self, label: str) -> int:
        return self.labels.index(label)


def strand_labels(p: int, scheme: str) -> Tuple[str, ...]:
    if scheme == "plain":
        return tuple(str(k) for k in range(1, p + 1))
    if scheme == "doubled":
        if p % 2:
            raise ValueError(f"Doubled strand labels need an even strand count, got {p}")
        return tuple(label for j in range(1, p // 2 + 1) for label in (str(j), f"{j}'"))
    raise FactorizationSyntaxError(f"Unknown label scheme {scheme!r}")


def exponent_sum(F: Factorization) -> int:
    """Sum of exponents over the fully expanded factors"""
    return sum(atom.exponent for f in F.factors for atom in expand(f))


def _factor_permutation(f: HalfTwistFactor, F: Factorization) -> Permutation:
    result = Permutation(F.p - 1)
    for atom in expand(f):
        base = Permutation(F.p - 1)
        if atom.exponent % 2:
            base = Permutation([[F.index(atom.left[0]), F.index(atom.right[0])]], size=F.p)
        by = Permutation(F.p - 1)
        for c in atom.conjugators:
            by = by * _factor_permutation(c, F)
        result = result * (~by * base * by)
    return result


def induced_permutation(F: Factorization) -> Permutation:
    """
    Product of the factor permutations, read left to right; a factor
    contributes its support transposition when its exponent is odd, moved
    by its conjugators.
    """
    result = Permutation(F.p - 1)
    for f in F.factors:
        result = result * _factor_permutation(f, F)
    return result


def format_permutation(perm: Permutation, labels: Sequence[str]) -> str:
    cycles = [c for c in perm.cyclic_form if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(labels[x] for x in c) + ")" for c in cycles)


###############################################################################
#                           FILE FORMAT                                       #
###############################################################################

_TOKEN = re.compile(r"~?Z-?\d*|\{[^}]*\}|\^|[^\s{}^]+")
_HEAD = re.compile(r"(~?)Z(-?\d*)")


class _LineParser:
    def __init__(self, line: str, number: int):
        self.line = line
        self.number = number
        self.tokens = _TOKEN.findall(line)
        self.pos = 0

    def error(self, message: str) -> FactorizationSyntaxError:
        return FactorizationSyntaxError(f"line {self.number}: {message}: {self.line.strip()!r}")

    def _side(self) -> Side:
        if self.pos >= len(self.tokens):
            raise self.error("missing strand label")
        token = self.tokens[self.pos]
        self.pos += 1
        if token.startswith("{"):
            labels = tuple(token[1:-1].split())
            if len(labels) != 2:
                raise self.error(f"doubled support {token} needs two labels")
            return labels
        if token == "^" or _HEAD.fullmatch(token):
            raise self.error(f"expected a strand label, found {token!r}")
        return (token,)

    def factor(self) -> HalfTwistFactor:
        head = _HEAD.fullmatch(self.tokens[self.pos]) if self.pos < len(self.tokens) else None
        if head is None:
            raise self.error("expected a factor Z<e> <a> <b>")
        self.pos += 1
        exponent = int(head.group(2)) if head.group(2) not in ("", "-") else (-1 if head.group(2) == "-" else 1)
        left, right = self._side(), self._side()
        try:
            return HalfTwistFactor(left, right, exponent, (), bool(head.group(1)))
        except ValueError as e:
            raise self.error(str(e)) from e

    def parse(self) -> HalfTwistFactor:
        f = self.factor()
        conjugators = []
        if self.pos < len(self.tokens) and self.tokens[self.pos] == "^":
            self.pos += 1
            while self.pos < len(self.tokens):
                conjugators.append(self.factor())
            if not conjugators:
                raise self.error("'^' without conjugators")
        if self.pos != len(self.tokens):
            raise self.error(f"unexpected {self.tokens[self.pos]!r}")
        if f.exponent < 1:
            raise self.error("factor exponents must be positive")
        return replace(f, conjugators=tuple(conjugators))


def parse_factorization(text: str, p: int) -> Factorization:
    """
    Raises:
        FactorizationSyntaxError: malformed lines or labels outside the p strands
    """
    scheme = "doubled"
    full = False
    factors, unresolved = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            parts = line[1:].split()
            if parts[0] == "labels" and len(parts) == 2:
                scheme = parts[1]
            elif parts == ["full"]:
                full = True
            else:
                raise FactorizationSyntaxError(f"line {number}: unknown directive {line!r}")
        elif line.startswith("?"):
            unresolved.append(line[1:].strip())
        else:
            factors.append(_LineParser(line, number).parse())
    try:
        return Factorization(p, factors, strand_labels(p, scheme), unresolved, full)
    except ValueError as e:
        if isinstance(e, FactorizationSyntaxError):
            raise
        raise FactorizationSyntaxError(str(e)) from e


def load_factorization(path: str, p: int) -> Factorization:
    with open(path, "r") as f:
        return parse_factorization(f.read(), p)


@dataclass
class AuditResult:
    """
    Attributes:
        exponent_sum: sum over expanded factors
        permutation: induced permutation in strand labels
        full_degree_ok / full_permutation_ok: the full-twist checks
            (p(p-1) and identity), None unless the file is marked @full
    """
    source: str
    p: int
    factors: int
    atoms: int
    exponent_sum: int
    permutation: str
    unresolved: List[str]
    full_degree_ok: Optional[bool] = None
    full_permutation_ok: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return self.full_degree_ok is not False and self.full_permutation_ok is not False

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "strands": self.p,
            "factors": self.factors,
            "expanded_factors": self.atoms,
            "exponent_sum": self.exponent_sum,
            "permutation": self.permutation,
            "unresolved": list(self.unresolved),
            "full_degree_ok": self.full_degree_ok,
            "full_permutation_ok": self.full_permutation_ok,
        }


def audit_factorization(F: Factorization, source: str = "") -> AuditResult:
    total = exponent_sum(F)
    perm = induced_permutation(F)
    result = AuditResult(source, F.p, len(F.factors), sum(len(expand(f)) for f in F.factors), total,
                         format_permutation(perm, F.labels), list(F.unresolved))
    if F.full:
        result.full_degree_ok = total == full_twist_degree(F.p)
        result.full_permutation_ok = perm.is_Identity
    logger.info("audit %s: %d factors, exponent sum %d, permutation %s",
                source or "factorization", result.factors, total, result.permutation)
    return result


def audit(path: str, p: int) -> AuditResult:
    return audit_factorization(load_factorization(path, p), path)


def full_twist_degree(p: int) -> int:
    """Exponent sum of the full twist on p strands"""
    return 2 * math.comb(p, 2)
