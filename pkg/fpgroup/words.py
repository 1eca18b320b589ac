#!/usr/bin/env python3

"""
Words in free groups.

A word is a tuple of nonzero integers: letter ``k`` is generator ``k``
(1-based) and ``-k`` its inverse. Everything here is a pure function of
tuples, so words can be shared freely between presentations.
"""

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

Word = Tuple[int, ...]


class WordSyntaxError(ValueError):
    """Raised when a textual word or relation cannot be parsed"""


def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent letter/inverse pairs until none remain"""
    stack = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def cyclic_reduce(word: Iterable[int]) -> Word:
    """Free reduction followed by cancellation across the ends"""
    w = free_reduce(word)
    start, end = 0, len(w)
    while end - start > 1 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return w[start:end]


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def power(word: Sequence[int], k: int) -> Word:
    base = tuple(word) if k >= 0 else invert(word)
    return free_reduce(base * abs(k))


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """[x, y] = x y x^-1 y^-1"""
    return free_reduce(tuple(x) + tuple(y) + invert(x) + invert(y))


def triple(x: Sequence[int], y: Sequence[int]) -> Word:
    """<x, y> = x y x y^-1 x^-1 y^-1, the braid (cusp) relation xyx = yxy"""
    return free_reduce(tuple(x) + tuple(y) + tuple(x) + invert(y) + invert(x) + invert(y))


def conjugate(x: Sequence[int], by: Sequence[int]) -> Word:
    """by x by^-1"""
    return free_reduce(tuple(by) + tuple(x) + invert(by))


def substitute(word: Sequence[int], images) -> Word:
    """
    Replace every generator by a word.

    Args:
        word: the word to rewrite
        images: mapping (or callable) generator id -> replacement word;
            generators missing from a mapping are left unchanged

    Returns:
        the freely reduced result
    """
    lookup = images if callable(images) else (lambda g: images.get(g, (g,)))
    out = []
    for letter in word:
        image = lookup(abs(letter))
        out.extend(image if letter > 0 else invert(image))
    return free_reduce(out)


def exponent_sums(word: Sequence[int], num_generators: int) -> list:
    sums = [0] * num_generators
    for letter in word:
        sums[abs(letter) - 1] += 1 if letter > 0 else -1
    return sums


def occurrences(word: Sequence[int], generator: int) -> int:
    return sum(1 for x in word if abs(x) == generator)


def cyclic_key(word: Sequence[int]) -> Word:
    """
    Canonical representative of a relator up to cyclic permutation and
    inversion; two relators with the same key define the same normal closure.
    """
    w = cyclic_reduce(word)
    if not w:
        return w
    rotations = []
    for candidate in (w, invert(w)):
        k = _least_rotation(candidate)
        rotations.append(candidate[k:] + candidate[:k])
    return min(rotations)


def _least_rotation(s: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation"""
    doubled = tuple(s) + tuple(s)
    failure = [-1] * len(doubled)
    k = 0
    for j in range(1, len(doubled)):
        sj = doubled[j]
        i = failure[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "e"
    parts = []
    for letter in word:
        name = names[abs(letter) - 1]
        parts.append(name if letter > 0 else f"{name}^-1")
    return " ".join(parts)


###############################################################################
#                           PARSING                                           #
###############################################################################

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*'?)"
    r"|\^\s*(?P<power>[+-]?\d+)"
    r"|(?P<punct>[\[\]<>(),=]))"
)


@dataclass(frozen=True)
class ParsedElement:
    """
    A parsed word together with its outermost structure.

    kind is "word", "commutator" ([u, v]), "triple" (<u, v>) or
    "equation" (u = v, stored as u v^-1); parts holds (u, v) for the
    bracket and equation forms.
    """
    word: Word
    kind: str = "word"
    parts: Tuple[Word, ...] = ()


def _tokenize(text: str):
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            raise WordSyntaxError(f"Unexpected character {stripped[pos]!r} at position {pos} in {text!r}")
        if match.group("name") is not None:
            tokens.append(("name", match.group("name")))
        elif match.group("power") is not None:
            tokens.append(("power", int(match.group("power"))))
        else:
            tokens.append(("punct", match.group("punct")))
        pos = match.end()
    return tokens


class _Parser:
    _CLOSING = {"[": "]", "<": ">", "(": ")"}

    def __init__(self, text: str, resolve: Callable[[str], int]):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.resolve = resolve

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def _next(self):
        token = self._peek()
        if token[0] is None:
            raise WordSyntaxError(f"Unexpected end of input in {self.text!r}")
        self.pos += 1
        return token

    def _expect(self, punct: str):
        kind, value = self._next()
        if kind != "punct" or value != punct:
            raise WordSyntaxError(f"Expected {punct!r} but found {value!r} in {self.text!r}")

    def product(self, stop=()):
        terms = []
        while True:
            kind, value = self._peek()
            if kind is None or (kind == "punct" and value in stop):
                return terms
            terms.append(self.term())

    def term(self) -> ParsedElement:
        kind, value = self._next()
        if kind == "power":
            raise WordSyntaxError(f"Exponent ^{value} has nothing to apply to in {self.text!r}")
        if kind == "name":
            element = ParsedElement((self.resolve(value),))
        elif kind == "punct" and value in self._CLOSING:
            closing = self._CLOSING[value]
            if value == "(":
                inner = _join(self.product(stop=(")",)))
                self._expect(")")
                element = ParsedElement(inner)
            else:
                left = _join(self.product(stop=(",",)))
                self._expect(",")
                right = _join(self.product(stop=(closing,)))
                self._expect(closing)
                if value == "[":
                    element = ParsedElement(commutator(left, right), "commutator", (left, right))
                else:
                    element = ParsedElement(triple(left, right), "triple", (left, right))
        else:
            raise WordSyntaxError(f"Unexpected token {value!r} in {self.text!r}")
        kind, value = self._peek()
        if kind == "power":
            self.pos += 1
            element = ParsedElement(power(element.word, value))
        return element

    def done(self) -> bool:
        return self.pos >= len(self.tokens)


def _join(terms) -> Word:
    letters = []
    for term in terms:
        letters.extend(term.word)
    return free_reduce(letters)


def parse_element(text: str, resolve: Callable[[str], int]) -> ParsedElement:
    """
    Parse a word, bracket expression or relation.

    Grammar: juxtaposed terms, each a generator name (optionally followed
    by ``'``), ``[u, v]``, ``<u, v>`` or ``(u)``, each optionally raised
    to ``^k``. A single top-level ``=`` turns ``u = v`` into ``u v^-1``.

    Args:
        text: the expression
        resolve: maps a generator token (e.g. "g3p" or "a'") to a
            positive generator id; raises WordSyntaxError on unknown names
    """
    parser = _Parser(text, resolve)
    left_terms = parser.product(stop=("=",))
    if not parser.done():
        parser._expect("=")
        right = _join(parser.product(stop=("=",)))
        if not parser.done():
            raise WordSyntaxError(f"Only one '=' is allowed in {text!r}")
        left = _join(left_terms)
        return ParsedElement(free_reduce(left + invert(right)), "equation", (left, right))
    if len(left_terms) == 1:
        return left_terms[0]
    return ParsedElement(_join(left_terms))


def parse_word(text: str, resolve: Callable[[str], int]) -> Word:
    return parse_element(text, resolve).word
