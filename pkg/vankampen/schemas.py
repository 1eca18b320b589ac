#!/usr/bin/env python3

"""
Relation schemas: per-vertex relator templates for the van Kampen
presentation.

Templates are written over slot names. ``x`` stands for the generator of
the edge assigned to slot x and ``x'`` for its primed partner. ``<u, v>``
is the triple relator u v u v^-1 u^-1 v^-1, ``[u, v]`` the commutator and
``u = v`` the relator u v^-1.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from degeneration.model import SLOTS, Vertex, VertexKind
from fpgroup.words import ParsedElement, Word, WordSyntaxError, parse_element

logger = logging.getLogger(__name__)


class MissingSchema(ValueError):
    """Raised when no schema is registered for a vertex kind and variant"""


class RoleArityMismatch(ValueError):
    """Raised when a slot assignment does not match the schema's slot list"""


def generator_id(edge: int, primed: bool = False) -> int:
    """Gamma_j is generator 2j-1, Gamma_j' is generator 2j"""
    return 2 * edge if primed else 2 * edge - 1


def generator_name(edge: int, primed: bool = False) -> str:
    return f"g{edge}p" if primed else f"g{edge}"


@dataclass(frozen=True)
class SchemaRelator:
    """
    One instantiated relator.

    Attributes:
        word: the relator
        structure: "equation", "commutator" or "triple"
        components: (u, v) of [u, v], <u, v> or u = v
        template: the template it came from
    """
    word: Word
    structure: str
    components: Tuple[Word, ...]
    template: str


@dataclass(frozen=True)
class RelationSchema:
    """
    Relator templates of one vertex kind and variant.

    Attributes:
        kind: the VertexKind
        variant: variant name within the kind
        slots: slot names, in case-file order
        templates: relator templates over the slots
        slot_docs: what each slot stands for
    """
    kind: VertexKind
    variant: str
    slots: Tuple[str, ...]
    templates: Tuple[str, ...]
    description: str = ""
    slot_docs: Mapping[str, str] = field(default_factory=dict)

    @property
    def key(self) -> Tuple[VertexKind, str]:
        return self.kind, self.variant

    def _resolver(self, assignment: Mapping[str, int]):
        def resolve(token: str) -> int:
            primed = token.endswith("'")
            slot = token[:-1] if primed else token
            if slot not in assignment:
                raise WordSyntaxError(f"Template symbol {token!r} is not a slot of {self.kind.value}/{self.variant}")
            return generator_id(assignment[slot], primed)
        return resolve

    def instantiate(self, assignment: Mapping[str, int]) -> List[SchemaRelator]:
        """
        Relators for a slot -> edge assignment.

        Raises:
            RoleArityMismatch: the assignment does not cover exactly the slots
        """
        if sorted(assignment) != sorted(self.slots):
            raise RoleArityMismatch(f"{self.kind.value}/{self.variant} needs slots {list(self.slots)}, "
                                    f"got {sorted(assignment)}")
        if len(set(assignment.values())) != len(self.slots):
            raise RoleArityMismatch(f"{self.kind.value}/{self.variant}: slots {dict(assignment)} reuse an edge")
        resolve = self._resolver(assignment)
        relators = []
        for template in self.templates:
            parsed: ParsedElement = parse_element(template, resolve)
            structure = parsed.kind if parsed.kind != "word" else "equation"
            relators.append(SchemaRelator(parsed.word, structure, parsed.parts, template))
        return relators


###############################################################################
#                           TEMPLATES                                         #
###############################################################################

_ONE_POINT = ("a = a'",)

_TWO_POINT_CONIC_AFTER_LINE = (
    "<l, c>", "<l', c>", "<l^-1 l' l, c>",
    "c' = c l' l c l^-1 l'^-1 c^-1",
)

_TWO_POINT_CONIC_BEFORE_LINE = (
    "<c', l>", "<c', l'>", "<c', l^-1 l' l>",
    "c = l' l c' l^-1 l'^-1",
)

_TANGENT_LINE = (
    "[a, b]", "[a', b]", "[a, b^-1 b' b]", "[a', b^-1 b' b]",
    "<l, b>", "<l', b>", "<l^-1 l' l, b>",
    "b' = b l' l b l^-1 l'^-1 b^-1",
    "<l, a>", "<l', a>", "<l^-1 l' l, a>",
    "a' = a l' l a l^-1 l'^-1 a^-1",
)

_CONIC_BETWEEN_LINES = (
    "<a, c>", "<a', c>", "<a^-1 a' a, c>",
    "<c', b>", "<c', b'>", "<c', b^-1 b' b>",
    "b' b c' b^-1 b'^-1 = c a' a c a^-1 a'^-1 c^-1",
    "[c a c^-1, b]", "[c a c^-1, b']", "[c a' c^-1, b]", "[c a' c^-1, b']",
)

_VERONESE = (
    "<a', l>", "<a', l'>", "<a', l^-1 l' l>",
    "a = l' l a' l^-1 l'^-1",
    "<b, (l' l a') l (l' l a')^-1>",
    "<b, (l' l a') l' (l' l a')^-1>",
    "<b, (l' l a') l^-1 l' l (l' l a')^-1>",
    "b' = b (l' l a' l' l a'^-1 l^-1 l'^-1) b (l' l a' l' l a'^-1 l^-1 l'^-1)^-1 b^-1",
    "[a, b]", "[a, b']", "[a', b]", "[a', b']",
)

_CAYLEY = (
    "b = b'",
    "[a', b'^-1 c b']", "[a', b'^-1 c^-1 c' c b']",
    "[a, b'^-1 c b']", "[a, b'^-1 c^-1 c' c b']",
    "<a, b'>", "<a', b'>", "<a'^-1 a a', b'>",
    "b' = a^-1 a'^-1 b'^-1 c' c b' b b'^-1 c^-1 c'^-1 b' a' a",
    "<b' b b'^-1, c>", "<b' b b'^-1, c'>", "<b' b b'^-1, c' c c'^-1>",
)

_FOUR_POINT_STANDARD = (
    "<a', b>", "<a', b'>", "<a', b^-1 b' b>",
    "<c, d>", "<c', d>", "<c^-1 c' c, d>",
    "[b' b a' b^-1 b'^-1, d]",
    "[b' b a' b^-1 b'^-1, c^-1 c'^-1 d^-1 d' d c' c]",
    "<a, b>", "<a, b'>", "<a, b^-1 b' b>",
    "<c, d^-1 d' d>", "<c', d^-1 d' d>", "<c^-1 c' c, d^-1 d' d>",
    "[b' b a b^-1 b'^-1, d^-1 d' d]",
    "[b' b a b^-1 b'^-1, c^-1 c'^-1 d^-1 d'^-1 d d' d c' c]",
    "b' b a' b a'^-1 b^-1 b'^-1 = d c' d^-1",
    "b' b a' b' a'^-1 b^-1 b'^-1 = d c' c c'^-1 d^-1",
    "b' b a b a^-1 b^-1 b'^-1 = d^-1 d' d c' d^-1 d'^-1 d",
    "b' b a b' a^-1 b^-1 b'^-1 = d^-1 d' d c' c c'^-1 d^-1 d'^-1 d",
)

_FOUR_POINT_FAN = (
    "[b, c]", "[b', c]", "[a, c]", "[a', c]",
    "<a, b>", "<a', b>", "<a^-1 a' a, b>",
    "<c', d>", "<c', d'>", "<c', d^-1 d' d>",
    "[c b' c^-1, d' d c' d^-1 d'^-1]",
    "[b a' a b a^-1 a'^-1 b^-1, c^-1 d' d c' d^-1 d'^-1 c]",
    "[b a b^-1, c^-1 d' d c' d^-1 d'^-1 c]",
    "<c^-1 b' c, d>", "<c^-1 b' c, d'>", "<c^-1 b' c, d^-1 d' d>",
    "b a' a b a^-1 a'^-1 b^-1 = c^-1 d' d c b' c^-1 d^-1 d'^-1 c",
    "c = d' d c' d^-1 d'^-1",
    "[b a b^-1, c^-1 d c]", "[b a' b^-1, c^-1 d c]",
    "[b a b^-1, c^-1 d' c]", "[b a' b^-1, c^-1 d' c]",
)

_FIVE_POINT = (
    "[c, d]", "[c', d]",
    "<d', e>", "<d', e'>", "<d', e^-1 e' e>",
    "<b, d>", "<b', d>", "<b^-1 b' b, d>",
    "[d c d^-1, e' e d' e^-1 e'^-1]", "[d c' d^-1, e' e d' e^-1 e'^-1]",
    "d b' b d b^-1 b'^-1 d^-1 = e' e d' e^-1 e'^-1",
    "[a, d]", "[a', d]", "[a, e' e d' e^-1 e'^-1]", "[a', e' e d' e^-1 e'^-1]",
    "<a', b>", "<a', b'>", "<a', b^-1 b' b>",
    "<d c d^-1, e>", "<d c' d^-1, e>", "<d c^-1 c' c d^-1, e>",
    "b' b a' b a'^-1 b^-1 b'^-1 = d^-1 e d c' d^-1 e^-1 d",
    "b' b a' b' a'^-1 b^-1 b'^-1 = d^-1 e d c' c c'^-1 d^-1 e^-1 d",
    "[b' b a' b^-1 b'^-1, d^-1 e d]",
    "[c' c b' b a' b^-1 b'^-1 c^-1 c'^-1, d^-1 e^-1 e' e d]",
    "<a, b>", "<a, b'>", "<a, b^-1 b' b>",
    "<d c d^-1, e^-1 e' e>", "<d c' d^-1, e^-1 e' e>", "<d c^-1 c' c d^-1, e^-1 e' e>",
    "b' b a b a^-1 b^-1 b'^-1 = d^-1 e^-1 e' e d c' d^-1 e^-1 e'^-1 e d",
    "b' b a b' a^-1 b^-1 b'^-1 = d^-1 e^-1 e' e d c' c c'^-1 d^-1 e^-1 e'^-1 e d",
    "[b' b a b^-1 b'^-1, d^-1 e^-1 e' e d]",
    "[c' c b' b a b^-1 b'^-1 c^-1 c'^-1, d^-1 e^-1 e'^-1 e e' e d]",
)


def _schema(kind: VertexKind, variant: str, templates, description: str, **slot_docs) -> RelationSchema:
    return RelationSchema(kind, variant, SLOTS[(kind, variant)], tuple(templates), description, slot_docs)


_REGISTRY: Dict[Tuple[VertexKind, str], RelationSchema] = {
    s.key: s for s in (
        _schema(VertexKind.ONE_POINT, "branch", _ONE_POINT,
                "conic through a branch point",
                a="the edge, regenerating to a conic"),
        _schema(VertexKind.TWO_POINT, "conic_after_line", _TWO_POINT_CONIC_AFTER_LINE,
                "line tangent to a conic; the conic edge comes later in the edge order",
                l="line", c="diagonal edge regenerating to the conic"),
        _schema(VertexKind.TWO_POINT, "conic_before_line", _TWO_POINT_CONIC_BEFORE_LINE,
                "line tangent to a conic; the conic edge comes earlier in the edge order",
                c="diagonal edge regenerating to the conic", l="line"),
        _schema(VertexKind.THREE_POINT, "tangent_line", _TANGENT_LINE,
                "line tangent to two conics",
                l="tangent line", a="first conic", b="second conic"),
        _schema(VertexKind.THREE_POINT, "conic_between_lines", _CONIC_BETWEEN_LINES,
                "conic tangent to two lines",
                a="first line", c="conic", b="second line"),
        _schema(VertexKind.THREE_POINT, "veronese", _VERONESE,
                "line tangent to two conics, Veronese ordering",
                a="first conic", l="line", b="second conic"),
        _schema(VertexKind.THREE_POINT_CAYLEY, "cayley", _CAYLEY,
                "3-point of Cayley type",
                a="first edge", b="middle edge", c="last edge"),
        _schema(VertexKind.FOUR_POINT_STANDARD, "standard", _FOUR_POINT_STANDARD,
                "4-point regenerating to two conics and two pairs of parallel lines",
                a="outer line of the first pair", b="conic", c="conic", d="outer line of the second pair"),
        _schema(VertexKind.FOUR_POINT_FAN, "fan", _FOUR_POINT_FAN,
                "4-point whose lines fan out from one plane",
                a="first edge", b="second edge", c="third edge", d="fourth edge"),
        _schema(VertexKind.FIVE_POINT, "standard", _FIVE_POINT,
                "5-point: a 4-point with a fifth line",
                a="first edge", b="second edge", c="third edge", d="fourth edge", e="fifth edge"),
    )
}


def schema_registry() -> List[RelationSchema]:
    """Every shipped schema, in VertexKind order"""
    order = list(VertexKind)
    return sorted(_REGISTRY.values(), key=lambda s: (order.index(s.kind), s.variant))


def get_schema(kind: Optional[VertexKind], variant: Optional[str]) -> RelationSchema:
    """
    Raises:
        MissingSchema: nothing is registered for (kind, variant)
    """
    schema = _REGISTRY.get((kind, variant)) if kind is not None else None
    if schema is None:
        label = kind.value if kind is not None else "unknown kind"
        raise MissingSchema(f"No relation schema for {label} variant {variant!r}")
    return schema


def schema_for_vertex(v: Vertex) -> RelationSchema:
    kind = v.vertex_kind
    if kind is None:
        raise MissingSchema(f"Vertex {v.id}: no relation schema for kind {v.kind!r}")
    schema = get_schema(kind, v.resolved_variant())
    if len(v.incident) != kind.arity:
        raise RoleArityMismatch(f"Vertex {v.id}: {kind.value} needs {kind.arity} incident edges, has {len(v.incident)}")
    return schema
