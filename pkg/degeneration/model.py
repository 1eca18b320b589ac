#!/usr/bin/env python3

"""
Planar degenerations: unions of planes meeting pairwise in numbered lines,
with classified vertices.

Case files are JSON documents::

    {"name": ..., "planes": n,
     "edges": [{"index": j, "planes": [a, b]}, ...],
     "vertices": [{"id": v, "incident": [...], "kind": ..., "variant": ...,
                   "roles": {slot: edge}}, ...]}
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Tuple

logger = logging.getLogger(__name__)


class KindMismatch(ValueError):
    """Raised when a vertex's declared kind disagrees with its incidence"""


class UnknownEdge(ValueError):
    """Raised when an edge index is not part of the degeneration"""


class CaseFormatError(ValueError):
    """Raised when a case file is not structurally a degeneration"""


class VertexKind(Enum):
    """Singularity types of the degenerated branch curve, by template family"""
    ONE_POINT = "one_point"
    TWO_POINT = "two_point"
    THREE_POINT = "three_point"
    THREE_POINT_CAYLEY = "three_point_cayley"
    FOUR_POINT_STANDARD = "four_point_standard"
    FOUR_POINT_FAN = "four_point_fan"
    FIVE_POINT = "five_point"

    @property
    def arity(self) -> int:
        return _ARITY[self]

    @classmethod
    def from_label(cls, label: str) -> Optional["VertexKind"]:
        try:
            return cls(label)
        except ValueError:
            return None


_ARITY = {
    VertexKind.ONE_POINT: 1,
    VertexKind.TWO_POINT: 2,
    VertexKind.THREE_POINT: 3,
    VertexKind.THREE_POINT_CAYLEY: 3,
    VertexKind.FOUR_POINT_STANDARD: 4,
    VertexKind.FOUR_POINT_FAN: 4,
    VertexKind.FIVE_POINT: 5,
}

# (kind, variant) -> template slots; the first variant listed is the default
SLOTS: Dict[Tuple[VertexKind, str], Tuple[str, ...]] = {
    (VertexKind.ONE_POINT, "branch"): ("a",),
    (VertexKind.TWO_POINT, "conic_after_line"): ("l", "c"),
    (VertexKind.TWO_POINT, "conic_before_line"): ("c", "l"),
    (VertexKind.THREE_POINT, "tangent_line"): ("l", "a", "b"),
    (VertexKind.THREE_POINT, "conic_between_lines"): ("a", "c", "b"),
    (VertexKind.THREE_POINT, "veronese"): ("a", "l", "b"),
    (VertexKind.THREE_POINT_CAYLEY, "cayley"): ("a", "b", "c"),
    (VertexKind.FOUR_POINT_STANDARD, "standard"): ("a", "b", "c", "d"),
    (VertexKind.FOUR_POINT_FAN, "fan"): ("a", "b", "c", "d"),
    (VertexKind.FIVE_POINT, "standard"): ("a", "b", "c", "d", "e"),
}


def variants(kind: VertexKind) -> List[str]:
    return [v for k, v in SLOTS if k == kind]


@dataclass(frozen=True)
class Edge:
    index: int
    planes: Tuple[int, ...]

    @property
    def pair(self) -> FrozenSet[int]:
        return frozenset(self.planes)


@dataclass(frozen=True)
class Vertex:
    """
    A vertex of the degeneration.

    Attributes:
        id: vertex number
        incident: incident edge indices
        kind: kind label as written in the case file
        roles: (slot, edge) pairs
        variant: template variant; None selects the default for the kind
    """
    id: int
    incident: Tuple[int, ...]
    kind: str
    roles: Tuple[Tuple[str, int], ...] = ()
    variant: Optional[str] = None

    @property
    def vertex_kind(self) -> Optional[VertexKind]:
        return VertexKind.from_label(self.kind)

    @property
    def role_map(self) -> Dict[str, int]:
        return dict(self.roles)

    def resolved_variant(self) -> Optional[str]:
        """
        The template variant in force. Two-point vertices without an
        explicit variant use conic_after_line when the conic edge has the
        larger index and conic_before_line otherwise.
        """
        kind = self.vertex_kind
        if kind is None:
            return None
        if self.variant is not None:
            return self.variant
        if kind is VertexKind.TWO_POINT:
            roles = self.role_map
            if "l" in roles and "c" in roles:
                return "conic_after_line" if roles["c"] > roles["l"] else "conic_before_line"
        return variants(kind)[0]

    def slots(self) -> Optional[Tuple[str, ...]]:
        kind = self.vertex_kind
        variant = self.resolved_variant()
        if kind is None or variant is None:
            return None
        return SLOTS.get((kind, variant))

    def assignment(self) -> Dict[str, int]:
        """slot -> edge, filling the single slot of a one-point from its edge"""
        roles = self.role_map
        if not roles and self.vertex_kind is VertexKind.ONE_POINT and len(self.incident) == 1:
            return {"a": self.incident[0]}
        return roles


@dataclass(frozen=True)
class PlanarDegeneration:
    """
    A union of n planes (1..n) with numbered intersection lines.

    Attributes:
        name: case label
        n: number of planes
        edges: edges in case-file order
        vertices: vertices in case-file order
    """
    name: str
    n: int
    edges: Tuple[Edge, ...] = ()
    vertices: Tuple[Vertex, ...] = ()
    description: str = ""
    schema_extrapolation: bool = False

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge(self, j: int) -> Edge:
        for e in self.edges:
            if e.index == j:
                return e
        raise UnknownEdge(f"Edge {j} is not an edge of {self.name!r} (edges 1..{self.m})")

    def sorted_vertices(self) -> List[Vertex]:
        return sorted(self.vertices, key=lambda v: v.id)


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    element: str


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, rule: str, message: str, element: str):
        self.violations.append(Violation(rule, message, element))

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"[{v.rule}] {v.message} ({v.element})" for v in self.violations)


def validate(d: PlanarDegeneration) -> ValidationReport:
    """Check every structural invariant; violations are returned, never raised"""
    report = ValidationReport()
    declared = {}
    for e in d.edges:
        label = f"edge {e.index}"
        if len(e.planes) > 2:
            report.add("no-three-planes-in-a-line",
                       f"{len(e.planes)} planes {list(e.planes)} declared on one line", label)
        elif len(e.planes) < 2:
            report.add("edge-planes-count", f"edge names {len(e.planes)} plane(s), needs 2", label)
        if len(set(e.planes)) != len(e.planes):
            report.add("edge-planes-distinct", f"repeated plane in {list(e.planes)}", label)
        for plane in e.planes:
            if not 1 <= plane <= d.n:
                report.add("edge-planes-range", f"plane {plane} outside 1..{d.n}", label)
        if e.index in declared:
            report.add("edge-index-sequence", f"edge index {e.index} declared twice", label)
        declared[e.index] = e
    if sorted(declared) != list(range(1, len(declared) + 1)):
        report.add("edge-index-sequence", f"edge indices {sorted(declared)} are not 1..{len(declared)}", "edges")

    endpoints: Dict[int, List[int]] = {j: [] for j in declared}
    seen_ids = set()
    for v in d.vertices:
        label = f"vertex {v.id}"
        if v.id in seen_ids:
            report.add("vertex-duplicate-id", f"vertex id {v.id} used twice", label)
        seen_ids.add(v.id)
        for j in v.incident:
            if j not in declared:
                report.add("vertex-unknown-edge", f"incident edge {j} is not declared", label)
            else:
                endpoints[j].append(v.id)
        kind = v.vertex_kind
        if kind is None:
            report.add("vertex-unknown-kind", f"unknown kind {v.kind!r}", label)
            continue
        if len(v.incident) != kind.arity:
            report.add("vertex-arity", f"{kind.value} needs {kind.arity} incident edges, has {len(v.incident)}", label)
        slots = v.slots()
        if slots is None:
            report.add("vertex-roles", f"unknown variant {v.resolved_variant()!r} for {kind.value}", label)
            continue
        assignment = v.assignment()
        if sorted(assignment) != sorted(slots) or sorted(assignment.values()) != sorted(v.incident):
            report.add("vertex-roles",
                       f"roles {assignment} are not a bijection between slots {list(slots)} and edges {list(v.incident)}",
                       label)

    for j, owners in endpoints.items():
        if len(owners) != 2:
            report.add("edge-endpoint-count", f"edge {j} has {len(owners)} endpoint vertices, needs 2", f"edge {j}")

    by_line = {}
    for j, e in declared.items():
        if len(endpoints[j]) != 2:
            continue
        key = (e.pair, frozenset(endpoints[j]))
        if key in by_line:
            report.add("doubled-line", f"edges {by_line[key]} and {j} join the same planes and vertices", f"edge {j}")
        by_line[key] = j

    if not report.ok:
        logger.debug("%s: %d violations", d.name, len(report.violations))
    return report


def classify(d: PlanarDegeneration) -> Dict[int, int]:
    """
    Vertex id -> k (number of lines through the vertex).

    Raises:
        KindMismatch: the declared kind has a different arity
    """
    result = {}
    for v in d.vertices:
        kind = v.vertex_kind
        k = len(v.incident)
        if kind is None or kind.arity != k:
            expected = kind.arity if kind else "?"
            raise KindMismatch(f"Vertex {v.id} declared {v.kind} (arity {expected}) but has {k} incident edges")
        result[v.id] = k
    return result


def parasitic_pairs(d: PlanarDegeneration) -> FrozenSet[Tuple[int, int]]:
    """Pairs of edges (i < j) that share no vertex"""
    together = set()
    for v in d.vertices:
        for i, j in combinations(sorted(set(v.incident)), 2):
            together.add((i, j))
    indices = sorted(e.index for e in d.edges)
    return frozenset(pair for pair in combinations(indices, 2) if pair not in together)


def edge_transposition(d: PlanarDegeneration, j: int) -> Tuple[int, int]:
    """The transposition (a b) of S_n swapping the planes of edge j"""
    a, b = sorted(d.edge(j).planes)
    return a, b


###############################################################################
#                           CASE FILES                                        #
###############################################################################

def degeneration_from_dict(data: dict) -> PlanarDegeneration:
    try:
        edges = tuple(Edge(int(e["index"]), tuple(int(p) for p in e["planes"])) for e in data.get("edges", []))
        vertices = []
        for v in data.get("vertices", []):
            roles = tuple((str(slot), int(edge)) for slot, edge in (v.get("roles") or {}).items())
            vertices.append(Vertex(int(v["id"]), tuple(int(j) for j in v["incident"]), str(v["kind"]),
                                   roles, v.get("variant")))
        return PlanarDegeneration(str(data["name"]), int(data["planes"]), edges, tuple(vertices),
                                  str(data.get("description", "")), bool(data.get("schema_extrapolation", False)))
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise CaseFormatError(f"Malformed degeneration: {e!r}") from e


def degeneration_to_dict(d: PlanarDegeneration) -> dict:
    data = {
        "name": d.name,
        "planes": d.n,
        "edges": [{"index": e.index, "planes": list(e.planes)} for e in d.edges],
        "vertices": [],
    }
    for v in d.vertices:
        entry = {"id": v.id, "incident": list(v.incident), "kind": v.kind}
        if v.variant is not None:
            entry["variant"] = v.variant
        if v.roles:
            entry["roles"] = dict(v.roles)
        data["vertices"].append(entry)
    if d.description:
        data["description"] = d.description
    if d.schema_extrapolation:
        data["schema_extrapolation"] = True
    return data


def load_case(path: str) -> dict:
    """Raw JSON of a case file"""
    try:
        with open(path, "r") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise CaseFormatError(f"{path}: invalid JSON ({e})") from e


def load_degeneration(path: str) -> PlanarDegeneration:
    return degeneration_from_dict(load_case(path))
