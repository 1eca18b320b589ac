#!/usr/bin/env python3

"""
End-to-end analysis of a planar degeneration.

For the projective and the affine presentation alike: generate, add the
squares of the generators, Tietze-simplify (carrying the map to S_n),
build the coset table of the kernel from the image group, present the
kernel by Reidemeister-Schreier and read off its abelian invariants. The
projective run is then certified against S_n.
"""

import glob
import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from braids.audit import AuditResult, FactorizationSyntaxError, UnknownCompound, audit
from degeneration.model import (CaseFormatError, KindMismatch, PlanarDegeneration, UnknownEdge,
                                classify, degeneration_from_dict, load_case, validate)
from fpgroup.coset_enum import (Certificate, EnumerationLimits, InconsistentHom,
                                NonSurjective, Overflow, Verdict,
                                certify_symmetric, check_surjective,
                                table_from_hom, todd_coxeter)
from fpgroup.presentation import PermutationHom, Presentation, add_square_relators, cycle_notation
from fpgroup.tietze import TietzeResult, carry_hom, rewrite_word, tietze_simplify
from fpgroup.words import WordSyntaxError
from kernel_analysis.abelian import AbelianInvariants, abelianization
from kernel_analysis.reidemeister import KernelData, NotInKernel, element_image, reidemeister_schreier
from parameters import getParameters
from vankampen.generate import (GeneratedPresentation, check_image_consistency,
                                edge_images, generate, structure_problems)
from vankampen.schemas import MissingSchema, RoleArityMismatch

logger = logging.getLogger(__name__)

CONJUGATION_NOTE = ("C^Aff elements are read with conjugation g x g^-1; in the squares quotient "
                    "the conjugating generator words are involutions, so g x g gives the same class")

ISOMORPHISM_NOTE = ("kernel certified up to index, abelian invariants and torsion type; "
                    "the full isomorphism type is not independently certified")


def limits_from(params) -> EnumerationLimits:
    return EnumerationLimits(int(params.maxCosets), int(params.lookaheadRounds))


@dataclass
class QuotientAnalysis:
    """
    Kernel analysis of one squares quotient.

    Attributes:
        mode: "projective" or "affine"
        simplified: Tietze outcome on the squares quotient
        hom: map to S_n on the simplified generators
        kernel: Reidemeister-Schreier data of the kernel
        invariants: abelian invariants of the raw kernel presentation
        simplified_invariants: the same after Tietze on the kernel, when run
        crosscheck: "agree", "mismatch", "off" or "skipped (...)"
        index_check: coset count of the enumeration over the Schreier
            generators, or None on Overflow
    """
    mode: str
    generated: GeneratedPresentation
    simplified: TietzeResult
    hom: PermutationHom
    kernel: KernelData
    invariants: AbelianInvariants
    simplified_invariants: Optional[AbelianInvariants] = None
    crosscheck: str = "off"
    index_check: Optional[int] = None
    timings: Dict[str, float] = field(default_factory=dict)

    @property
    def presentation(self) -> Presentation:
        return self.simplified.presentation

    @property
    def image_order(self) -> int:
        return self.kernel.index

    def failures(self) -> List[str]:
        found = []
        if self.crosscheck == "mismatch":
            found.append(f"{self.mode}: simplified kernel invariants {self.simplified_invariants} "
                         f"differ from raw {self.invariants}")
        if self.index_check is not None and self.index_check != self.kernel.index:
            found.append(f"{self.mode}: enumeration over the Schreier generators gave index "
                         f"{self.index_check}, the image group has order {self.kernel.index}")
        return found

    def to_dict(self) -> dict:
        p = self.generated.presentation
        return {
            "mode": self.mode,
            "generators": p.num_generators,
            "relators": len(p.relators),
            "simplified_generators": self.presentation.num_generators,
            "simplified_relators": len(self.presentation.relators),
            "tietze_passes": self.simplified.passes,
            "budget_exceeded": self.simplified.budget_exceeded,
            "image_order": self.image_order,
            "schreier_generators": len(self.kernel.generators),
            "kernel_relators": len(self.kernel.presentation.relators),
            "invariants": str(self.invariants),
            "simplified_invariants": None if self.simplified_invariants is None else str(self.simplified_invariants),
            "crosscheck": self.crosscheck,
            "index_check": self.index_check,
        }


def analyze_quotient(d: PlanarDegeneration, projective: bool, params=None) -> QuotientAnalysis:
    """
    Raises:
        MissingSchema, RoleArityMismatch: from generation
        InconsistentHom: a relator does not map to the identity
        NonSurjective: the edge transpositions do not generate S_n
    """
    params = params or getParameters()
    timings = {}
    start = time.perf_counter()
    gp = generate(d, projective)
    failing = gp.hom.failing_relators(gp.presentation)
    if failing:
        raise InconsistentHom(f"{d.name}: relator {gp.presentation.tag(failing[0])} does not map to the identity")
    squares = add_square_relators(gp.presentation)
    simplified = tietze_simplify(squares, int(params.tietzeBudget), int(params.substitutionMaxRelators))
    hom = carry_hom(gp.hom, simplified)
    check_surjective(hom)
    timings["present"] = time.perf_counter() - start

    start = time.perf_counter()
    table = table_from_hom(simplified.presentation, hom)
    kernel = reidemeister_schreier(simplified.presentation, table)
    invariants = kernel.abelian_reduction().invariants
    timings["kernel"] = time.perf_counter() - start
    mode = "projective" if projective else "affine"
    qa = QuotientAnalysis(mode, gp, simplified, hom, kernel, invariants, timings=timings)

    start = time.perf_counter()
    if params.crosscheckKernel:
        if len(kernel.generators) > int(params.kernelTietzeMaxGenerators):
            qa.crosscheck = f"skipped ({len(kernel.generators)} Schreier generators)"
        else:
            reduced = tietze_simplify(kernel.presentation, int(params.tietzeBudget),
                                      int(params.substitutionMaxRelators))
            qa.simplified_invariants = abelianization(reduced.presentation)
            qa.crosscheck = "agree" if qa.simplified_invariants == invariants else "mismatch"
    subgroup = [g.word for g in kernel.generators]
    counted = todd_coxeter(simplified.presentation, subgroup, limits_from(params))
    qa.index_check = None if isinstance(counted, Overflow) else counted.index
    timings["checks"] = time.perf_counter() - start
    logger.info("%s %s: kernel index %d, invariants %s (%s)", d.name, mode, kernel.index, invariants, qa.crosscheck)
    return qa


@dataclass
class CaffProbe:
    """
    Attributes:
        element: the element as written
        classification: "disjoint-transposition commutator",
            "one-common-letter triple relation" or "unclassified"
        verdict: "nontrivial", "inconclusive-zero" or "not-in-kernel"
        image: abelianized kernel coordinates, when in the kernel
        order: order of the image, None for infinite order or outside the kernel
        components: cycle notation of the component images
    """
    element: str
    mode: str
    classification: str
    verdict: str
    image: Optional[List[int]] = None
    components: List[str] = field(default_factory=list)
    order: Optional[int] = None
    note: str = CONJUGATION_NOTE

    def to_dict(self) -> dict:
        return {
            "element": self.element,
            "mode": self.mode,
            "classification": self.classification,
            "verdict": self.verdict,
            "image": self.image,
            "components": list(self.components),
            "order": self.order,
            "note": self.note,
        }


def _classify_element(parsed, hom: PermutationHom) -> Tuple[str, List[str]]:
    if parsed.kind not in ("commutator", "triple"):
        return "unclassified", []
    x, y = (hom.image(part) for part in parsed.parts)
    components = [cycle_notation(x), cycle_notation(y)]
    sx, sy = set(x.support()), set(y.support())
    transpositions = len(sx) == 2 and len(sy) == 2
    if parsed.kind == "commutator" and transpositions and not sx & sy:
        return "disjoint-transposition commutator", components
    if parsed.kind == "triple" and transpositions and len(sx & sy) == 1:
        return "one-common-letter triple relation", components
    return "unclassified", components


def probe_elements(qa: QuotientAnalysis, elements: Sequence[str]) -> List[CaffProbe]:
    """
    Raises:
        WordSyntaxError: an element does not parse over the generators
    """
    original = qa.generated.presentation
    hom = qa.generated.hom
    probes = []
    for text in elements:
        parsed = original.parse(text)
        classification, components = _classify_element(parsed, hom)
        word = rewrite_word(parsed.word, qa.simplified)
        try:
            image = element_image(word, qa.kernel)
        except NotInKernel:
            probes.append(CaffProbe(text, qa.mode, classification, "not-in-kernel", None, components))
            continue
        verdict = "inconclusive-zero" if image.is_zero else "nontrivial"
        probes.append(CaffProbe(text, qa.mode, classification, verdict, image.as_list(), components, image.order))
        logger.info("probe %s (%s): %s %s", text, qa.mode, verdict, image)
    return probes


def caff_probe(d: PlanarDegeneration, elements: Sequence[str], params=None,
               projective: bool = False) -> List[CaffProbe]:
    """Classify and test candidate C^Aff elements in the (default affine) squares quotient kernel"""
    return probe_elements(analyze_quotient(d, projective, params), elements)


def probe_exit_code(probes: Sequence[CaffProbe]) -> int:
    """1 if an element is outside the kernel, 2 if one has zero image, else 0"""
    verdicts = {p.verdict for p in probes}
    if not probes or "not-in-kernel" in verdicts:
        return 1
    return 2 if "inconclusive-zero" in verdicts else 0


###############################################################################
#                           REPORTS                                           #
###############################################################################

@dataclass
class AnalysisReport:
    case: str
    planes: int = 0
    edges: int = 0
    vertices: int = 0
    vertex_arity: Dict[int, int] = field(default_factory=dict)
    generators: int = 0
    relators: int = 0
    image_map: Dict[str, str] = field(default_factory=dict)
    consistent: Optional[bool] = None
    structure_problems: List[str] = field(default_factory=list)
    verdict: Optional[str] = None
    cosets: Optional[int] = None
    verdict_reason: str = ""
    projective: Optional[dict] = None
    affine: Optional[dict] = None
    kernel_invariants: Optional[str] = None
    affine_invariants: Optional[str] = None
    torsion_two_power: Optional[bool] = None
    probes: List[CaffProbe] = field(default_factory=list)
    audit: Optional[AuditResult] = None
    timings: Dict[str, float] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def inconclusive(self) -> bool:
        budget = any(q and q.get("budget_exceeded") for q in (self.projective, self.affine))
        return self.verdict == Verdict.INCONCLUSIVE.value or budget

    @property
    def exit_code(self) -> int:
        if self.errors or self.failures:
            return 1
        return 2 if self.inconclusive else 0

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "planes": self.planes,
            "edges": self.edges,
            "vertices": self.vertices,
            "vertex_arity": {str(k): v for k, v in self.vertex_arity.items()},
            "generators": self.generators,
            "relators": self.relators,
            "image_map": dict(self.image_map),
            "consistent": self.consistent,
            "structure_problems": list(self.structure_problems),
            "verdict": self.verdict,
            "cosets": self.cosets,
            "verdict_reason": self.verdict_reason,
            "projective": self.projective,
            "affine": self.affine,
            "kernel_invariants": self.kernel_invariants,
            "affine_invariants": self.affine_invariants,
            "torsion_two_power": self.torsion_two_power,
            "probes": [p.to_dict() for p in self.probes],
            "audit": None if self.audit is None else self.audit.to_dict(),
            "timings": {k: round(v, 4) for k, v in self.timings.items()},
            "errors": list(self.errors),
            "failures": list(self.failures),
            "notes": list(self.notes),
            "exit_code": self.exit_code,
        }

    def to_text(self) -> str:
        data = self.to_dict()
        lines = ["=" * 60, f"ANALYSIS: {self.case}", "=" * 60]
        for key, value in data.items():
            if key in ("case", "projective", "affine", "probes", "audit"):
                continue
            if isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"   {k}: {v}" for k, v in value.items())
            elif isinstance(value, list):
                lines.append(f"{key}: {len(value)}")
                lines.extend(f"   - {item}" for item in value)
            else:
                lines.append(f"{key}: {value}")
        for key in ("projective", "affine", "audit"):
            if data[key] is not None:
                lines.append("-" * 60)
                lines.append(f"{key}:")
                lines.extend(f"   {k}: {v}" for k, v in data[key].items())
        for probe in data["probes"]:
            lines.append("-" * 60)
            lines.append("probe:")
            lines.extend(f"   {k}: {v}" for k, v in probe.items())
        lines.append("=" * 60)
        return "\n".join(lines)


def _check_consistency(report: AnalysisReport, proj: QuotientAnalysis, aff: Optional[QuotientAnalysis]):
    if report.verdict == Verdict.ISO_SYMMETRIC.value and not proj.invariants.is_trivial:
        report.failures.append(f"IsoSymmetric but kernel invariants are {proj.invariants}")
    if proj.invariants.is_trivial and report.verdict == Verdict.KERNEL_NONTRIVIAL.value:
        report.notes.append("kernel has trivial abelianization but is nontrivial (perfect kernel)")
    if aff is not None:
        a, b = aff.invariants, proj.invariants
        if a.free_rank < b.free_rank or a.free_rank + len(a.torsion) < b.free_rank + len(b.torsion):
            report.failures.append(f"affine kernel {a} cannot surject onto projective kernel {b}")


def analyze(d: PlanarDegeneration, params=None, probes: Sequence[str] = (),
            factorization: Optional[str] = None, strands: Optional[int] = None) -> AnalysisReport:
    """
    Full analysis of one degeneration. Schema, homomorphism and input
    problems become report errors; nothing is raised for them.
    """
    params = params or getParameters()
    report = AnalysisReport(d.name, d.n, d.m, len(d.vertices))
    if d.schema_extrapolation:
        report.notes.append("schema extrapolation: vertex roles are not taken from published relation lists")

    validation = validate(d)
    if not validation.ok:
        report.errors.extend(f"[{v.rule}] {v.message} ({v.element})" for v in validation.violations)
        return report
    try:
        report.vertex_arity = classify(d)
        gp = generate(d, projective=True)
    except (MissingSchema, RoleArityMismatch, CaseFormatError, KindMismatch, UnknownEdge) as e:
        report.errors.append(f"{type(e).__name__}: {e}")
        return report
    report.generators = gp.presentation.num_generators
    report.relators = len(gp.presentation.relators)
    report.image_map = edge_images(gp)
    report.consistent = check_image_consistency(gp)
    report.structure_problems = structure_problems(gp)
    report.failures.extend(report.structure_problems)
    if not report.consistent:
        report.errors.append("InconsistentHom: some relator does not map to the identity of S_n")
        return report

    quotients = {}
    for projective in (True, False):
        mode = "projective" if projective else "affine"
        try:
            qa = analyze_quotient(d, projective, params)
        except (NonSurjective, InconsistentHom) as e:
            report.errors.append(f"{mode}: {type(e).__name__}: {e}")
            continue
        quotients[mode] = qa
        report.failures.extend(qa.failures())
        for stage, seconds in qa.timings.items():
            report.timings[f"{mode}.{stage}"] = seconds
    proj, aff = quotients.get("projective"), quotients.get("affine")
    if proj is not None:
        report.projective = proj.to_dict()
        report.kernel_invariants = str(proj.invariants)
        report.torsion_two_power = proj.invariants.torsion_is_two_power
        start = time.perf_counter()
        certificate: Certificate = certify_symmetric(proj.presentation, proj.hom, limits_from(params),
                                                     kernel_nonzero=not proj.invariants.is_trivial)
        report.timings["certify"] = time.perf_counter() - start
        report.verdict = certificate.verdict.value
        report.cosets = certificate.cosets
        report.verdict_reason = certificate.reason
        if certificate.verdict is Verdict.KERNEL_NONTRIVIAL:
            report.notes.append(ISOMORPHISM_NOTE)
        _check_consistency(report, proj, aff)
    if aff is not None:
        report.affine = aff.to_dict()
        report.affine_invariants = str(aff.invariants)
        if probes:
            try:
                report.probes = probe_elements(aff, probes)
            except WordSyntaxError as e:
                report.errors.append(f"WordSyntaxError: {e}")

    if factorization is not None:
        try:
            report.audit = audit(factorization, strands or 2 * d.m)
        except (FactorizationSyntaxError, UnknownCompound, OSError) as e:
            report.errors.append(f"audit: {type(e).__name__}: {e}")
        else:
            if not report.audit.passed:
                report.failures.append(f"audit {factorization}: full-twist check failed")
    return report


###############################################################################
#                           CORPUS                                            #
###############################################################################

@dataclass
class CaseFixture:
    """
    A case file with its expectations.

    Attributes:
        degeneration: the parsed degeneration
        expected: verdict, index, invariants, affine_invariants,
            torsion_two_power, max_free_rank, validation_only, provenance,
            published_invariants (a claimed value kept for comparison only)
        factorization: (path, strands) of a braid factorization to audit
        probes: [{"element": ..., "verdict": ..., "order": ...}]
    """
    path: str
    degeneration: PlanarDegeneration
    expected: dict = field(default_factory=dict)
    factorization: Optional[tuple] = None
    probes: List[dict] = field(default_factory=list)

    @classmethod
    def from_file(cls, path: str) -> "CaseFixture":
        data = load_case(path)
        d = degeneration_from_dict(data)
        factorization = None
        if data.get("factorization"):
            entry = data["factorization"]
            factorization = (os.path.join(os.path.dirname(path), entry["file"]), int(entry["strands"]))
        return cls(path, d, dict(data.get("expected") or {}), factorization, list(data.get("probes") or []))


def load_fixtures(directory: str) -> List[CaseFixture]:
    return [CaseFixture.from_file(path) for path in sorted(glob.glob(os.path.join(directory, "*.json")))]


@dataclass
class FixtureResult:
    case: str
    passed: bool
    verdict: Optional[str] = None
    index: Optional[int] = None
    invariants: Optional[str] = None
    seconds: float = 0.0
    failures: List[str] = field(default_factory=list)
    inconclusive: bool = False
    report: Optional[AnalysisReport] = None
    notes: List[str] = field(default_factory=list)

    def row(self) -> dict:
        return {
            "case": self.case,
            "passed": self.passed,
            "verdict": self.verdict,
            "index": self.index,
            "invariants": self.invariants,
            "seconds": round(self.seconds, 3),
            "failures": "; ".join(self.failures),
        }


@dataclass
class CorpusSummary:
    results: List[FixtureResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        return 2 if any(r.inconclusive for r in self.results) else 0

    def rows(self) -> List[dict]:
        return [r.row() for r in self.results]


def check_expectations(report: AnalysisReport, expected: dict) -> List[str]:
    failures = []
    if "verdict" in expected and report.verdict != expected["verdict"]:
        failures.append(f"verdict {report.verdict}, expected {expected['verdict']}")
    if "index" in expected:
        index = report.projective["image_order"] if report.projective else None
        if index != expected["index"]:
            failures.append(f"index {index}, expected {expected['index']}")
    if "invariants" in expected and report.kernel_invariants != str(AbelianInvariants.parse(expected["invariants"])):
        failures.append(f"kernel invariants {report.kernel_invariants}, expected {expected['invariants']}")
    if "affine_invariants" in expected and \
            report.affine_invariants != str(AbelianInvariants.parse(expected["affine_invariants"])):
        failures.append(f"affine invariants {report.affine_invariants}, expected {expected['affine_invariants']}")
    if expected.get("torsion_two_power") and not report.torsion_two_power:
        failures.append(f"kernel torsion of {report.kernel_invariants} is not 2-power")
    if "max_free_rank" in expected and report.kernel_invariants is not None:
        rank = AbelianInvariants.parse(report.kernel_invariants).free_rank
        if rank > expected["max_free_rank"]:
            failures.append(f"kernel free rank {rank} exceeds {expected['max_free_rank']}")
    return failures


def run_fixture(fixture: CaseFixture, params=None) -> FixtureResult:
    start = time.perf_counter()
    d = fixture.degeneration
    if fixture.expected.get("validation_only"):
        validation = validate(d)
        failures = [str(v) for v in validation.violations]
        return FixtureResult(d.name, not failures, seconds=time.perf_counter() - start, failures=failures)
    probes = [p["element"] for p in fixture.probes]
    factorization, strands = fixture.factorization or (None, None)
    report = analyze(d, params, probes, factorization, strands)
    failures = list(report.errors) + list(report.failures) + check_expectations(report, fixture.expected)
    for probe, wanted in zip(report.probes, fixture.probes):
        if "verdict" in wanted and probe.verdict != wanted["verdict"]:
            failures.append(f"probe {probe.element}: {probe.verdict}, expected {wanted['verdict']}")
        if "classification" in wanted and probe.classification != wanted["classification"]:
            failures.append(f"probe {probe.element}: {probe.classification}, expected {wanted['classification']}")
        if "order" in wanted and probe.order != wanted["order"]:
            failures.append(f"probe {probe.element}: order {probe.order}, expected {wanted['order']}")
    notes = []
    published = fixture.expected.get("published_invariants")
    if published and report.kernel_invariants is not None and \
            report.kernel_invariants != str(AbelianInvariants.parse(published)):
        notes.append(f"published kernel invariants {published} differ from computed {report.kernel_invariants}")
        report.notes.extend(notes)
    index = report.projective["image_order"] if report.projective else None
    return FixtureResult(d.name, not failures, report.verdict, index, report.kernel_invariants,
                         time.perf_counter() - start, failures, report.inconclusive, report, notes)


def run_corpus(fixtures: Sequence[CaseFixture], params=None) -> CorpusSummary:
    """Run every fixture in order; each result records its own failures"""
    summary = CorpusSummary()
    for fixture in fixtures:
        result = run_fixture(fixture, params)
        status = "PASS" if result.passed else "FAIL"
        logger.info("%s: %s (%.2fs)", fixture.degeneration.name, status, result.seconds)
        summary.results.append(result)
    return summary


def report_json(report: AnalysisReport) -> str:
    return json.dumps(report.to_dict(), indent=2)
