#!/usr/bin/env python3

"""
Command line entry point.

    python galois_cover.py validate cases/five_point.json
    python galois_cover.py analyze cases/veronese_plus_plane.json --save
    python galois_cover.py probe cases/cayley_type2.json --element "[g3 g4 g3^-1, g2^-1]"
    python galois_cover.py corpus cases --save
    python galois_cover.py audit cases/quintic_fan_vertex5_table.txt --strands 6

Exit codes: 0 success, 1 assertion failure or bad input, 2 inconclusive.
"""

import argparse
import logging
import sys

from rich.logging import RichHandler

from braids.audit import FactorizationSyntaxError, UnknownCompound, audit
from degeneration.model import CaseFormatError, load_degeneration, validate
from fpgroup.coset_enum import NonSurjective
from fpgroup.presentation import add_square_relators, dump_presentation
from fpgroup.tietze import tietze_simplify
from fpgroup.words import WordSyntaxError
from parameters import getParameters
from pipeline import analyze, caff_probe, load_fixtures, probe_exit_code, report_json, run_corpus
from report_logger import AnalysisLogger
from report_viewer import view
from vankampen.generate import generate
from vankampen.schemas import MissingSchema, RoleArityMismatch

logger = logging.getLogger(__name__)

INPUT_ERRORS = (OSError, CaseFormatError, MissingSchema, RoleArityMismatch, WordSyntaxError,
                FactorizationSyntaxError, UnknownCompound, NonSurjective)


def setup_logging(level: str):
    logging.basicConfig(level=level.upper(), format="%(message)s", datefmt="[%X]",
                        handlers=[RichHandler(rich_tracebacks=True, show_path=False)], force=True)


def cmd_validate(args, params) -> int:
    d = load_degeneration(args.case)
    report = validate(d)
    print("=" * 60)
    print(f"[INFO] {d.name}: {d.n} planes, {d.m} edges, {len(d.vertices)} vertices")
    if report.ok:
        print("[INFO] valid")
    for v in report.violations:
        print(f"[ERROR] [{v.rule}] {v.message} ({v.element})")
    print("=" * 60)
    return 0 if report.ok else 1


def cmd_present(args, params) -> int:
    d = load_degeneration(args.case)
    gp = generate(d, projective=not args.affine)
    p = gp.presentation
    title = f"{d.name} ({'affine' if args.affine else 'projective'})"
    if args.simplify:
        result = tietze_simplify(add_square_relators(p), int(params.tietzeBudget), int(params.substitutionMaxRelators))
        p = result.presentation
        title += ", squares quotient simplified"
        if result.budget_exceeded:
            print(f"[WARNING] Tietze budget exceeded after {result.passes} passes")
    print(dump_presentation(p, title), end="")
    return 0


def cmd_analyze(args, params) -> int:
    d = load_degeneration(args.case)
    report = analyze(d, params)
    print(report_json(report) if args.json else report.to_text())
    if args.save:
        session = AnalysisLogger(params.reportDir)
        session.log_report(report)
        session.save()
    return report.exit_code


def cmd_probe(args, params) -> int:
    d = load_degeneration(args.case)
    probes = caff_probe(d, args.element, params, projective=args.projective)
    print("=" * 60)
    for probe in probes:
        print(f"[INFO] {probe.element} ({probe.mode} squares quotient)")
        print(f"   classification: {probe.classification}")
        print(f"   component images: {' '.join(probe.components) or '-'}")
        print(f"   verdict: {probe.verdict}")
        if probe.image is not None:
            print(f"   abelianized image: {probe.image}")
            print(f"   order: {probe.order or 'infinite'}")
        print(f"   note: {probe.note}")
    print("=" * 60)
    return probe_exit_code(probes)


def cmd_corpus(args, params) -> int:
    fixtures = load_fixtures(args.directory)
    summary = run_corpus(fixtures, params)
    print("=" * 60)
    print(f"[INFO] CORPUS: {len(summary.results)} fixtures, {summary.passed} passed, {summary.failed} failed")
    print("=" * 60)
    for result in summary.results:
        tag = "[INFO]" if result.passed else "[ERROR]"
        print(f"{tag} {result.case}: {'PASS' if result.passed else 'FAIL'} "
              f"verdict={result.verdict} index={result.index} invariants={result.invariants} "
              f"({result.seconds:.2f}s)")
        for failure in result.failures:
            print(f"   - {failure}")
        for note in result.notes:
            print(f"   [WARNING] {note}")
    print("=" * 60)
    if args.save:
        session = AnalysisLogger(params.reportDir)
        session.log_corpus(summary)
        session.save()
    return summary.exit_code


def cmd_audit(args, params) -> int:
    result = audit(args.factorization, args.strands)
    print("=" * 60)
    for key, value in result.to_dict().items():
        print(f"   {key}: {value}")
    print("=" * 60)
    if not result.passed:
        print("[ERROR] full-twist check failed")
        return 1
    return 0


def cmd_view(args, params) -> int:
    return view(params.reportDir, args.session, args.latest, args.compare)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Fundamental groups of Galois covers from planar degenerations")
    parser.add_argument("--log-level", default=None, help="logging level (default from parameters)")
    parser.add_argument("--report-dir", default=None, help="analysis session directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a degeneration case file")
    p.add_argument("case")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("present", help="print the van Kampen presentation")
    p.add_argument("case")
    p.add_argument("--affine", action="store_true", help="omit the projective relator")
    p.add_argument("--simplify", action="store_true", help="add squares and Tietze-simplify first")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("analyze", help="certify against S_n and compute kernel invariants")
    p.add_argument("case")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="Tietze pass budget")
    p.add_argument("--json", action="store_true", help="print the JSON mirror instead of text")
    p.add_argument("--save", action="store_true", help="write the report session to the report directory")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("probe", help="test candidate C^Aff elements")
    p.add_argument("case")
    p.add_argument("--element", action="append", required=True, help="element word, may be repeated")
    p.add_argument("--projective", action="store_true", help="use the projective squares quotient")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("corpus", help="run every case file of a directory against its expectations")
    p.add_argument("directory")
    p.add_argument("--save", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("audit", help="exponent sum and permutation of a braid factorization")
    p.add_argument("factorization")
    p.add_argument("--strands", type=int, required=True)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("view", help="browse saved analysis sessions")
    p.add_argument("--session", type=int)
    p.add_argument("--latest", action="store_true")
    p.add_argument("--compare", nargs="+", type=int)
    p.set_defaults(func=cmd_view)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = getParameters()
    if args.log_level:
        params.logLevel = args.log_level
    if args.report_dir:
        params.reportDir = args.report_dir
    if getattr(args, "max_cosets", None):
        params.maxCosets = args.max_cosets
    if getattr(args, "budget", None):
        params.tietzeBudget = args.budget
    setup_logging(params.logLevel)
    try:
        return args.func(args, params)
    except INPUT_ERRORS as e:
        print(f"[ERROR] {type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
