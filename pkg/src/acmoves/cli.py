"""Command-line entry point.

Exit codes: 0 success, 1 check/extraction failure, 2 parse or usage error,
3 search ended without a path.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certificate import (
    CertificateSyntaxError,
    ReplayError,
    check,
    compress_conjugations,
    parse_certificate,
    render_certificate,
)
from .encode import EncodeError, Translation, emit_task
from .presentation import (
    PresentationSyntaxError,
    abs_det,
    exponent_matrix,
    get_family,
    parse_presentation,
)
from .proofex import ExtractionError, ProofParseError, extract_certificate, parse_proof
from .search import SearchLimits, Strategy, search
from .word import WordSyntaxError, cyclic_reduce, render_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _presentation(text: str):
    if text.startswith("@"):
        text = _read(text[1:])
        text = next((l for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")), "")
    try:
        return parse_presentation(text)
    except (PresentationSyntaxError, WordSyntaxError, ValueError) as exc:
        raise UsageError(f"bad presentation {text.strip()!r}: {exc}") from None


def _family(name: str):
    try:
        return get_family(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _certificate(path: str):
    try:
        return parse_certificate(_read(path))
    except CertificateSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_check(args) -> int:
    report = check(_certificate(args.certificate))
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_search(args) -> int:
    source, target = _presentation(args.source), _presentation(args.target)
    limits = SearchLimits(args.max_relator_len, args.max_states, args.max_seconds, args.beam_width)
    progress = (lambda msg: print(msg, file=sys.stderr)) if not args.quiet else None
    try:
        result = search(source, target, _family(args.family), args.strategy, limits, progress, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"outcome: {result.outcome.value}")
    print(f"states expanded: {result.states_expanded}")
    print(f"frontier peak: {result.frontier_peak}")
    if not result.found:
        return EXIT_NOT_FOUND
    print(f"moves: {len(result.certificate)}")
    _write(args.output, render_certificate(result.certificate))
    return EXIT_OK


def cmd_encode(args) -> int:
    source, target = _presentation(args.source), _presentation(args.target)
    try:
        task = emit_task(source, target, Translation.parse(args.translation))
    except (EncodeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, task.raw if args.raw else task.text)
    return EXIT_OK


def cmd_extract(args) -> int:
    start = _presentation(args.source) if args.source else None
    end = _presentation(args.target) if args.target else None
    try:
        proof = parse_proof(_read(args.proof))
    except ProofParseError as exc:
        raise UsageError(f"{args.proof}: {exc}") from None
    try:
        cert = extract_certificate(proof, _family(args.family), start, end, bridge=args.bridge)
    except ExtractionError as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = check(cert)
    if not report.ok:
        print(f"extracted certificate does not check: {report.message}", file=sys.stderr)
        return EXIT_FAIL
    print(f"extracted {len(cert)} moves", file=sys.stderr)
    _write(args.output, render_certificate(cert))
    return EXIT_OK


def cmd_compress(args) -> int:
    cert = _certificate(args.certificate)
    try:
        out = compress_conjugations(cert)
    except ReplayError as exc:
        print(f"certificate does not replay: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"{len(cert)} -> {len(out)} moves", file=sys.stderr)
    _write(args.output, render_certificate(out))
    return EXIT_OK


def cmd_info(args) -> int:
    p = _presentation(args.presentation)
    print(f"presentation: {p}")
    print(f"generators: {p.n}  relators: {len(p.relators)}  balanced: {p.balanced}")
    print("lengths: " + ", ".join(str(len(r)) for r in p.relators) + f"  (total {p.total_length})")
    print("exponent matrix:")
    for row in exponent_matrix(p):
        print("  " + " ".join(f"{v:3d}" for v in row))
    if p.balanced:
        print(f"|det|: {abs_det(p)}")
    print("cyclic reductions:")
    for r in p.relators:
        core, u = cyclic_reduce(r)
        print(f"  {render_word(r, p.n)} = u core u^-1 with core {render_word(core, p.n)}, u {render_word(u, p.n)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acmoves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="replay a certificate and report")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="search for a path between two presentations")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--family", default="MODIFIED12")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="greedy")
    p.add_argument("--beam-width", type=int, default=1000)
    p.add_argument("--max-relator-len", type=int, default=14)
    p.add_argument("--max-states", type=int, default=1_000_000)
    p.add_argument("--max-seconds", type=float, default=600.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("encode", help="emit a prover task")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--translation", choices=["ground", "nonground", "modified"], default="nonground")
    p.add_argument("--raw", action="store_true", help="bare Assumptions/Goal blocks")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("extract", help="build a certificate from a prover proof")
    p.add_argument("proof")
    p.add_argument("--family", default="EXTENDED")
    p.add_argument("--from", dest="source")
    p.add_argument("--to", dest="target")
    p.add_argument("--bridge", type=int, default=0, help="BFS depth allowed to close a gap")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("compress", help="merge runs of conjugations")
    p.add_argument("certificate")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("info", help="invariants of a presentation")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_info)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
