# app/main.py
"""
Odd Khovanov homology of braid closures – command line
======================================================

Subcommands:
- homology       bigraded KH', KHr' or KH over Z, Q or F_p
- invariant      status of the odd / reduced / even Plamenevskaya class
- grid-to-braid  braid word read off a grid diagram
- jones          unnormalized Jones polynomial
- tex            TikZ pictures of braids, grids, knots and fronts
- survey         corpus table of invariant statuses
- selfcheck      structural checks on built-in samples
- mirror, reverse, connect-sum   braid word utilities

Usage:
    python -m app.main homology --grid "0,1,6,2,5,7,8,3,4,9;6,7,8,9,1,4,5,0,2,3" --sigma 6
"""

import argparse
import sys
from typing import Optional, Sequence

from loguru import logger
from pydantic import TypeAdapter, ValidationError

from app.config import configure_logging, settings
from app.core.braid import BraidWord, format_braid, mirror, parse_braid, reverse, self_linking
from app.core.grid import GridDiagram, grid_to_braid, parse_grid, render_diagram
from app.engine.complex import Coefficients, Theory, complex_of, jones_polynomial
from app.engine.homology import format_report, homology, to_report_model
from app.errors import CubeTooLarge, KhovanovError
from app.models import CliConfig, SurveyRow
from app.services.invariant import invariant_status
from app.services.selfcheck import run_selfcheck
from app.services.survey import entry_braid, format_table, load_corpus, survey

THEORY_CHOICES = ["odd", "odd-reduced", "even"]
RENDER_KINDS = {"braid": "braid", "grid": "grid", "knot": "knot", "front": "legendrian_front"}


# ====================
# PARSER
# ====================
def _add_input(p: argparse.ArgumentParser, grid_only: bool = False) -> None:
    source = p.add_mutually_exclusive_group(required=True)
    if not grid_only:
        source.add_argument("--braid", help='braid word, e.g. "1,-2,1,-2" or "1,1@3"')
    source.add_argument("--grid", help='grid diagram "xs;os", X and O rows per column')
    p.add_argument("--direction", default="right", choices=["right", "left", "up", "down"],
                   help="braiding direction for --grid (default: right)")


def _add_theory(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theory", default="odd", choices=THEORY_CHOICES)
    p.add_argument("--coeff", default=None, help="Z, Q or Fp:<p> (default from ODDKH_COEFFICIENTS)")
    p.add_argument("--format", dest="output_format", default="text", choices=["text", "json"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oddkh",
        description="Odd Khovanov homology and transverse invariants of braid closures.",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default from ODDKH_THREADS)")
    parser.add_argument("--output", "-o", default=None, help="write the result to a file instead of stdout")
    parser.add_argument("--max-crossings", type=int, default=None,
                        help="refuse words longer than this (default from ODDKH_MAX_CROSSINGS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="bigraded homology listing")
    _add_input(p)
    _add_theory(p)
    p.add_argument("--sigma", type=int, default=None, help="signature to print on the summary line")

    p = sub.add_parser("invariant", help="status of the Plamenevskaya class")
    _add_input(p)
    _add_theory(p)
    p.add_argument("--fine", action="store_true", help="print torsion orders instead of NonZero")

    p = sub.add_parser("grid-to-braid", help="braid word of a grid diagram")
    _add_input(p, grid_only=True)

    p = sub.add_parser("jones", help="unnormalized Jones polynomial")
    _add_input(p)

    p = sub.add_parser("tex", help="TikZ picture")
    _add_input(p)
    p.add_argument("--what", default="braid", choices=sorted(RENDER_KINDS))

    p = sub.add_parser("survey", help="invariant table for a JSON-lines corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", dest="output_format", default="text", choices=["text", "json"])

    sub.add_parser("selfcheck", help="structural checks on built-in samples")

    for name in ("mirror", "reverse"):
        p = sub.add_parser(name, help=f"{name} of a braid word")
        _add_input(p)

    p = sub.add_parser("connect-sum", help="connected sum of two braid words")
    p.add_argument("--braid", required=True)
    p.add_argument("--with", dest="other", required=True)
    return parser


# ====================
# HELPERS
# ====================
def _braid_from(args: argparse.Namespace) -> BraidWord:
    if getattr(args, "braid", None) is not None:
        return parse_braid(args.braid)
    return grid_to_braid(parse_grid(args.grid), args.direction)


def _guard(b: BraidWord, limit: int) -> BraidWord:
    if b.n > limit:
        raise CubeTooLarge(f"{b.n} crossings exceed the limit of {limit} (raise --max-crossings to force)")
    return b


def _config(args: argparse.Namespace, coefficients: str) -> CliConfig:
    return CliConfig(
        command=args.command,
        braid=getattr(args, "braid", None),
        grid=getattr(args, "grid", None),
        corpus=getattr(args, "corpus", None),
        theory=getattr(args, "theory", "odd"),
        coefficients=coefficients,
        output_format=getattr(args, "output_format", "text"),
        threads=args.threads or settings.threads,
        verbose=args.verbose,
    )


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info(f"wrote {output}")
    else:
        sys.stdout.write(text)


# ====================
# COMMANDS
# ====================
class SelfcheckFailed(Exception):
    """Carries the check listing so it is still written before exiting 1."""


def _dispatch(args: argparse.Namespace, cfg: CliConfig, limit: int) -> str:
    command = cfg.command
    if command == "homology":
        b = _guard(_braid_from(args), limit)
        theory, coefficients = Theory.parse(cfg.theory), Coefficients.parse(cfg.coefficients)
        groups = homology(complex_of(b, theory, coefficients), cfg.threads)
        if cfg.output_format == "json":
            return to_report_model(groups, theory, coefficients).model_dump_json(indent=2) + "\n"
        return format_report(groups, theory, sl=self_linking(b), sigma=args.sigma, coefficients=coefficients)

    if command == "invariant":
        b = _guard(_braid_from(args), limit)
        status = invariant_status(b, Theory.parse(cfg.theory), Coefficients.parse(cfg.coefficients))
        if cfg.output_format == "json":
            return status.to_model().model_dump_json(indent=2) + "\n"
        return status.status_line(fine=args.fine) + "\n"

    if command == "grid-to-braid":
        return format_braid(_braid_from(args)) + "\n"

    if command == "jones":
        return str(jones_polynomial(_guard(_braid_from(args), limit))) + "\n"

    if command == "tex":
        kind = RENDER_KINDS[args.what]
        if kind == "braid":
            return render_diagram(_braid_from(args), kind)
        source: BraidWord | GridDiagram = parse_braid(args.braid) if args.braid is not None else parse_grid(args.grid)
        return render_diagram(source, kind)

    if command == "survey":
        entries = []
        for entry in load_corpus(cfg.corpus):
            try:
                _guard(entry_braid(entry), limit)
            except KhovanovError as e:
                logger.warning(f"skipped corpus entry {entry.name}: {e}")
                continue
            entries.append(entry)
        rows = survey(entries, cfg.threads)
        if cfg.output_format == "json":
            return TypeAdapter(list[SurveyRow]).dump_json(rows, indent=2).decode() + "\n"
        return format_table(rows)

    if command == "selfcheck":
        results = run_selfcheck()
        text = "\n".join(r.line() for r in results) + "\n"
        if not all(r.ok for r in results):
            raise SelfcheckFailed(text)
        return text

    if command == "mirror":
        return format_braid(mirror(_braid_from(args))) + "\n"
    if command == "reverse":
        return format_braid(reverse(_braid_from(args))) + "\n"
    if command == "connect-sum":
        return format_braid(parse_braid(args.braid) + parse_braid(args.other)) + "\n"
    raise ValueError(f"unknown command {command!r}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging("DEBUG" if args.verbose else None)
    try:
        cfg = _config(args, getattr(args, "coeff", None) or settings.coefficients)
    except ValidationError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"oddkh: error: {e.errors()[0]['msg']}\n")
        return 2
    limit = args.max_crossings if args.max_crossings is not None else settings.max_crossings

    try:
        _emit(_dispatch(args, cfg, limit), args.output)
    except SelfcheckFailed as e:
        _emit(str(e), args.output)
        return 1
    except (KhovanovError, OSError) as e:
        logger.error(f"{e.__class__.__name__}: {e}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())
