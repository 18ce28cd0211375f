# app/engine/homology.py
"""
Bigraded homology and its text report
-------------------------------------
- homology(): per (r, Q) free rank and torsion, over Z through elementary
  divisors, over a field through ranks
- format_report(): listing in the style
      KH'_( 5)(L) = Z^1[17] + (Z^1 + Z/3)[15] + Z/3[13]
- to_report_model(): the same data as a pydantic model for JSON output
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from loguru import logger

from app.config import settings
from app.engine.complex import Bigrading, Coefficients, GradedComplex, Theory
from app.models import GroupEntry, HomologyReport
from app.utils.intlinalg import elementary_divisors, rank_over

THEORY_LABELS = {Theory.ODD: "KH'", Theory.REDUCED: "KHr'", Theory.EVEN: "KH"}


@dataclass(frozen=True)
class HomologyGroup:
    free: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion


BigradedGroup = dict[Bigrading, HomologyGroup]


def _matrix_data(cx: GradedComplex, bigrading: Bigrading) -> tuple[int, list[int]]:
    """(rank, nontrivial elementary divisors) of d out of `bigrading`."""
    matrix = cx.differential(bigrading)
    if not matrix.nnz():
        return 0, []
    coeffs = cx.coefficients
    if coeffs.integral:
        divisors = elementary_divisors(matrix)
        return len(divisors), [d for d in divisors if d > 1]
    return rank_over(matrix, coeffs.modulus), []


def homology(cx: GradedComplex, threads: int | None = None) -> BigradedGroup:
    workers = threads or settings.threads
    sources = sorted(set(cx.bigradings()) | {(r - 1, q) for r, q in cx.bigradings()})
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            data = dict(zip(sources, pool.map(lambda bg: _matrix_data(cx, bg), sources)))
    else:
        data = {bg: _matrix_data(cx, bg) for bg in sources}

    groups: BigradedGroup = {}
    for r, q in cx.bigradings():
        rank_out, _ = data[(r, q)]
        rank_in, torsion = data[(r - 1, q)]
        group = HomologyGroup(cx.dim((r, q)) - rank_out - rank_in, tuple(torsion))
        if not group.is_zero():
            groups[(r, q)] = group
    logger.info(f"{cx.theory.value} homology over {cx.coefficients}: {len(groups)} nonzero bigradings")
    return groups


# ====================
# REPORTS
# ====================
def _group_text(group: HomologyGroup, symbol: str) -> str:
    parts = [f"{symbol}^{group.free}"] if group.free else []
    parts.extend(f"Z/{d}" for d in group.torsion)
    return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


def is_wide(groups: BigradedGroup, theory: Theory) -> bool:
    """Support on more than one diagonal (two for the unreduced theories)."""
    diagonals = {q - 2 * r for r, q in groups}
    return len(diagonals) > (1 if theory is Theory.REDUCED else 2)


def format_report(
    groups: BigradedGroup,
    theory: Theory,
    sl: int | None = None,
    sigma: int | None = None,
    coefficients: Coefficients | None = None,
) -> str:
    symbol = (coefficients or Coefficients.integers()).group_symbol()
    label = THEORY_LABELS[theory]
    lines = []
    if groups:
        degrees = range(min(r for r, _ in groups), max(r for r, _ in groups) + 1)
    else:
        degrees = range(0, 1)
    for r in degrees:
        row = sorted(((q, g) for (rr, q), g in groups.items() if rr == r), reverse=True)
        body = " + ".join(f"{_group_text(g, symbol)}[{q:2d}]" for q, g in row) or "0"
        lines.append(f"{label}_({r:2d})(L) = {body}")
    summary = []
    if is_wide(groups, theory):
        summary.append("Wide knot")
    if sigma is not None:
        summary.append(f"sigma = {sigma}")
    if sl is not None:
        summary.append(f"sl = {sl}")
    if summary:
        lines.append(", ".join(summary) + ".")
    return "\n".join(lines) + "\n"


def to_report_model(groups: BigradedGroup, theory: Theory, coefficients: Coefficients) -> HomologyReport:
    return HomologyReport(
        theory=theory.value,
        coefficients=str(coefficients),
        groups=[GroupEntry(r=r, q=q, free=g.free, torsion=list(g.torsion)) for (r, q), g in sorted(groups.items())],
    )
