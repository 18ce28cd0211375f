# app/services/survey.py
"""
Corpus survey
-------------
Reads a JSON-lines corpus of braids and grids and reports, per entry, the
negative-crossing ratio, self-linking number and the three invariant
statuses, with the signature-based flags when a fixture signature is given.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable

from loguru import logger
from pydantic import ValidationError

from app.config import settings
from app.core.braid import BraidWord, parse_braid, self_linking
from app.core.grid import grid_to_braid, parse_grid
from app.engine.complex import Theory
from app.errors import KhovanovError
from app.models import CorpusEntry, SurveyRow
from app.services.invariant import invariant_status


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    entries: list[CorpusEntry] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                entries.append(CorpusEntry.model_validate(json.loads(line)))
            except (json.JSONDecodeError, ValidationError) as e:
                logger.warning(f"{path}:{lineno}: skipped malformed corpus entry ({e.__class__.__name__})")
    return entries


def entry_braid(entry: CorpusEntry) -> BraidWord:
    if entry.braid is not None:
        return parse_braid(entry.braid)
    return grid_to_braid(parse_grid(entry.grid))


def survey_row(entry: CorpusEntry) -> SurveyRow:
    b = entry_braid(entry)
    statuses = {t: invariant_status(b, t) for t in (Theory.ODD, Theory.EVEN, Theory.REDUCED)}
    sl = self_linking(b)
    odd = statuses[Theory.ODD]

    sl_flag = None if entry.sigma is None else sl == entry.sigma - 1
    alternating_check = None
    if entry.sigma is not None and entry.alternating:
        # alternating knots with sl + 1 != sigma carry a vanishing invariant
        alternating_check = odd.is_zero or sl + 1 == entry.sigma

    return SurveyRow(
        name=entry.name,
        strands=b.strands,
        crossings=b.n,
        negative_ratio=b.n_minus / b.n if b.n else 0.0,
        sl=sl,
        sigma=entry.sigma,
        odd=odd.coarse(),
        even=statuses[Theory.EVEN].coarse(),
        reduced=statuses[Theory.REDUCED].coarse(),
        odd_fine=odd.fine(),
        even_fine=statuses[Theory.EVEN].fine(),
        reduced_fine=statuses[Theory.REDUCED].fine(),
        sl_is_sigma_minus_one=sl_flag,
        alternating_check=alternating_check,
    )


def _safe_row(entry: CorpusEntry) -> SurveyRow | None:
    try:
        return survey_row(entry)
    except KhovanovError as e:
        logger.warning(f"skipped corpus entry {entry.name}: {e}")
        return None


def survey(entries: Iterable[CorpusEntry], threads: int | None = None) -> list[SurveyRow]:
    """Rows in corpus order; entries that fail to parse are skipped."""
    entries = list(entries)
    workers = threads or settings.threads
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_safe_row, entries))
    else:
        rows = [_safe_row(e) for e in entries]
    done = [r for r in rows if r is not None]
    logger.info(f"survey: {len(done)} of {len(entries)} entries")
    return done


# ====================
# TABLE
# ====================
def _flag(value: bool | None) -> str:
    return "-" if value is None else ("yes" if value else "NO")


def format_table(rows: Iterable[SurveyRow]) -> str:
    header = f"{'name':<12} {'b':>2} {'n':>3} {'n-/n':>7} {'sl':>4} {'sigma':>5}  {'odd':<14} {'even':<14} {'reduced':<14} sl=sigma-1  alt"
    lines = [header]
    for r in rows:
        sigma = "-" if r.sigma is None else str(r.sigma)
        lines.append(
            f"{r.name:<12} {r.strands:>2} {r.crossings:>3} {r.negative_ratio:>7.4f} {r.sl:>4} {sigma:>5}  "
            f"{r.odd_fine:<14} {r.even_fine:<14} {r.reduced_fine:<14} {_flag(r.sl_is_sigma_minus_one):<10}  {_flag(r.alternating_check)}"
        )
    return "\n".join(lines) + "\n"
