# app/services/invariant.py
"""
Plamenevskaya invariant in homology
-----------------------------------
- invariant_status(): Zero / Torsion(n) / NonTorsion plus divisibility, for
  the odd, reduced odd or even chain at the braid-like resolution
- move and property checks: negative stabilization, positive resolution,
  quasi-positivity, mirror pairs
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from loguru import logger

from app.core.braid import (
    BraidWord,
    StabilizeNegative,
    StabilizePositive,
    delete_letter,
    markov_move,
    mirror,
)
from app.core.exterior import Vector, add_term, wedge_linear
from app.core.planar import Split, apply_action, circle_labels, edge_action, layout_of
from app.engine.complex import Bigrading, Coefficients, Theory, build_complex, psi_chain
from app.engine.cube import build_cube
from app.errors import NotPositiveCrossing
from app.models import InvariantReport
from app.utils.intlinalg import cokernel_class, in_span


class InvariantClass(str, Enum):
    ZERO = "Zero"
    TORSION = "Torsion"
    NON_TORSION = "NonTorsion"


@dataclass(frozen=True)
class InvariantStatus:
    kind: InvariantClass
    theory: Theory
    bigrading: Bigrading
    order: int | None = None
    divisibility: int | None = None

    @property
    def is_zero(self) -> bool:
        return self.kind is InvariantClass.ZERO

    def status_line(self, fine: bool = False) -> str:
        if self.kind is InvariantClass.ZERO:
            return "Inv Zero"
        if fine and self.kind is InvariantClass.TORSION:
            return f"Inv Torsion {self.order}"
        return "Inv NonZero"

    def coarse(self) -> str:
        return "Zero" if self.is_zero else "NonZero"

    def fine(self) -> str:
        if self.kind is InvariantClass.TORSION:
            return f"Torsion({self.order})"
        return self.kind.value

    def to_model(self) -> InvariantReport:
        r, q = self.bigrading
        return InvariantReport(
            theory=self.theory.value,
            status=self.kind.value,
            order=self.order,
            divisibility=self.divisibility,
            r=r,
            q=q,
        )


def invariant_status(
    b: BraidWord,
    theory: Theory | str = Theory.ODD,
    coefficients: Coefficients | None = None,
) -> InvariantStatus:
    theory = Theory.parse(theory) if isinstance(theory, str) else theory
    coefficients = coefficients or Coefficients.integers()
    chain = psi_chain(b, theory)
    r, q = chain.bigrading
    # only the block landing on the invariant's bigrading is needed
    cx = build_complex(build_cube(b), theory, coefficients, bigradings=[(r - 1, q)])
    incoming = cx.differential((r - 1, q))
    y = chain.coordinates(cx)

    if coefficients.integral:
        cls = cokernel_class(incoming, y)
        order = cls.order()
        if order == 1:
            status = InvariantStatus(InvariantClass.ZERO, theory, (r, q))
        elif order is None:
            status = InvariantStatus(InvariantClass.NON_TORSION, theory, (r, q), divisibility=cls.divisibility())
        else:
            status = InvariantStatus(InvariantClass.TORSION, theory, (r, q), order, cls.divisibility())
    elif in_span(incoming, y, coefficients.modulus):
        status = InvariantStatus(InvariantClass.ZERO, theory, (r, q))
    else:
        status = InvariantStatus(InvariantClass.NON_TORSION, theory, (r, q))

    logger.info(f"{theory.value} invariant of {b} over {coefficients}: {status.fine()}")
    return status


# ====================
# MOVE CHECKS
# ====================
def check_negative_stabilization(b: BraidWord) -> bool:
    return invariant_status(markov_move(b, StabilizeNegative()), Theory.ODD).is_zero


def _labels_by_column(b: BraidWord, vertex: int) -> dict[int, int]:
    """Circle label through each strand column; columns stay whole away from cap-cup sites."""
    labels = circle_labels(b, vertex)
    return {col: labels[e] for e, (col, _, _) in layout_of(b).edges.items()}


def _relabel(vec: Vector, images: dict[int, dict[int, int]]) -> Vector:
    out: Vector = {}
    for mono, coef in vec.items():
        for m, c in wedge_linear({}, images, mono).items():
            add_term(out, m, coef * c)
    return out


def check_positive_resolution(b: BraidWord, index: int) -> bool:
    """Chain-level check that removing a positive crossing carries the invariant to +-itself.

    Deleting the letter leaves the braid-like resolution as it was. A
    1-handle then splits the last strand circle from a small kink circle;
    the negatively kinked word carries that handle as the final edge of its
    cube, so the split is the cube's own edge map. Its image must be +-the
    invariant of the positively kinked word, the transverse R1 twist of the
    word without the letter.
    """
    if not 0 <= index < b.n:
        raise IndexError(f"letter index {index} out of range for a word of length {b.n}")
    letter = b.letters[index]
    if letter <= 0:
        raise NotPositiveCrossing(f"letter {index} of {b} is {letter}, not a positive crossing")

    smaller = delete_letter(b, index)
    handle = markov_move(smaller, StabilizeNegative())
    twisted = markov_move(smaller, StabilizePositive())
    site = handle.n - 1
    source = handle.oriented_vertex() & ~(1 << site)
    action = edge_action(handle, source, site)
    if not isinstance(action, Split):
        logger.debug(f"positive resolution of {b} at {index}: handle edge is {action}, not a split")
        return False

    at_source = _labels_by_column(handle, source)
    into_source = {label: {at_source[col]: 1} for col, label in _labels_by_column(b, b.oriented_vertex()).items()}
    psi = {mono: coef for (_, mono), coef in psi_chain(b, Theory.ODD).vector.items()}
    split = apply_action(action, _relabel(psi, into_source))

    at_target = _labels_by_column(handle, handle.oriented_vertex())
    at_twisted = _labels_by_column(twisted, twisted.oriented_vertex())
    image = _relabel(split, {at_target[col]: {label: 1} for col, label in at_twisted.items()})

    (_, expected_top), = psi_chain(twisted, Theory.ODD).vector
    ok = set(image) == {expected_top} and abs(image[expected_top]) == 1
    logger.debug(f"positive resolution of {b} at {index}: {'ok' if ok else 'mismatch'}")
    return ok


def check_quasipositive(factors: Iterable[BraidWord]) -> bool:
    """True when the product of the given quasi-positive factors has nonzero invariant.

    Each factor is a word w sigma_k w^-1 or a positive word.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    strands = max(f.strands for f in factors)
    letters: list[int] = []
    for f in factors:
        letters.extend(f.letters)
    product = BraidWord(tuple(letters), strands)
    return not invariant_status(product, Theory.ODD).is_zero


@dataclass(frozen=True)
class MirrorObservation:
    braid: InvariantStatus
    mirrored: InvariantStatus

    @property
    def one_is_zero(self) -> bool:
        return self.braid.is_zero or self.mirrored.is_zero


def mirror_observation(b: BraidWord) -> MirrorObservation:
    return MirrorObservation(invariant_status(b, Theory.ODD), invariant_status(mirror(b), Theory.ODD))
