# app/services/selfcheck.py
"""
Structural self-checks
----------------------
Runs the cube and complex assertions on a small built-in sample of braids:
- every square anticommutes after signing
- every 3-dimensional subcube has an even number of A/X faces
- d o d = 0 in every bigrading of every theory
- the invariant chains are cycles in their expected bigradings
- odd ranks split into shifted reduced ranks over Q
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from loguru import logger

from app.core.braid import BraidWord, new_braid
from app.engine.complex import Coefficients, GradedComplex, Theory, apply_differential, complex_of, psi_chain
from app.engine.cube import build_cube, count_af_faces, verify_skew
from app.engine.homology import homology

SAMPLE_WORDS: tuple[tuple[int, ...], ...] = (
    (),
    (1,),
    (1, 1, 1),
    (-1, -1, -1),
    (1, -2, 1, -2),
    (-1, -2, 1, 2, 2, -1),
    (1, 2, 1, 2),
    (1, 1, -2, 1, -2),
)


@dataclass(frozen=True)
class CheckResult:
    check: str
    braid: BraidWord
    ok: bool

    def line(self) -> str:
        return f"{'ok  ' if self.ok else 'FAIL'} {self.check:<12} {self.braid}"


def squares_of_d_vanish(cx: GradedComplex) -> bool:
    for r, q in cx.bigradings():
        if cx.differential((r + 1, q)).matmul(cx.differential((r, q))).nnz():
            return False
    return True


def invariant_is_cycle(b: BraidWord, theory: Theory) -> bool:
    cx = complex_of(b, theory)
    chain = psi_chain(b, theory)
    return not any(apply_differential(cx, chain.bigrading, chain.coordinates(cx)))


def af_faces_even(b: BraidWord) -> bool:
    cube = build_cube(b)
    for root in range(1 << b.n):
        zeros = [x for x in range(b.n) if not root >> x & 1]
        for c1, c2, c3 in combinations(zeros, 3):
            if count_af_faces(cube, root, c1, c2, c3) % 2:
                return False
    return True


def reduced_splitting_holds(b: BraidWord, coefficients: Coefficients) -> bool:
    """rank Kh'_{m,s} = rank Khr'_{m,s-1} + rank Khr'_{m,s+1} over a field."""
    odd = homology(complex_of(b, Theory.ODD, coefficients))
    reduced = homology(complex_of(b, Theory.REDUCED, coefficients))

    def rank(groups, bg) -> int:
        g = groups.get(bg)
        return g.free if g else 0

    keys = set(odd) | {(r, q + 1) for r, q in reduced} | {(r, q - 1) for r, q in reduced}
    return all(rank(odd, (r, q)) == rank(reduced, (r, q - 1)) + rank(reduced, (r, q + 1)) for r, q in keys)


def run_selfcheck(words: Iterable[Iterable[int]] = SAMPLE_WORDS) -> list[CheckResult]:
    results: list[CheckResult] = []
    for letters in words:
        b = new_braid(letters)
        results.append(CheckResult("skew", b, verify_skew(build_cube(b))))
        results.append(CheckResult("af-faces", b, af_faces_even(b)))
        results.append(CheckResult("d-squared", b, all(squares_of_d_vanish(complex_of(b, t)) for t in Theory)))
        # psi_chain raises when a chain sits outside its expected bigrading
        results.append(CheckResult("cycles", b, all(invariant_is_cycle(b, t) for t in (Theory.ODD, Theory.REDUCED))))
        results.append(CheckResult("splitting", b, reduced_splitting_holds(b, Coefficients.rationals())))
    failed = [r for r in results if not r.ok]
    if failed:
        logger.warning(f"selfcheck: {len(failed)} of {len(results)} checks failed")
    else:
        logger.info(f"selfcheck: all {len(results)} checks passed")
    return results
