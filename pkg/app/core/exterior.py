# app/core/exterior.py
"""
Exterior-algebra bookkeeping on circle labels.

A monomial is a sorted tuple of generator keys (circle labels, or indices of
consecutive differences in the reduced theory). A vector is a dict
monomial -> integer coefficient with no zero entries.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Mapping

Monomial = tuple[int, ...]
Vector = dict[Monomial, int]


def add_term(vec: Vector, mono: Monomial, coef: int) -> None:
    if coef == 0:
        return
    value = vec.get(mono, 0) + coef
    if value:
        vec[mono] = value
    else:
        vec.pop(mono, None)


def wedge_left(t: int, mono: Monomial) -> tuple[int, Monomial] | None:
    """v_t ^ mono, returned as (sign, sorted monomial); None when t repeats."""
    pos = bisect_left(mono, t)
    if pos < len(mono) and mono[pos] == t:
        return None
    return (-1 if pos % 2 else 1), mono[:pos] + (t,) + mono[pos:]


def wedge_right(mono: Monomial, t: int) -> tuple[int, Monomial] | None:
    """mono ^ v_t, returned as (sign, sorted monomial); None when t repeats."""
    pos = bisect_left(mono, t)
    if pos < len(mono) and mono[pos] == t:
        return None
    return (-1 if (len(mono) - pos) % 2 else 1), mono[:pos] + (t,) + mono[pos:]


def substitute(mono: Monomial, dropped: int, kept: int) -> tuple[int, Monomial] | None:
    """Rename generator `dropped` to `kept` and re-sort; None if both occur."""
    if dropped not in mono:
        return 1, mono
    if kept in mono:
        return None
    lo, hi = min(kept, dropped), max(kept, dropped)
    between = sum(1 for g in mono if lo < g < hi)
    renamed = tuple(sorted(kept if g == dropped else g for g in mono))
    return (-1 if between % 2 else 1), renamed


def wedge_linear(left: Mapping[int, int], images: Mapping[int, Mapping[int, int]], mono: Monomial) -> Vector:
    """(sum left) ^ f(g_1) ^ ... ^ f(g_k) for mono = (g_1, ..., g_k).

    `left` is a linear form on generators (empty mapping means no left
    factor); `images[g]` is the image of generator g as a linear form.
    """
    terms: Vector = {(): 1} if not left else {(t,): c for t, c in left.items() if c}
    for g in mono:
        nxt: Vector = {}
        for partial, coef in terms.items():
            for t, c in images[g].items():
                placed = wedge_right(partial, t)
                if placed is not None:
                    add_term(nxt, placed[1], placed[0] * coef * c)
        terms = nxt
        if not terms:
            break
    return terms


def all_monomials(generators: Iterable[int]) -> list[Monomial]:
    gens = sorted(generators)
    out: list[Monomial] = []
    for mask in range(1 << len(gens)):
        out.append(tuple(g for i, g in enumerate(gens) if mask >> i & 1))
    return out
