# app/core/braid.py
"""
Braid words
-----------
- BraidWord: signed Artin generators plus a strand count (immutable)
- classical statistics: n, n+, n-, self-linking number
- word surgeries: mirror, reverse, letter deletion, connect sum
- transverse Markov moves used by the invariance experiments

Letter k > 0 is sigma_k, k < 0 is sigma_k^-1. Letters are numbered
0..n-1 from the top; that numbering is the crossing order everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from app.errors import MalformedWord, RelationNotApplicable, StrandOutOfRange


@dataclass(frozen=True)
class BraidWord:
    letters: tuple[int, ...]
    strands: int

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def n_plus(self) -> int:
        return sum(1 for l in self.letters if l > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for l in self.letters if l < 0)

    def is_positive(self) -> bool:
        return all(l > 0 for l in self.letters)

    def oriented_vertex(self) -> int:
        """Bitmask of the braid-like resolution: 1 exactly at negative letters."""
        mask = 0
        for i, l in enumerate(self.letters):
            if l < 0:
                mask |= 1 << i
        return mask

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return connect_sum(self, other)

    def __str__(self) -> str:
        return format_braid(self)


def new_braid(letters: Iterable[int], strands: int | None = None) -> BraidWord:
    word = tuple(int(l) for l in letters)
    if any(l == 0 for l in word):
        raise MalformedWord(f"zero letter in braid word {list(word)}")
    top = max((abs(l) for l in word), default=0)
    if strands is None:
        strands = top + 1
    if strands < 1:
        raise StrandOutOfRange(f"strand count must be positive, got {strands}")
    if top >= strands:
        raise StrandOutOfRange(f"letter {top} needs more than {strands} strands")
    return BraidWord(word, strands)


def unknot() -> BraidWord:
    return BraidWord((), 1)


def self_linking(b: BraidWord) -> int:
    return -b.strands + b.n_plus - b.n_minus


# ====================
# TEXT FORMAT
# ====================
def parse_braid(text: str) -> BraidWord:
    """Parse "3,3,-2,1" with an optional "@b" strand suffix."""
    body, _, suffix = text.strip().partition("@")
    body = body.strip().strip("[]")
    try:
        letters = [int(tok) for tok in body.replace(" ", "").split(",") if tok != ""]
        strands = int(suffix) if suffix.strip() else None
    except ValueError as e:
        raise MalformedWord(f"cannot parse braid word {text!r}: {e}") from e
    if not letters and strands is None:
        strands = 1
    return new_braid(letters, strands)


def format_braid(b: BraidWord, with_strands: bool = False) -> str:
    text = ",".join(str(l) for l in b.letters)
    if with_strands or b.strands != max((abs(l) for l in b.letters), default=0) + 1:
        text += f"@{b.strands}"
    return text


# ====================
# WORD SURGERIES
# ====================
def mirror(b: BraidWord) -> BraidWord:
    return BraidWord(tuple(-l for l in b.letters), b.strands)


def reverse(b: BraidWord) -> BraidWord:
    return BraidWord(tuple(reversed(b.letters)), b.strands)


def delete_letter(b: BraidWord, index: int) -> BraidWord:
    if not 0 <= index < b.n:
        raise IndexError(f"letter index {index} out of range for a word of length {b.n}")
    return BraidWord(b.letters[:index] + b.letters[index + 1:], b.strands)


def connect_sum(b1: BraidWord, b2: BraidWord) -> BraidWord:
    """Place b2 on strands b1..b1+b2-1, sharing b1's last strand."""
    shift = b1.strands - 1
    shifted = tuple(l + shift if l > 0 else l - shift for l in b2.letters)
    return BraidWord(b1.letters + shifted, b1.strands + b2.strands - 1)


# ====================
# MARKOV MOVES
# ====================
@dataclass(frozen=True)
class Conjugate:
    k: int


@dataclass(frozen=True)
class StabilizePositive:
    pass


@dataclass(frozen=True)
class StabilizeNegative:
    pass


@dataclass(frozen=True)
class BraidRelation:
    site: int


MarkovMove = Union[Conjugate, StabilizePositive, StabilizeNegative, BraidRelation]


def _relation_rewrite(letters: Sequence[int], site: int) -> tuple[int, ...] | None:
    if 0 <= site and site + 1 < len(letters):
        a, b = letters[site], letters[site + 1]
        if abs(abs(a) - abs(b)) >= 2:
            return tuple(letters[:site]) + (b, a) + tuple(letters[site + 2:])
    if 0 <= site and site + 2 < len(letters):
        a, b, c = letters[site:site + 3]
        same_sign = (a > 0) == (b > 0) == (c > 0)
        if a == c and abs(abs(a) - abs(b)) == 1 and same_sign:
            return tuple(letters[:site]) + (b, a, b) + tuple(letters[site + 3:])
    return None


def applicable_relation_sites(b: BraidWord) -> list[int]:
    return [i for i in range(b.n) if _relation_rewrite(b.letters, i) is not None]


def markov_move(b: BraidWord, move: MarkovMove) -> BraidWord:
    if isinstance(move, Conjugate):
        if not 1 <= abs(move.k) <= b.strands - 1:
            raise StrandOutOfRange(f"conjugating letter {move.k} needs 1 <= |k| <= {b.strands - 1}")
        return BraidWord((-move.k,) + b.letters + (move.k,), b.strands)
    if isinstance(move, StabilizePositive):
        return BraidWord(b.letters + (b.strands,), b.strands + 1)
    if isinstance(move, StabilizeNegative):
        return BraidWord(b.letters + (-b.strands,), b.strands + 1)
    if isinstance(move, BraidRelation):
        rewritten = _relation_rewrite(b.letters, move.site)
        if rewritten is None:
            raise RelationNotApplicable(f"no braid relation applies at site {move.site} of {list(b.letters)}")
        return BraidWord(rewritten, b.strands)
    raise TypeError(f"unknown Markov move {move!r}")
