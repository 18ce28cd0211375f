# app/core/grid.py
"""
Grid diagrams
-------------
- GridDiagram: X and O column of every row (row 0 is the top row)
- grid_to_braid in the four braiding directions
- render_diagram: TikZ for braids, grids, knot projections and fronts

Orientation: vertical segments run from X to O, horizontal ones from O to X,
and vertical segments pass over horizontal ones.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from typing import Literal

from app.core.braid import BraidWord
from app.errors import MalformedGrid, UnsupportedRender

Direction = Literal["right", "left", "up", "down"]
RenderKind = Literal["braid", "grid", "knot", "legendrian_front"]


@dataclass(frozen=True)
class GridDiagram:
    x_cols: tuple[int, ...]
    o_cols: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.x_cols)

    def x_row_of_column(self) -> list[int]:
        rows = [0] * self.size
        for r, c in enumerate(self.x_cols):
            rows[c] = r
        return rows

    def o_row_of_column(self) -> list[int]:
        rows = [0] * self.size
        for r, c in enumerate(self.o_cols):
            rows[c] = r
        return rows

    def __str__(self) -> str:
        return ",".join(map(str, self.x_cols)) + ";" + ",".join(map(str, self.o_cols))


def new_grid(x_cols, o_cols) -> GridDiagram:
    xs, os_ = tuple(int(c) for c in x_cols), tuple(int(c) for c in o_cols)
    if len(xs) != len(os_):
        raise MalformedGrid(f"X and O lists differ in length ({len(xs)} vs {len(os_)})")
    n = len(xs)
    if n == 0:
        raise MalformedGrid("empty grid")
    if sorted(xs) != list(range(n)) or sorted(os_) != list(range(n)):
        raise MalformedGrid(f"X and O columns must both be permutations of 0..{n - 1}")
    for r, (x, o) in enumerate(zip(xs, os_)):
        if x == o:
            raise MalformedGrid(f"X and O coincide in row {r}")
    return GridDiagram(xs, os_)


def parse_grid(text: str) -> GridDiagram:
    """Parse "x0,x1,...;o0,o1,..."."""
    try:
        left, right = text.strip().split(";")
        xs = [int(t) for t in left.strip("[] ").split(",")]
        os_ = [int(t) for t in right.strip("[] ").split(",")]
    except ValueError as e:
        raise MalformedGrid(f"cannot parse grid {text!r}: expected 'x0,x1,...;o0,o1,...'") from e
    return new_grid(xs, os_)


# ====================
# GRID -> BRAID
# ====================
def _sweep_right(g: GridDiagram) -> BraidWord:
    """Sweep columns left to right; leftward rows wrap around the right edge."""
    n = g.size
    x_row, o_row = g.x_row_of_column(), g.o_row_of_column()
    present = sorted(r for r in range(n) if g.x_cols[r] < g.o_cols[r])
    strands = len(present)
    letters: list[int] = []
    for c in range(n):
        top, bottom = x_row[c], o_row[c]
        p = present.index(top) + 1
        lo, hi = min(top, bottom), max(top, bottom)
        passed = sum(1 for r in present if lo < r < hi)
        if bottom > top:
            letters.extend(p + t for t in range(passed))
        else:
            letters.extend(-(p - 1 - t) for t in range(passed))
        present.remove(top)
        insort(present, bottom)
    return BraidWord(tuple(letters), strands)


def _rotate_half(g: GridDiagram) -> GridDiagram:
    n = g.size
    xs, os_ = [0] * n, [0] * n
    for r in range(n):
        xs[n - 1 - r] = n - 1 - g.x_cols[r]
        os_[n - 1 - r] = n - 1 - g.o_cols[r]
    return GridDiagram(tuple(xs), tuple(os_))


def _rotate_quarter(g: GridDiagram, clockwise: bool) -> GridDiagram:
    """Quarter turn with X and O exchanged so the link orientation survives."""
    n = g.size
    xs, os_ = [0] * n, [0] * n
    for r in range(n):
        if clockwise:
            # (col c, row r) -> (col n-1-r, row c)
            os_[g.x_cols[r]] = n - 1 - r
            xs[g.o_cols[r]] = n - 1 - r
        else:
            # (col c, row r) -> (col r, row n-1-c)
            os_[n - 1 - g.x_cols[r]] = r
            xs[n - 1 - g.o_cols[r]] = r
    return GridDiagram(tuple(xs), tuple(os_))


def grid_to_braid(g: GridDiagram, direction: Direction = "right") -> BraidWord:
    if direction == "right":
        return _sweep_right(g)
    if direction == "left":
        return _sweep_right(_rotate_half(g))
    if direction in ("up", "down"):
        # the rotated picture has horizontal strands on top: mirror the letters
        swept = _sweep_right(_rotate_quarter(g, clockwise=(direction == "up")))
        return BraidWord(tuple(-l for l in swept.letters), swept.strands)
    raise ValueError(f"unknown braiding direction {direction!r}")


# ====================
# RENDERING
# ====================
def render_diagram(source: BraidWord | GridDiagram, kind: RenderKind) -> str:
    from app.utils import tikz

    if kind == "braid":
        if isinstance(source, GridDiagram):
            source = grid_to_braid(source, "right")
        return tikz.braid_picture(source)
    if not isinstance(source, GridDiagram):
        raise UnsupportedRender(f"a {kind} picture needs a grid diagram, got a braid word")
    if kind == "grid":
        return tikz.grid_picture(source)
    if kind == "knot":
        return tikz.knot_picture(source)
    if kind == "legendrian_front":
        return tikz.front_picture(source)
    raise UnsupportedRender(f"unknown picture kind {kind!r}")
