# app/utils/tikz.py
"""
TikZ emitters for braids and grid diagrams.

Every picture is a standalone tikzpicture (no macro package needed). Each
structural element is preceded by a one-line TeX comment so pictures can be
inspected and diffed as text.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from app.core.braid import BraidWord
    from app.core.grid import GridDiagram

_GAP = "preaction={draw, white, line width=5pt}"


def _wrap(body: list[str], header: str) -> str:
    lines = [f"% {header}", r"\begin{tikzpicture}[x=0.6cm, y=-0.6cm, thick]"]
    lines.extend("  " + line for line in body)
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


# ====================
# BRAID
# ====================
def braid_picture(b: "BraidWord") -> str:
    """Strand c sits at x = c; crossing j occupies rows j..j+1 (y grows downward)."""
    body: list[str] = []
    for j, letter in enumerate(b.letters):
        k = abs(letter)
        body.append(f"% crossing {j}: sigma_{k}^{{{'+1' if letter > 0 else '-1'}}}")
        for c in range(1, b.strands + 1):
            if c not in (k, k + 1):
                body.append(rf"\draw ({c},{j}) -- ({c},{j + 1});")
        # positive letters: the strand entering on the left passes under
        under = ((k, j), (k + 1, j + 1)) if letter > 0 else ((k + 1, j), (k, j + 1))
        over = ((k + 1, j), (k, j + 1)) if letter > 0 else ((k, j), (k + 1, j + 1))
        body.append(rf"\draw {under[0]} .. controls +(0,0.5) and +(0,-0.5) .. {under[1]};")
        body.append(
            rf"\draw[{_GAP}] {over[0]} .. controls +(0,0.5) and +(0,-0.5) .. {over[1]};"
        )
    for c in range(1, b.strands + 1):
        body.append(f"% strand column {c}")
    return _wrap(body, f"braid: {b.n} crossings, {b.strands} strands")


# ====================
# GRID
# ====================
def _markers(g: "GridDiagram") -> list[str]:
    body = []
    for r in range(g.size):
        x, o = g.x_cols[r], g.o_cols[r]
        body.append(f"% X row {r}")
        body.append(rf"\draw ({x + 0.25},{r + 0.25}) -- ({x + 0.75},{r + 0.75}) ({x + 0.25},{r + 0.75}) -- ({x + 0.75},{r + 0.25});")
        body.append(f"% O row {r}")
        body.append(rf"\draw ({o + 0.5},{r + 0.5}) circle (0.25);")
    return body


def grid_picture(g: "GridDiagram") -> str:
    n = g.size
    body = [rf"\draw[thin, gray] (0,0) grid ({n},{n});"]
    body.extend(_markers(g))
    return _wrap(body, f"grid: {n}x{n}")


def knot_picture(g: "GridDiagram") -> str:
    """Horizontal segments O -> X first, then vertical X -> O drawn over them."""
    n = g.size
    x_row, o_row = g.x_row_of_column(), g.o_row_of_column()
    body = _markers(g)
    for r in range(n):
        body.append(f"% horizontal {r}")
        body.append(rf"\draw[->] ({g.o_cols[r] + 0.5},{r + 0.5}) -- ({g.x_cols[r] + 0.5},{r + 0.5});")
    for c in range(n):
        body.append(f"% vertical {c}")
        body.append(rf"\draw[->, {_GAP}] ({c + 0.5},{x_row[c] + 0.5}) -- ({c + 0.5},{o_row[c] + 0.5});")
    return _wrap(body, f"knot diagram from {n}x{n} grid")


# ====================
# LEGENDRIAN FRONT
# ====================
def _front_point(c: int, r: int) -> tuple[int, int]:
    # 45-degree turn of the grid; second coordinate is the front height
    return c - r, c + r


def front_picture(g: "GridDiagram") -> str:
    """One smooth curve per grid segment, from its left end to its right end."""
    n = g.size
    x_row, o_row = g.x_row_of_column(), g.o_row_of_column()
    segments = [((g.o_cols[r], r), (g.x_cols[r], r)) for r in range(n)]
    segments += [((c, x_row[c]), (c, o_row[c])) for c in range(n)]

    cusps = 0
    for r in range(n):
        for c, other_c in ((g.x_cols[r], g.o_cols[r]), (g.o_cols[r], g.x_cols[r])):
            other_r = o_row[c] if x_row[c] == r else x_row[c]
            if (other_c - c > 0) == (r - other_r > 0):
                cusps += 1

    body = [f"% cusps: {cusps}"]
    for i, (a, b) in enumerate(segments):
        p, q = sorted((_front_point(*a), _front_point(*b)))
        body.append(f"% arc {i}")
        body.append(rf"\draw ({p[0] / 2},{p[1] / 2}) to[out=0,in=180] ({q[0] / 2},{q[1] / 2});")
    return _wrap(body, f"Legendrian front from {n}x{n} grid")
