# app/core/planar.py
"""
Planar geometry of cube vertices
--------------------------------
Layout (lattice coordinates, y grows downward, all values scaled by 4):
- strand column c (1..b) sits at x = 4c
- crossing j occupies the cell between columns i = |letter| and i+1,
  rows y = 4j .. 4j+4
- the closure of column c runs around the right at offset h = 4(b-c+1)

Diagram edges: the strand leaving crossing j downward on its left column has
id 2j, on its right column 2j+1; a column without crossings is one edge with
id 2n + (c-1). A circle is labelled by the smallest edge id it traverses, so
circles that a surgery does not touch keep their label across cube edges.

Smoothings: for a positive letter state 0 is the identity smoothing and
state 1 the cap-cup; a negative letter is the other way round. Surgery arcs
sit at 0-state sites: identity sites point right, cap-cup sites point down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Union

from app.config import settings
from app.core.braid import BraidWord
from app.core.exterior import Vector, add_term, all_monomials, substitute, wedge_left
from app.errors import NoArcAtSite, NotASquareRoot

Point = tuple[int, int]


def vertex_bits(vertex: int, n: int) -> str:
    """Bitstring of a vertex, crossing 0 first."""
    return "".join("1" if vertex >> j & 1 else "0" for j in range(n))


# ====================
# TYPES
# ====================
@dataclass(frozen=True)
class Merge:
    first: int
    second: int

    @property
    def kept(self) -> int:
        return min(self.first, self.second)

    @property
    def dropped(self) -> int:
        return max(self.first, self.second)


@dataclass(frozen=True)
class Split:
    circle: int
    a0: int
    a1: int

    @property
    def new_label(self) -> int:
        return self.a1 if self.a0 == self.circle else self.a0


EdgeAction = Union[Merge, Split]


class SquareType(Enum):
    A = "A"
    C = "C"
    X = "X"
    Y = "Y"

    @property
    def sign(self) -> int:
        return -1 if self in (SquareType.A, SquareType.X) else 1


@dataclass(frozen=True)
class Circle:
    label: int
    points: tuple[Point, ...]

    @property
    def signed_area(self) -> int:
        """Twice the area, counterclockwise positive in the usual math picture."""
        pts = self.points
        total = 0
        for k in range(len(pts)):
            (x1, y1), (x2, y2) = pts[k], pts[(k + 1) % len(pts)]
            total += x1 * y2 - x2 * y1
        # layout y points down, so flip
        return -total

    def ccw_points(self) -> tuple[Point, ...]:
        return self.points if self.signed_area > 0 else tuple(reversed(self.points))

    def contains(self, p: Point) -> bool:
        """Even-odd rule with a ray to the right; p never lies on a vertex row."""
        x, y = p
        inside = False
        pts = self.points
        for k in range(len(pts)):
            (x1, y1), (x2, y2) = pts[k], pts[(k + 1) % len(pts)]
            if x1 == x2 and x1 > x and min(y1, y2) < y < max(y1, y2):
                inside = not inside
        return inside


@dataclass(frozen=True)
class SurgeryArc:
    crossing: int
    tail: Point
    head: Point
    touched: tuple[int, ...]

    @property
    def midpoint(self) -> Point:
        return (self.tail[0] + self.head[0]) // 2, (self.tail[1] + self.head[1]) // 2


@dataclass(frozen=True)
class PlanarResolution:
    braid: BraidWord
    vertex: int
    circles: tuple[Circle, ...]
    arc_sites: dict[int, SurgeryArc] = field(hash=False)

    def labels(self) -> tuple[int, ...]:
        return tuple(c.label for c in self.circles)

    def circle(self, label: int) -> Circle:
        for c in self.circles:
            if c.label == label:
                return c
        raise KeyError(label)


# ====================
# CLOSURE LAYOUT
# ====================
@dataclass(frozen=True)
class ClosureLayout:
    """Vertex-independent combinatorics of the closed braid diagram."""

    braid: BraidWord
    # per crossing: (left column, in-edge on the left, in-edge on the right)
    crossings: tuple[tuple[int, int, int], ...]
    # per edge id: (column, source crossing or -1, target crossing or -1)
    edges: dict[int, tuple[int, int, int]] = field(hash=False)

    def identity_at(self, j: int, vertex: int) -> bool:
        positive = self.braid.letters[j] > 0
        state = vertex >> j & 1
        return positive == (state == 0)


@lru_cache(maxsize=256)
def layout_of(b: BraidWord) -> ClosureLayout:
    n = b.n
    events: dict[int, list[int]] = {c: [] for c in range(1, b.strands + 1)}
    for j, letter in enumerate(b.letters):
        i = abs(letter)
        events[i].append(j)
        events[i + 1].append(j)

    def out_edge(j: int, column: int) -> int:
        return 2 * j if column == abs(b.letters[j]) else 2 * j + 1

    in_edges: dict[tuple[int, int], int] = {}
    edges: dict[int, tuple[int, int, int]] = {}
    for c, js in events.items():
        if not js:
            edges[2 * n + c - 1] = (c, -1, -1)
            continue
        for k, j in enumerate(js):
            prev = js[k - 1]
            nxt = js[(k + 1) % len(js)]
            in_edges[(j, c)] = out_edge(prev, c)
            edges[out_edge(j, c)] = (c, j, nxt)
    crossings = tuple(
        (abs(letter), in_edges[(j, abs(letter))], in_edges[(j, abs(letter) + 1)])
        for j, letter in enumerate(b.letters)
    )
    return ClosureLayout(b, crossings, edges)


def _find(parent: list[int], a: int) -> int:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@lru_cache(maxsize=65536)
def circle_labels(b: BraidWord, vertex: int) -> tuple[int, ...]:
    """Label of the circle through every edge id (-1 for ids not in use)."""
    layout = layout_of(b)
    size = 2 * b.n + b.strands
    parent = list(range(size))

    def union(a: int, c: int) -> None:
        ra, rc = _find(parent, a), _find(parent, c)
        if ra != rc:
            parent[max(ra, rc)] = min(ra, rc)

    for j, (_, in_l, in_r) in enumerate(layout.crossings):
        if layout.identity_at(j, vertex):
            union(in_l, 2 * j)
            union(in_r, 2 * j + 1)
        else:
            union(in_l, in_r)
            union(2 * j, 2 * j + 1)
    # union always keeps the smaller root, so roots are minimal ids
    return tuple(_find(parent, e) if e in layout.edges else -1 for e in range(size))


@lru_cache(maxsize=65536)
def vertex_circles(b: BraidWord, vertex: int) -> tuple[int, ...]:
    return tuple(sorted({l for l in circle_labels(b, vertex) if l >= 0}))


# ====================
# ARCS AND EDGE ACTIONS
# ====================
def _arc_endpoints(b: BraidWord, vertex: int, j: int) -> tuple[Point, Point, tuple[int, int]]:
    layout = layout_of(b)
    i, in_l, _ = layout.crossings[j]
    labels = circle_labels(b, vertex)
    if layout.identity_at(j, vertex):
        return (4 * i, 4 * j + 2), (4 * i + 4, 4 * j + 2), (labels[2 * j], labels[2 * j + 1])
    return (4 * i + 2, 4 * j + 1), (4 * i + 2, 4 * j + 3), (labels[in_l], labels[2 * j])


def arc_touched(b: BraidWord, vertex: int, j: int) -> tuple[int, ...]:
    if not 0 <= j < b.n or vertex >> j & 1:
        raise NoArcAtSite(f"no surgery arc at crossing {j} of vertex {vertex_bits(vertex, b.n)}")
    _, _, (p, q) = _arc_endpoints(b, vertex, j)
    return (p,) if p == q else tuple(sorted((p, q)))


@lru_cache(maxsize=262144)
def edge_action(b: BraidWord, vertex: int, j: int) -> EdgeAction:
    touched = arc_touched(b, vertex, j)
    if len(touched) == 2:
        return Merge(*touched)
    layout = layout_of(b)
    target = circle_labels(b, vertex | 1 << j)
    _, in_l, _ = layout.crossings[j]
    if b.letters[j] > 0:
        # identity -> cap-cup: arrow right turns to up, tail side is the lower piece
        return Split(touched[0], target[2 * j], target[in_l])
    # cap-cup -> identity: arrow down turns to right, tail side is the left strand
    return Split(touched[0], target[2 * j], target[2 * j + 1])


def arc_action(res: PlanarResolution, crossing: int) -> EdgeAction:
    return edge_action(res.braid, res.vertex, crossing)


def apply_action(action: EdgeAction, vec: Vector) -> Vector:
    """Unsigned odd edge map on a vector of label monomials."""
    out: Vector = {}
    for mono, coef in vec.items():
        if isinstance(action, Merge):
            moved = substitute(mono, action.dropped, action.kept)
            if moved is not None:
                add_term(out, moved[1], moved[0] * coef)
            continue
        for t, c in ((action.a0, 1), (action.a1, -1)):
            placed = wedge_left(t, mono)
            if placed is not None:
                add_term(out, placed[1], placed[0] * c * coef)
    return out


# ====================
# GEOMETRY
# ====================
def _edge_points(b: BraidWord, e: int) -> list[Point]:
    layout = layout_of(b)
    c, src, dst = layout.edges[e]
    x, n, h = 4 * c, b.n, 4 * (b.strands - c + 1)
    right = 4 * b.strands + h
    if src < 0:
        return [(x, 0), (x, 4 * n), (x, 4 * n + h), (right, 4 * n + h), (right, -h), (x, -h)]
    start, end = (x, 4 * src + 4), (x, 4 * dst)
    if dst > src:
        return [start, end]
    return [start, (x, 4 * n + h), (right, 4 * n + h), (right, -h), (x, -h), end]


def _trace(b: BraidWord, vertex: int, start: int) -> list[Point]:
    layout = layout_of(b)
    if layout.edges[start][1] < 0:
        return _edge_points(b, start)
    pts: list[Point] = []

    def extend(seq: list[Point]) -> None:
        for p in seq:
            if not pts or pts[-1] != p:
                pts.append(p)

    e, forward = start, True
    while True:
        seq = _edge_points(b, e)
        extend(seq if forward else seq[::-1])
        c, src, dst = layout.edges[e]
        j = dst if forward else src
        i, in_l, in_r = layout.crossings[j]
        left = c == i
        x_l, x_r, y = 4 * i, 4 * i + 4, 4 * j
        if forward:
            if layout.identity_at(j, vertex):
                e, forward = (2 * j if left else 2 * j + 1), True
            else:
                cap = [(x_l, y), (x_l, y + 1), (x_r, y + 1), (x_r, y)]
                extend(cap if left else cap[::-1])
                e, forward = (in_r if left else in_l), False
        else:
            if layout.identity_at(j, vertex):
                e, forward = (in_l if left else in_r), False
            else:
                cup = [(x_l, y + 4), (x_l, y + 3), (x_r, y + 3), (x_r, y + 4)]
                extend(cup if left else cup[::-1])
                e, forward = (2 * j + 1 if left else 2 * j), True
        if e == start and forward:
            break
    if pts[0] == pts[-1]:
        pts.pop()
    return pts


def resolve(b: BraidWord, vertex: int) -> PlanarResolution:
    labels = vertex_circles(b, vertex)
    circles = tuple(Circle(l, tuple(_trace(b, vertex, l))) for l in labels)
    arcs = {}
    for j in range(b.n):
        if vertex >> j & 1 == 0:
            tail, head, _ = _arc_endpoints(b, vertex, j)
            arcs[j] = SurgeryArc(j, tail, head, arc_touched(b, vertex, j))
    return PlanarResolution(b, vertex, circles, arcs)


# ====================
# SQUARES
# ====================
def _perimeter_position(points: tuple[Point, ...], p: Point | None) -> int:
    """Distance walked from points[0] to p; the full perimeter when p is None."""
    walked = 0
    for k in range(len(points)):
        (x1, y1), (x2, y2) = points[k], points[(k + 1) % len(points)]
        if p is not None and min(x1, x2) <= p[0] <= max(x1, x2) and min(y1, y2) <= p[1] <= max(y1, y2):
            return walked + abs(p[0] - x1) + abs(p[1] - y1)
        walked += abs(x2 - x1) + abs(y2 - y1)
    if p is None:
        return walked
    raise ValueError(f"point {p} is not on the circle")


def _xy_type(b: BraidWord, root: int, c1: int, c2: int) -> SquareType:
    res = resolve(b, root)
    arc1, arc2 = res.arc_sites[c1], res.arc_sites[c2]
    circle = res.circle(arc1.touched[0])
    inner, outer = (arc1, arc2) if circle.contains(arc1.midpoint) else (arc2, arc1)
    pts = circle.ccw_points()
    perimeter = _perimeter_position(pts, None)
    origin = _perimeter_position(pts, inner.tail)

    def ahead(p: Point) -> int:
        return (_perimeter_position(pts, p) - origin) % perimeter

    meets_tail_first = ahead(outer.tail) < ahead(outer.head)
    if settings.xy_rule == "cw":
        meets_tail_first = not meets_tail_first
    return SquareType.X if meets_tail_first else SquareType.Y


def square_paths(b: BraidWord, root: int, c1: int, c2: int) -> tuple[dict, dict]:
    """Both unsigned two-edge compositions on the touched circles, keyed by (input, output)."""
    touched = set(arc_touched(b, root, c1)) | set(arc_touched(b, root, c2))
    paths: tuple[dict, dict] = ({}, {})
    for mono in all_monomials(touched):
        for path, (x, y) in zip(paths, ((c1, c2), (c2, c1))):
            image = apply_action(edge_action(b, root | 1 << x, y), apply_action(edge_action(b, root, x), {mono: 1}))
            for m, coef in image.items():
                add_term(path, (mono, m), coef)
    return paths


@lru_cache(maxsize=262144)
def square_type(b: BraidWord, root: int, c1: int, c2: int) -> SquareType:
    in_range = 0 <= c1 < b.n and 0 <= c2 < b.n
    if not in_range or c1 == c2 or root >> c1 & 1 or root >> c2 & 1:
        raise NotASquareRoot(f"vertex {vertex_bits(root, b.n)} is not a square root for crossings {c1}, {c2}")
    c1, c2 = min(c1, c2), max(c1, c2)
    path_a, path_b = square_paths(b, root, c1, c2)
    if not path_a and not path_b:
        return _xy_type(b, root, c1, c2)
    if path_a == path_b:
        return SquareType.C
    if path_a == {k: -v for k, v in path_b.items()}:
        return SquareType.A
    raise AssertionError(f"square at {vertex_bits(root, b.n)} ({c1}, {c2}) neither commutes nor anticommutes")


def classify_square(b: BraidWord, root_vertex: int, c1: int, c2: int) -> SquareType:
    return square_type(b, root_vertex, c1, c2)
