# app/engine/cube.py
"""
Signed cube of resolutions
--------------------------
- every edge (vertex with crossing x at 0, crossing x) carries a merge/split
  action from the planar layer and a sign in {+1, -1}
- signs follow the recursion on the last crossing: edges inside the 0-face
  recurse, connecting edges get +1, and an edge in the 1-face gets minus the
  sign of its partner in the 0-face times the sign of the square they span

Unrolled, the recursion reads
    sign(v, x) = prod over y > x with v(y) = 1 of -sgn(square at v|<y, {x, y})
where v|<y keeps only the bits of v below y.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from loguru import logger

from app.core.braid import BraidWord
from app.core.planar import (
    EdgeAction,
    Merge,
    SquareType,
    edge_action,
    square_paths,
    square_type,
    vertex_bits,
)
from app.errors import NotASquareRoot


def describe_action(action: EdgeAction) -> str:
    if isinstance(action, Merge):
        return f"merge({action.first},{action.second}->{action.kept})"
    return f"split({action.circle}->{action.a0},{action.a1})"


class SignedCube:
    """Lazily evaluated signed cube; every accessor is memoized and deterministic."""

    def __init__(self, braid: BraidWord):
        self.braid = braid
        self.n = braid.n
        self._signs: dict[tuple[int, int], int] = {}

    # ====================
    # EDGES
    # ====================
    def action(self, vertex: int, x: int) -> EdgeAction:
        return edge_action(self.braid, vertex, x)

    def square_type(self, root: int, c1: int, c2: int) -> SquareType:
        return square_type(self.braid, root, c1, c2)

    def sign(self, vertex: int, x: int) -> int:
        key = (vertex, x)
        cached = self._signs.get(key)
        if cached is not None:
            return cached
        sign = 1
        for y in range(x + 1, self.n):
            if vertex >> y & 1:
                root = vertex & ((1 << y) - 1)
                sign *= -self.square_type(root, x, y).sign
        self._signs[key] = sign
        return sign

    def override_sign(self, vertex: int, x: int, sign: int) -> None:
        """Force an edge sign (used to corrupt a cube on purpose in checks)."""
        self._signs[(vertex, x)] = sign

    def even_sign(self, vertex: int, x: int) -> int:
        return -1 if bin(vertex & ((1 << x) - 1)).count("1") % 2 else 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for vertex in range(1 << self.n):
            for x in range(self.n):
                if not vertex >> x & 1:
                    yield vertex, x

    def squares(self) -> Iterator[tuple[int, int, int]]:
        for vertex in range(1 << self.n):
            zeros = [x for x in range(self.n) if not vertex >> x & 1]
            for c1, c2 in combinations(zeros, 2):
                yield vertex, c1, c2

    def dump(self) -> str:
        lines = [
            f"{vertex_bits(v, self.n)} {x} {self.sign(v, x):+d} {describe_action(self.action(v, x))}"
            for v, x in self.edges()
        ]
        return "\n".join(lines) + ("\n" if lines else "")


def build_cube(b: BraidWord) -> SignedCube:
    logger.debug(f"signed cube for {len(b.letters)} crossings ({1 << b.n} vertices)")
    return SignedCube(b)


# ====================
# CHECKS
# ====================
def square_anticommutes(cube: SignedCube, root: int, c1: int, c2: int) -> bool:
    path_a, path_b = square_paths(cube.braid, root, c1, c2)
    sign_a = cube.sign(root, c1) * cube.sign(root | 1 << c1, c2)
    sign_b = cube.sign(root, c2) * cube.sign(root | 1 << c2, c1)
    signed_a = {k: sign_a * v for k, v in path_a.items()}
    signed_b = {k: -sign_b * v for k, v in path_b.items()}
    return signed_a == signed_b


def verify_skew(cube: SignedCube) -> bool:
    for root, c1, c2 in cube.squares():
        if not square_anticommutes(cube, root, c1, c2):
            logger.warning(f"square {vertex_bits(root, cube.n)} ({c1},{c2}) does not anticommute")
            return False
    return True


def count_af_faces(cube: SignedCube, root: int, c1: int, c2: int, c3: int) -> int:
    """Number of faces of type A or X in the 3-dimensional subcube at root."""
    crossings = (c1, c2, c3)
    if len(set(crossings)) != 3 or any(root >> c & 1 for c in crossings):
        raise NotASquareRoot(f"vertex {vertex_bits(root, cube.n)} does not span a 3-cube on {crossings}")
    count = 0
    for third in crossings:
        p, q = (c for c in crossings if c != third)
        for base in (root, root | 1 << third):
            if cube.square_type(base, p, q) in (SquareType.A, SquareType.X):
                count += 1
    return count
