# app/engine/complex.py
"""
Bigraded chain complexes from the signed cube
---------------------------------------------
Theories:
- odd: exterior algebra on the circles of every vertex
- odd_reduced: exterior algebra on the consecutive differences
  u_i = v_{l_i} - v_{l_{i+1}} of the sorted circle labels (the kernel of the
  augmentation), differentials restricted from the odd theory
- even: one rank-2 module per circle; a monomial lists the x-marked circles

Gradings: r = |v| - n_minus, Q = k - 2m + n_plus - 2 n_minus + |v| where k is
the circle count (k - 1 in the reduced theory) and m the monomial size.
Bases are ordered by vertex, then lexicographically by monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

import sympy
from loguru import logger
from sympy.ntheory import isprime

from app.core.braid import BraidWord, self_linking
from app.core.exterior import Monomial, Vector, add_term, wedge_linear
from app.core.planar import EdgeAction, Merge, apply_action, vertex_circles
from app.engine.cube import SignedCube, build_cube
from app.errors import MalformedCoefficients
from app.utils.intlinalg import IntMatrix

Bigrading = tuple[int, int]
Generator = tuple[int, Monomial]


class Theory(str, Enum):
    ODD = "odd"
    REDUCED = "odd_reduced"
    EVEN = "even"

    @classmethod
    def parse(cls, text: str) -> "Theory":
        return cls(text.replace("-", "_"))


# ====================
# COEFFICIENTS
# ====================
@dataclass(frozen=True)
class Coefficients:
    modulus: int = 0
    integral: bool = True

    @classmethod
    def integers(cls) -> "Coefficients":
        return cls(0, True)

    @classmethod
    def rationals(cls) -> "Coefficients":
        return cls(0, False)

    @classmethod
    def prime_field(cls, p: int) -> "Coefficients":
        if not isprime(p):
            raise MalformedCoefficients(f"{p} is not prime")
        return cls(p, False)

    @classmethod
    def parse(cls, text: str) -> "Coefficients":
        spec = text.strip()
        if spec.upper() == "Z":
            return cls.integers()
        if spec.upper() == "Q":
            return cls.rationals()
        if spec.lower().startswith("fp:"):
            try:
                return cls.prime_field(int(spec[3:]))
            except ValueError as e:
                raise MalformedCoefficients(f"bad prime in {text!r}") from e
        raise MalformedCoefficients(f"unknown coefficients {text!r}; use Z, Q or Fp:<p>")

    @property
    def is_field(self) -> bool:
        return not self.integral

    def group_symbol(self) -> str:
        if self.integral:
            return "Z"
        return "Q" if self.modulus == 0 else f"F_{self.modulus}"

    def __str__(self) -> str:
        if self.integral:
            return "Z"
        return "Q" if self.modulus == 0 else f"Fp:{self.modulus}"


# ====================
# LAURENT POLYNOMIALS
# ====================
class LaurentPolynomial:
    def __init__(self, coefficients: Mapping[int, int] | None = None):
        self.coefficients: dict[int, int] = {e: c for e, c in (coefficients or {}).items() if c}

    def add(self, exponent: int, coefficient: int) -> None:
        value = self.coefficients.get(exponent, 0) + coefficient
        if value:
            self.coefficients[exponent] = value
        else:
            self.coefficients.pop(exponent, None)

    def inverted(self) -> "LaurentPolynomial":
        """Substitute q -> 1/q."""
        return LaurentPolynomial({-e: c for e, c in self.coefficients.items()})

    def to_sympy(self) -> sympy.Expr:
        q = sympy.Symbol("q")
        return sympy.Add(*(c * q**e for e, c in sorted(self.coefficients.items())))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPolynomial) and self.coefficients == other.coefficients

    def __str__(self) -> str:
        return str(self.to_sympy())

    def __repr__(self) -> str:
        return f"LaurentPolynomial({dict(sorted(self.coefficients.items()))})"


# ====================
# COMPLEX
# ====================
@dataclass
class GradedComplex:
    braid: BraidWord
    theory: Theory
    coefficients: Coefficients
    bases: dict[Bigrading, list[Generator]] = field(default_factory=dict)
    index: dict[Bigrading, dict[Generator, int]] = field(default_factory=dict)
    differentials: dict[Bigrading, IntMatrix] = field(default_factory=dict)

    def bigradings(self) -> list[Bigrading]:
        return sorted(self.bases)

    def dim(self, bigrading: Bigrading) -> int:
        return len(self.bases.get(bigrading, ()))

    def differential(self, bigrading: Bigrading) -> IntMatrix:
        """d: C_{r,Q} -> C_{r+1,Q}, rows indexed by the target basis."""
        r, q = bigrading
        found = self.differentials.get(bigrading)
        if found is not None:
            return found
        return IntMatrix.zeros(self.dim((r + 1, q)), self.dim(bigrading))

    def coordinates(self, bigrading: Bigrading, vector: Mapping[Generator, int]) -> list[int]:
        out = [0] * self.dim(bigrading)
        lookup = self.index.get(bigrading, {})
        for gen, coef in vector.items():
            out[lookup[gen]] += coef
        return out


def circle_count(braid: BraidWord, vertex: int, theory: Theory) -> int:
    k = len(vertex_circles(braid, vertex))
    return k - 1 if theory is Theory.REDUCED else k


def grading(braid: BraidWord, vertex: int, size: int, theory: Theory) -> Bigrading:
    height = bin(vertex).count("1")
    k = circle_count(braid, vertex, theory)
    return height - braid.n_minus, k - 2 * size + braid.n_plus - 2 * braid.n_minus + height


def _generators(braid: BraidWord, vertex: int, theory: Theory, size: int) -> Iterable[Monomial]:
    labels = vertex_circles(braid, vertex)
    keys = range(len(labels) - 1) if theory is Theory.REDUCED else labels
    return combinations(keys, size)


# ====================
# EDGE MAPS
# ====================
def _telescoped(positions: Mapping[int, int], p: int, q: int) -> dict[int, int]:
    """v_p - v_q in the basis of consecutive differences."""
    i, j = positions[p], positions[q]
    if i < j:
        return {t: 1 for t in range(i, j)}
    return {t: -1 for t in range(j, i)}


def reduced_image(action: EdgeAction, source: tuple[int, ...], target: tuple[int, ...], mono: Monomial) -> Vector:
    positions = {l: t for t, l in enumerate(target)}
    images: dict[int, dict[int, int]] = {}
    for g in mono:
        p, q = source[g], source[g + 1]
        if isinstance(action, Merge):
            p = action.kept if p == action.dropped else p
            q = action.kept if q == action.dropped else q
        images[g] = _telescoped(positions, p, q) if p != q else {}
    left = {} if isinstance(action, Merge) else _telescoped(positions, action.a0, action.a1)
    return wedge_linear(left, images, mono)


def even_image(action: EdgeAction, mono: Monomial) -> Vector:
    marked = set(mono)
    if isinstance(action, Merge):
        if action.first in marked and action.second in marked:
            return {}
        if action.dropped in marked:
            marked.discard(action.dropped)
            marked.add(action.kept)
        return {tuple(sorted(marked)): 1}
    if action.circle in marked:
        return {tuple(sorted(marked | {action.a0, action.a1})): 1}
    return {tuple(sorted(marked | {action.a0})): 1, tuple(sorted(marked | {action.a1})): 1}


def edge_image(cube: SignedCube, theory: Theory, vertex: int, x: int, mono: Monomial) -> Vector:
    """Signed image of one generator along the cube edge (vertex, x)."""
    action = cube.action(vertex, x)
    if theory is Theory.ODD:
        image, sign = apply_action(action, {mono: 1}), cube.sign(vertex, x)
    elif theory is Theory.REDUCED:
        source = vertex_circles(cube.braid, vertex)
        target = vertex_circles(cube.braid, vertex | 1 << x)
        image, sign = reduced_image(action, source, target, mono), cube.sign(vertex, x)
    else:
        image, sign = even_image(action, mono), cube.even_sign(vertex, x)
    return {m: sign * c for m, c in image.items()}


def expand_reduced(labels: tuple[int, ...], mono: Monomial) -> Vector:
    """A reduced monomial written in the odd basis of the same vertex."""
    images = {g: {labels[g]: 1, labels[g + 1]: -1} for g in mono}
    return wedge_linear({}, images, mono)


# ====================
# BUILD
# ====================
def _vertices_at_height(n: int, height: int) -> list[int]:
    out = []
    for chosen in combinations(range(n), height):
        v = 0
        for x in chosen:
            v |= 1 << x
        out.append(v)
    return sorted(out)


def _fill_basis(cx: GradedComplex, bigradings: set[Bigrading] | None) -> None:
    b, theory = cx.braid, cx.theory
    if bigradings is None:
        vertices: Iterable[int] = range(1 << b.n)
    else:
        heights = sorted({r + b.n_minus for r, _ in bigradings if 0 <= r + b.n_minus <= b.n})
        vertices = sorted(v for h in heights for v in _vertices_at_height(b.n, h))
    for v in vertices:
        k = circle_count(b, v, theory)
        for size in range(k + 1):
            bg = grading(b, v, size, theory)
            if bigradings is not None and bg not in bigradings:
                continue
            for mono in _generators(b, v, theory, size):
                basis = cx.bases.setdefault(bg, [])
                cx.index.setdefault(bg, {})[(v, mono)] = len(basis)
                basis.append((v, mono))


def build_complex(
    cube: SignedCube,
    theory: Theory | str = Theory.ODD,
    coefficients: Coefficients | None = None,
    bigradings: Iterable[Bigrading] | None = None,
) -> GradedComplex:
    """Assemble bases and differentials; `bigradings` restricts the source blocks built."""
    theory = Theory.parse(theory) if isinstance(theory, str) else theory
    b = cube.braid
    cx = GradedComplex(b, theory, coefficients or Coefficients.integers())
    wanted = None if bigradings is None else set(bigradings)
    basis_wanted = None if wanted is None else wanted | {(r + 1, q) for r, q in wanted}
    _fill_basis(cx, basis_wanted)

    for bg in cx.bigradings():
        if wanted is not None and bg not in wanted:
            continue
        r, q = bg
        target = (r + 1, q)
        lookup = cx.index.get(target, {})
        matrix = IntMatrix.zeros(cx.dim(target), cx.dim(bg))
        for col, (v, mono) in enumerate(cx.bases[bg]):
            for x in range(b.n):
                if v >> x & 1:
                    continue
                w = v | 1 << x
                for m, c in edge_image(cube, theory, v, x, mono).items():
                    row = lookup.get((w, m))
                    if row is None:
                        raise AssertionError(f"differential left bigrading {bg} at vertex {v} crossing {x}")
                    matrix.add(row, col, c)
        cx.differentials[bg] = matrix
        logger.debug(f"{theory.value} d{bg}: {matrix.shape}, nnz={matrix.nnz()}")
    return cx


def complex_of(braid: BraidWord, theory: Theory | str = Theory.ODD, coefficients: Coefficients | None = None) -> GradedComplex:
    return build_complex(build_cube(braid), theory, coefficients)


def apply_differential(cx: GradedComplex, bigrading: Bigrading, vector: list[int]) -> list[int]:
    return cx.differential(bigrading).matvec(vector)


def dump_matrices(cx: GradedComplex) -> str:
    lines: list[str] = []
    for bg in sorted(cx.differentials):
        m = cx.differentials[bg]
        lines.append(f"{bg[0]} {bg[1]} {m.nrows} {m.ncols}")
        for i in sorted(m.rows):
            for j in sorted(m.rows[i]):
                lines.append(f"{i} {j} {m.rows[i][j]}")
    return "\n".join(lines) + ("\n" if lines else "")


# ====================
# PLAMENEVSKAYA CHAINS
# ====================
@dataclass(frozen=True)
class PsiChain:
    bigrading: Bigrading
    vector: dict[Generator, int]

    def coordinates(self, cx: GradedComplex) -> list[int]:
        return cx.coordinates(self.bigrading, self.vector)


def psi_chain(b: BraidWord, theory: Theory | str = Theory.ODD) -> PsiChain:
    """The top monomial of the braid-like resolution, with coefficient +1."""
    theory = Theory.parse(theory) if isinstance(theory, str) else theory
    vertex = b.oriented_vertex()
    labels = vertex_circles(b, vertex)
    top = tuple(range(len(labels) - 1)) if theory is Theory.REDUCED else labels
    bg = grading(b, vertex, len(top), theory)
    expected = (0, self_linking(b) + (1 if theory is Theory.REDUCED else 0))
    if bg != expected:
        raise AssertionError(f"invariant chain sits at {bg}, expected {expected}")
    return PsiChain(bg, {(vertex, top): 1})


# ====================
# EULER CHARACTERISTIC
# ====================
def euler_characteristic(cx: GradedComplex) -> LaurentPolynomial:
    chi = LaurentPolynomial()
    for (r, q), basis in cx.bases.items():
        chi.add(q, (-1) ** (r % 2) * len(basis))
    return chi


def jones_polynomial(b: BraidWord) -> LaurentPolynomial:
    """Unnormalized Jones polynomial (unknot = q + 1/q), summed vertex by vertex."""
    chi = LaurentPolynomial()
    for v in range(1 << b.n):
        height = bin(v).count("1")
        k = len(vertex_circles(b, v))
        sign = -1 if (height - b.n_minus) % 2 else 1
        shift = height + b.n_plus - 2 * b.n_minus
        for m in range(k + 1):
            chi.add(k - 2 * m + shift, sign * comb(k, m))
    return chi
