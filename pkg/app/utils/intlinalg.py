# app/utils/intlinalg.py
"""
Exact linear algebra
--------------------
- IntMatrix: sparse integer matrix stored as dict-of-rows
- reduce_unit_pivots: sparse elimination of +-1 pivots; keeps elementary
  divisors, ranks over every field and the cokernel Z^rows / im(A) together
  with the image of an optional vector in it
- smith_normal_form: dense, smallest-magnitude pivoting, with S and T
- solve_min_multiple / cokernel_class: smallest n with A x = n y solvable
- row_reduce: field row reduction through sympy DomainMatrix over QQ or GF(p)

Python integers are unbounded, so no entry ever overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Sequence

from loguru import logger
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from app.config import settings
from app.errors import ShapeError


# ====================
# MATRIX TYPE
# ====================
class IntMatrix:
    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, int]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, int]] = {}
        for i, row in (rows or {}).items():
            clean = {j: v for j, v in row.items() if v}
            if clean:
                self.rows[i] = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        width = ncols if ncols is not None else (len(data[0]) if data else 0)
        return cls(len(data), width, {i: {j: int(v) for j, v in enumerate(row)} for i, row in enumerate(data)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(size, size, {i: {i: 1} for i in range(size)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def get(self, i: int, j: int) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def add(self, i: int, j: int, value: int) -> None:
        if not value:
            return
        row = self.rows.setdefault(i, {})
        new = row.get(j, 0) + value
        if new:
            row[j] = new
        else:
            del row[j]
            if not row:
                del self.rows[i]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def column(self, j: int) -> list[int]:
        return [self.get(i, j) for i in range(self.nrows)]

    def transpose(self) -> "IntMatrix":
        out = IntMatrix(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v
        return out

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = IntMatrix(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, a in row.items():
                for j, b in other.rows.get(k, {}).items():
                    acc[j] = acc.get(j, 0) + a * b
            out.rows[i] = {j: v for j, v in acc.items() if v}
            if not out.rows[i]:
                del out.rows[i]
        return out

    def matvec(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.ncols:
            raise ShapeError(f"vector of length {len(vec)} against {self.ncols} columns")
        out = [0] * self.nrows
        for i, row in self.rows.items():
            out[i] = sum(v * vec[j] for j, v in row.items())
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def determinant(m: IntMatrix) -> int:
    dense = [[ZZ(v) for v in row] for row in m.to_dense()]
    return int(DomainMatrix(dense, m.shape, ZZ).det())


# ====================
# SPARSE UNIT ELIMINATION
# ====================
@dataclass
class UnitReduction:
    remainder: IntMatrix
    eliminated: int
    vector: list[int] | None


def reduce_unit_pivots(a: IntMatrix, y: Sequence[int] | None = None) -> UnitReduction:
    """Eliminate +-1 pivots with row operations, then drop pivot rows and columns."""
    if y is not None and len(y) != a.nrows:
        raise ShapeError(f"vector of length {len(y)} against {a.nrows} rows")
    rows = {i: dict(r) for i, r in a.rows.items()}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    vec = list(y) if y is not None else None
    dead_rows: set[int] = set()
    dead_cols: set[int] = set()

    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            if j in dead_cols or j not in cols:
                continue
            candidates = [i for i in cols[j] if abs(rows[i][j]) == 1]
            if not candidates:
                continue
            p = min(candidates, key=lambda i: (len(rows[i]), i))
            pivot_row, unit = rows[p], rows[p][j]
            for i in list(cols[j]):
                if i == p:
                    continue
                factor = rows[i][j] * unit
                target = rows[i]
                for k, v in pivot_row.items():
                    new = target.get(k, 0) - factor * v
                    if new:
                        if k not in target:
                            cols.setdefault(k, set()).add(i)
                        target[k] = new
                    else:
                        target.pop(k, None)
                        cols[k].discard(i)
                if vec is not None:
                    vec[i] -= factor * vec[p]
            for k in pivot_row:
                cols[k].discard(p)
                if not cols[k]:
                    del cols[k]
            del rows[p]
            cols.pop(j, None)
            dead_rows.add(p)
            dead_cols.add(j)
            progress = True

    row_map = {i: t for t, i in enumerate(i for i in range(a.nrows) if i not in dead_rows)}
    col_map = {j: t for t, j in enumerate(j for j in range(a.ncols) if j not in dead_cols)}
    remainder = IntMatrix(len(row_map), len(col_map))
    for i, r in rows.items():
        if r:
            remainder.rows[row_map[i]] = {col_map[j]: v for j, v in r.items()}
    if vec is not None:
        vec = [vec[i] for i in range(a.nrows) if i not in dead_rows]
    logger.debug(f"unit elimination {a.shape}: {len(dead_rows)} pivots, remainder {remainder.shape}")
    return UnitReduction(remainder, len(dead_rows), vec)


# ====================
# SMITH NORMAL FORM
# ====================
@dataclass
class SnfResult:
    S: IntMatrix
    D: IntMatrix
    T: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.D.get(i, i) for i in range(min(self.D.shape))]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d)


def _smallest_entry(a: list[list[int]], t: int, rows: int, cols: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = a[i][j]
            if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                best = (i, j)
                if abs(v) == 1:
                    return best
    return best


def _snf_dense(a: list[list[int]], transforms: bool) -> tuple[list[list[int]], list[list[int]] | None, list[list[int]] | None]:
    m = len(a)
    n = len(a[0]) if m else 0
    s = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    t_mat = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        if s is not None:
            s[i], s[k] = s[k], s[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        if t_mat is not None:
            for row in t_mat:
                row[j], row[k] = row[k], row[j]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for c in range(n):
            if rs[c]:
                ra[c] += q * rs[c]
        if s is not None:
            sa, ss = s[dst], s[src]
            for c in range(m):
                if ss[c]:
                    sa[c] += q * ss[c]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if t_mat is not None:
            for row in t_mat:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(m, n)):
        pos = _smallest_entry(a, t, m, n)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            pivot = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
            rest_col = [i for i in range(t + 1, m) if a[i][t]]
            rest_row = [j for j in range(t + 1, n) if a[t][j]]
            if rest_col or rest_row:
                # a smaller remainder appeared in the pivot row/column
                best_i = min(rest_col, key=lambda i: abs(a[i][t]), default=None)
                best_j = min(rest_row, key=lambda j: abs(a[t][j]), default=None)
                if best_i is not None and (best_j is None or abs(a[best_i][t]) <= abs(a[t][best_j])):
                    swap_rows(t, best_i)
                else:
                    swap_cols(t, best_j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % pivot), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            if s is not None:
                s[t] = [-v for v in s[t]]
    return a, s, t_mat


def _verify_snf(a: IntMatrix, result: SnfResult) -> None:
    if result.S.matmul(a).matmul(result.T) != result.D:
        raise ArithmeticError("Smith normal form failed S*A*T == D")
    if result.S.nrows and abs(determinant(result.S)) != 1:
        raise ArithmeticError("Smith normal form produced a non-unimodular S")
    if result.T.nrows and abs(determinant(result.T)) != 1:
        raise ArithmeticError("Smith normal form produced a non-unimodular T")
    diag = result.diagonal()
    for d1, d2 in zip(diag, diag[1:]):
        if d1 == 0 and d2 != 0 or d1 and d2 % d1:
            raise ArithmeticError(f"Smith normal form diagonal {diag} is not a divisibility chain")


def smith_normal_form(a: IntMatrix) -> SnfResult:
    d, s, t = _snf_dense(a.to_dense(), transforms=True)
    result = SnfResult(IntMatrix.from_dense(s, a.nrows), IntMatrix.from_dense(d, a.ncols), IntMatrix.from_dense(t, a.ncols))
    if settings.check_snf:
        _verify_snf(a, result)
    return result


def elementary_divisors(a: IntMatrix) -> list[int]:
    """Nonzero invariant factors of A (ones included), in divisibility order."""
    reduced = reduce_unit_pivots(a)
    rest = reduced.remainder
    diag: list[int] = []
    if rest.nnz() and settings.check_snf:
        # transforms are only needed to verify S*A*T == D
        diag = [x for x in smith_normal_form(rest).diagonal() if x]
    elif rest.nnz():
        d, _, _ = _snf_dense(rest.to_dense(), transforms=False)
        diag = [d[i][i] for i in range(min(rest.shape)) if d[i][i]]
    return [1] * reduced.eliminated + diag


# ====================
# MEMBERSHIP
# ====================
@dataclass
class CokernelClass:
    """Image of y in Z^rows / im(A), in Smith coordinates of the reduced presentation."""

    divisors: list[int]
    coords: list[int]

    def free_coords(self) -> list[int]:
        return self.coords[len(self.divisors):]

    def torsion_coords(self) -> list[tuple[int, int]]:
        return [(d, c % d) for d, c in zip(self.divisors, self.coords) if d > 1]

    def order(self) -> int | None:
        """Smallest n >= 1 with n*y in im(A); None when no multiple lands there."""
        if any(self.free_coords()):
            return None
        n = 1
        for d, c in zip(self.divisors, self.coords):
            if c % d:
                n = lcm(n, d // gcd(d, c))
        return n

    def divisibility(self) -> int | None:
        free = self.free_coords()
        torsion = self.torsion_coords()
        if any(free):
            g = 0
            for c in free:
                g = gcd(g, abs(c))
            # m*z = y needs each torsion coordinate in m * Z/d
            for m in sorted((k for k in range(1, g + 1) if g % k == 0), reverse=True):
                if all(c % gcd(m, d) == 0 for d, c in torsion):
                    return m
        g = 0
        for d, c in self.torsion_coords():
            if c:
                g = gcd(g, gcd(c, d))
        return g or None


def cokernel_class(a: IntMatrix, y: Sequence[int]) -> CokernelClass:
    reduced = reduce_unit_pivots(a, y)
    rest, vec = reduced.remainder, reduced.vector or []
    if not rest.nnz():
        return CokernelClass([], list(vec))
    d, s, t = _snf_dense(rest.to_dense(), transforms=True)
    if settings.check_snf:
        _verify_snf(rest, SnfResult(IntMatrix.from_dense(s, rest.nrows), IntMatrix.from_dense(d, rest.ncols), IntMatrix.from_dense(t, rest.ncols)))
    divisors = [d[i][i] for i in range(min(rest.shape)) if d[i][i]]
    coords = [sum(s[i][k] * vec[k] for k in range(rest.nrows) if s[i][k]) for i in range(rest.nrows)]
    return CokernelClass(divisors, coords)


def solve_min_multiple(a: IntMatrix, y: Sequence[int]) -> tuple[int, list[int]] | None:
    """Smallest n >= 1 with A x = n y solvable over Z, with a witness x."""
    if len(y) != a.nrows:
        raise ShapeError(f"vector of length {len(y)} against {a.nrows} rows")
    snf = smith_normal_form(a)
    diag = snf.diagonal()
    rank = snf.rank()
    y_s = snf.S.matvec(list(y))
    if any(y_s[rank:]):
        return None
    n = 1
    for d, c in zip(diag[:rank], y_s[:rank]):
        if c % d:
            n = lcm(n, d // gcd(d, c))
    z = [n * y_s[i] // diag[i] for i in range(rank)] + [0] * (a.ncols - rank)
    return n, snf.T.matvec(z)


# ====================
# FIELDS
# ====================
@dataclass
class RowReduction:
    rank: int
    pivots: tuple[int, ...]
    reduced: DomainMatrix
    modulus: int

    def contains(self, a: IntMatrix, y: Sequence[int]) -> bool:
        """True when y lies in the column span of A over the field."""
        augmented = IntMatrix(a.nrows, a.ncols + 1, {i: dict(r) for i, r in a.rows.items()})
        for i, v in enumerate(y):
            augmented.add(i, a.ncols, int(v))
        return row_reduce(augmented, self.modulus).rank == self.rank


def _field(modulus: int):
    return QQ if modulus == 0 else GF(modulus)


def to_domain_matrix(a: IntMatrix, modulus: int) -> DomainMatrix:
    field = _field(modulus)
    entries: dict[int, dict[int, object]] = {}
    for i, row in a.rows.items():
        clean = {j: field(v) for j, v in row.items() if (v % modulus if modulus else v)}
        if clean:
            entries[i] = clean
    return DomainMatrix(entries, a.shape, field)


def row_reduce(a: IntMatrix, modulus: int = 0) -> RowReduction:
    """Reduced row echelon form over QQ (modulus 0) or GF(modulus)."""
    if a.nrows == 0 or a.ncols == 0:
        return RowReduction(0, (), to_domain_matrix(a, modulus), modulus)
    reduced, pivots = to_domain_matrix(a, modulus).rref()
    return RowReduction(len(pivots), tuple(pivots), reduced, modulus)


def rank_over(a: IntMatrix, modulus: int = 0) -> int:
    """Rank over QQ (modulus 0) or GF(modulus); unit pivots first, sympy for the rest."""
    reduced = reduce_unit_pivots(a)
    if not reduced.remainder.nnz():
        return reduced.eliminated
    return reduced.eliminated + row_reduce(reduced.remainder, modulus).rank


def in_span(a: IntMatrix, y: Sequence[int], modulus: int = 0) -> bool:
    reduced = reduce_unit_pivots(a, y)
    rest, vec = reduced.remainder, reduced.vector or []
    if modulus:
        vec = [v % modulus for v in vec]
    if not any(vec):
        return True
    return row_reduce(rest, modulus).contains(rest, vec)
