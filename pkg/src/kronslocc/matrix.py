"""Dense matrices over the Gaussian rationals.

Everything here is exact; ranks and kernels are decided by plain Gaussian
elimination with first-nonzero pivoting, which is deterministic.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["Matrix", "rank", "nullspace_basis", "solve_linear"]


class Matrix:
    """Immutable ``rows x cols`` matrix of :class:`Scalar` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows_ = [tuple(as_scalar(x) for x in row) for row in data]
        if rows_:
            width = len(rows_[0])
            if any(len(r) != width for r in rows_):
                raise ValueError("ragged matrix rows")
        else:
            width = cols or 0
        self.rows = len(rows_)
        self.cols = width
        self._data = tuple(rows_)

    @classmethod
    def _wrap(cls, rows_: Sequence[Sequence[Scalar]], cols: int) -> "Matrix":
        obj = object.__new__(cls)
        obj._data = tuple(tuple(r) for r in rows_)
        obj.rows = len(obj._data)
        obj.cols = cols
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._wrap([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> "Matrix":
        return cls._wrap(
            [[columns[j][i] for j in range(len(columns))] for i in range(rows)],
            len(columns),
        )

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[Scalar, ...]:
        return tuple(x for row in self._data for x in row)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._data for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._wrap([[self._data[i][j] for j in cols] for i in rows], len(cols))

    # -- algebra -----------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        _same_shape(self, other)
        return Matrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self._data, other._data)],
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._wrap([[-x for x in r] for r in self._data], self.cols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        if c.is_zero():
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._wrap([[c * x for x in r] for r in self._data], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        # integer arithmetic over a common denominator, skipping zeros;
        # one reduction per output entry
        da, A = _sparse_integral(self)
        db, B = _sparse_integral(other)
        ocols = other.cols
        den = da * db
        out = []
        for arow in A:
            acc_re = [0] * ocols
            acc_im = [0] * ocols
            for k, x, y in arow:
                for j, u, v in B[k]:
                    acc_re[j] += x * u - y * v
                    acc_im[j] += x * v + y * u
            out.append([ZERO if (p == 0 and q == 0) else Scalar._raw(p, q, den)
                        for p, q in zip(acc_re, acc_im)])
        return Matrix._wrap(out, ocols)

    def apply(self, v: Sequence[Scalar]) -> list[Scalar]:
        """Matrix-vector product."""
        out = []
        for r in self._data:
            acc = ZERO
            for x, y in zip(r, v):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    # -- exact linear algebra ---------------------------------------------

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[list[Scalar]]:
        return nullspace_basis(self)

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        det = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if p is None:
                return ZERO
            if p != c:
                a[p], a[c] = a[c], a[p]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                f = a[i][c]
                if f.is_zero():
                    continue
                f = f * inv
                ri, rc = a[i], a[c]
                for j in range(c + 1, n):
                    if not rc[j].is_zero():
                        ri[j] = ri[j] - f * rc[j]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self._data)]
        red, pivots = _rref(aug, 2 * n, limit=n)
        if len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._wrap([r[n:] for r in red[:n]], n)


def _sparse_integral(m: Matrix) -> tuple[int, list[list[tuple[int, int, int]]]]:
    """Common denominator and per-row ``(col, re, im)`` integer numerators of nonzeros."""
    den = 1
    for r in m._data:
        for x in r:
            if x._d != 1:
                den = lcm(den, x._d)
    rows = []
    for r in m._data:
        rows.append([(j, x._a * (den // x._d), x._b * (den // x._d))
                     for j, x in enumerate(r) if x._a or x._b])
    return den, rows


def _same_shape(a: Matrix, b: Matrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def _rref(a: list[list[Scalar]], ncols: int, limit: int | None = None):
    """In-place reduced row echelon form; pivots searched in columns < limit."""
    limit = ncols if limit is None else limit
    nrows = len(a)
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        row = a[r]
        piv = row[c]
        if piv != ONE:
            inv = piv.inverse()
            for j in range(c, ncols):
                if not row[j].is_zero():
                    row[j] = row[j] * inv
        nz = [j for j in range(c + 1, ncols) if not row[j].is_zero()]
        for i in range(nrows):
            if i == r:
                continue
            f = a[i][c]
            if f.is_zero():
                continue
            ri = a[i]
            ri[c] = ZERO
            for j in nz:
                ri[j] = ri[j] - f * row[j]
        pivots.append(c)
        r += 1
    return a, pivots


def _echelon_rank(a: list[list[Scalar]], ncols: int) -> int:
    nrows = len(a)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        row = a[r]
        inv = row[c].inverse()
        nz = [j for j in range(c + 1, ncols) if not row[j].is_zero()]
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f.is_zero():
                continue
            f = f * inv
            ri = a[i]
            for j in nz:
                ri[j] = ri[j] - f * row[j]
        r += 1
    return r


def rank(m: Matrix) -> int:
    """Exact rank by forward elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _echelon_rank(m.tolist(), m.cols)


def nullspace_basis(m: Matrix) -> list[list[Scalar]]:
    """Basis of the right kernel, one vector per free column of the RREF."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[ONE if i == j else ZERO for i in range(m.cols)] for j in range(m.cols)]
    red, pivots = _rref(m.tolist(), m.cols)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r][free]
        basis.append(v)
    return basis


def solve_linear(m: Matrix, rhs: Sequence[Scalar]) -> list[Scalar] | None:
    """One solution of ``m x = rhs`` (free variables set to zero), or None."""
    n = m.cols
    aug = [list(r) + [b] for r, b in zip(m.tolist(), rhs)]
    red, pivots = _rref(aug, n + 1, limit=n)
    for r in range(len(pivots), len(red)):
        if not red[r][n].is_zero():
            return None
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = red[r][n]
    return x


def primitive(vectors: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    """Rescale a family by one common factor so all entries are coprime Gaussian integers."""
    den = 1
    g = 0
    for v in vectors:
        for x in v:
            if x._d != 1:
                den = lcm(den, x._d)
    for v in vectors:
        for x in v:
            g = gcd(g, x._a * (den // x._d), x._b * (den // x._d))
    if g == 0:
        return [list(v) for v in vectors]
    return [[Scalar._raw(x._a * (den // x._d) // g, x._b * (den // x._d) // g, 1) for x in v]
            for v in vectors]


def complete_basis(vectors: Sequence[Sequence[Scalar]], dim: int) -> list[list[Scalar]]:
    """Standard basis vectors extending independent ``vectors`` to a basis.

    The unit vectors on the non-pivot columns of the echelon form do it.
    """
    if not vectors:
        return [[ONE if i == j else ZERO for i in range(dim)] for j in range(dim)]
    _, pivots = _rref([list(v) for v in vectors], dim)
    pivset = set(pivots)
    return [[ONE if i == j else ZERO for i in range(dim)] for j in range(dim) if j not in pivset]
