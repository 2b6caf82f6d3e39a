"""Exact rational matrices: Bareiss elimination, kernels, images, inverses."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


class RatMatrix:
    """Immutable rows x cols matrix of ``Fraction`` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        return cls([[col[i] for col in columns] for i in range(rows)], cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def to_int_rows(self) -> list[list[int]]:
        out = []
        for r in self._data:
            if any(x.denominator != 1 for x in r):
                raise ValueError("matrix is not integral")
            out.append([int(x) for x in r])
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        return f"RatMatrix({[[str(x) for x in r] for r in self._data]})"

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._data), cols=self.rows) if self.rows else RatMatrix.zeros(self.cols, 0)

    T = property(transpose)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data)) if other.rows else [()] * other.cols
            return RatMatrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._data],
                cols=other.cols,
            )
        vec = tuple(Fraction(x) for x in other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._data)

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    # -- elimination --------------------------------------------------
    def _integer_rows(self) -> list[list[int]]:
        out = []
        for r in self._data:
            m = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * m) for x in r])
        return out

    def echelon(self) -> tuple[list[list[int]], list[int]]:
        """Fraction-free (Bareiss) row echelon form and its pivot columns.

        Rows are first cleared of denominators; row scaling does not change
        the row space, so pivots and kernel are those of the original matrix.
        """
        a = self._integer_rows()
        m, n = self.rows, self.cols
        pivots: list[int] = []
        prev = 1
        r = 0
        for c in range(n):
            if r == m:
                break
            p = next((i for i in range(r, m) if a[i][c]), None)
            if p is None:
                continue
            if p != r:
                a[r], a[p] = a[p], a[r]
            piv = a[r][c]
            for i in range(r + 1, m):
                lead = a[i][c]
                row_i = a[i]
                row_r = a[r]
                for j in range(c, n):
                    # Bareiss step: the division by the previous pivot is exact
                    row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
            prev = piv
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        rows, pivots = self.echelon()
        red = [[Fraction(x) for x in row] for row in rows]
        for i in range(len(red) - 1, -1, -1):
            c = pivots[i]
            pv = red[i][c]
            red[i] = [x / pv for x in red[i]]
            for k in range(i):
                f = red[k][c]
                if f:
                    red[k] = [x - f * y for x, y in zip(red[k], red[i])]
        return red, pivots

    def rank(self) -> int:
        return len(self.echelon()[1])

    def kernel(self) -> list[Vector]:
        """Basis of the right null space, one vector per free column (RREF order)."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for fcol in free:
            v = [Fraction(0)] * self.cols
            v[fcol] = Fraction(1)
            for row, pc in zip(red, pivots):
                v[pc] = -row[fcol]
            basis.append(tuple(v))
        return basis

    def image(self) -> list[Vector]:
        """Basis of the column space: the pivot columns of the matrix."""
        _, pivots = self.echelon()
        return [tuple(self._data[i][c] for i in range(self.rows)) for c in pivots]

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self._data]
        det = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def solve(self, rhs: Sequence) -> Vector:
        """A particular solution of ``self @ v = rhs``; ``ValueError`` if inconsistent."""
        aug = RatMatrix([list(r) + [b] for r, b in zip(self._data, rhs)], cols=self.cols + 1)
        red, pivots = aug.rref()
        if self.cols in pivots:
            raise ValueError("inconsistent linear system")
        v = [Fraction(0)] * self.cols
        for row, pc in zip(red, pivots):
            v[pc] = row[-1]
        return tuple(v)

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = RatMatrix(
            [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self._data)], cols=2 * n
        )
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return RatMatrix([row[n:] for row in red], cols=n)


@dataclass(frozen=True)
class KernelImage:
    kernel: list[Vector]
    image: list[Vector]
    rank: int


def rat_kernel_image(m: RatMatrix) -> KernelImage:
    return KernelImage(m.kernel(), m.image(), m.rank())


def span_rank(vectors: Sequence[Sequence], length: int) -> int:
    if not vectors:
        return 0
    return RatMatrix.from_columns(vectors, length).rank()
