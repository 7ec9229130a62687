from typing import List, Optional, Tuple, Sequence
from sympy.polys.matrices import DomainMatrix
from src.linalg.field import Field
from src.models.m_errors import LinalgErrors
from src.models.base_errors import DimensionMismatch


class Mat:
    """Dense matrix of field elements. Treated as immutable once built."""

    def __init__(self, field: Field, rows: int, cols: int, data: List[list] = None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if data is None:
            data = [[field.zero] * cols for _ in range(rows)]
        self.data = data

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = cls(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int = None) -> "Mat":
        data = [list(r) for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(field, len(data), cols, data)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Mat":
        m = cls(field, rows, len(columns))
        for j, column in enumerate(columns):
            for i in range(rows):
                m.data[i][j] = column[i]
        return m

    @property
    def T(self) -> "Mat":
        return Mat(
            self.field,
            self.cols,
            self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def apply(self, vec: Sequence) -> list:
        zero = self.field.zero
        out = []
        for row in self.data:
            acc = zero
            for a, b in zip(row, vec):
                if a != zero and b != zero:
                    acc += a * b
            out.append(acc)
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        zero = self.field.zero
        out = Mat(self.field, self.rows, other.cols)
        for i, row in enumerate(self.data):
            target = out.data[i]
            for k, a in enumerate(row):
                if a == zero:
                    continue
                for j, b in enumerate(other.data[k]):
                    if b != zero:
                        target[j] += a * b
        return out

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(
            self.field,
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(
            self.field,
            self.rows,
            self.cols,
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
        )

    def scale(self, c) -> "Mat":
        return Mat(self.field, self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def render(self) -> List[List[str]]:
        return [[self.field.render(a) for a in r] for r in self.data]


def rref(m: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return Mat(m.field, m.rows, m.cols, [list(r) for r in m.data]), ()
    dm = DomainMatrix([list(r) for r in m.data], (m.rows, m.cols), m.field.DOMAIN)
    reduced, pivots = dm.rref()
    return Mat(m.field, m.rows, m.cols, [list(r) for r in reduced.to_list()]), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Mat) -> List[list]:
    """Basis of the right null space, one vector per free column."""
    field = m.field
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [field.zero] * m.cols
        vec[free] = field.one
        for r, p in enumerate(pivots):
            vec[p] = -reduced.data[r][free]
        basis.append(vec)
    return basis


def solve(m: Mat, b: Sequence) -> Optional[list]:
    """A particular solution of m x = b (free variables zero), or None when inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch(LinalgErrors.DIMENSION_MISMATCH.value.format(got=len(b), rows=m.rows))
    field = m.field
    augmented = Mat(field, m.rows, m.cols + 1, [list(r) + [v] for r, v in zip(m.data, b)])
    reduced, pivots = rref(augmented)
    if m.cols in pivots:
        return None
    x = [field.zero] * m.cols
    for r, p in enumerate(pivots):
        x[p] = reduced.data[r][m.cols]
    return x


def inverse(m: Mat) -> Optional[Mat]:
    if m.rows != m.cols:
        return None
    n = m.rows
    field = m.field
    augmented = Mat(
        field,
        n,
        2 * n,
        [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(m.data)],
    )
    reduced, pivots = rref(augmented)
    if tuple(pivots[:n]) != tuple(range(n)):
        return None
    return Mat(field, n, n, [r[n:] for r in reduced.data])


class EchelonBasis:
    """Incrementally grown basis of a subspace of field^dim.

    Every stored row has its own pivot column holding one, and each new row is
    reduced against all earlier rows, so reducing a vector row by row in
    insertion order clears all pivot positions.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.rows: List[list] = []
        self.pivots: List[int] = []

    def reduce(self, vec: Sequence) -> Tuple[list, list]:
        zero = self.field.zero
        residual = list(vec)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            c = residual[p]
            coeffs.append(c)
            if c != zero:
                for k, a in enumerate(row):
                    if a != zero:
                        residual[k] -= c * a
        return residual, coeffs

    def add(self, vec: Sequence) -> bool:
        residual, _ = self.reduce(vec)
        zero = self.field.zero
        for p, a in enumerate(residual):
            if a != zero:
                inv = self.field.one / a
                self.rows.append([inv * x for x in residual])
                self.pivots.append(p)
                return True
        return False

    def extend(self, vectors) -> "EchelonBasis":
        for v in vectors:
            self.add(v)
        return self

    def contains(self, vec: Sequence) -> bool:
        residual, _ = self.reduce(vec)
        zero = self.field.zero
        return all(a == zero for a in residual)

    def coordinates(self, vec: Sequence) -> list:
        """Coefficients of vec in the stored rows; vec must lie in the span."""
        return self.reduce(vec)[1]

    def complement(self) -> List[int]:
        taken = set(self.pivots)
        return [k for k in range(self.dim) if k not in taken]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.field, self.dim)
        other.rows = [list(r) for r in self.rows]
        other.pivots = list(self.pivots)
        return other

    def canonical(self) -> Mat:
        if not self.rows:
            return Mat(self.field, 0, self.dim)
        reduced, pivots = rref(Mat.from_rows(self.field, self.rows, self.dim))
        return Mat(self.field, len(pivots), self.dim, reduced.data[: len(pivots)])

    def same_span(self, other: "EchelonBasis") -> bool:
        return self.rank == other.rank and all(self.contains(r) for r in other.rows)
