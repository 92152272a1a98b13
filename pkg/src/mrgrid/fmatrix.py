"""Dense exact linear algebra over a finite field.

Matrices are immutable values holding integer element codes row-major;
all operations return fresh matrices.  Plain Gaussian elimination with
first-nonzero pivoting is used throughout, which keeps row reduction
deterministic: the same input always yields the identical reduced form.
Shapes in this package stay small (a few hundred columns at most), so
no fraction-free or blocked variants are needed.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import FieldMismatch, IndexOutOfRange, ShapeMismatch
from .gf import FieldElement, FieldSpec, field_from_dict


class FMatrix:
    """A rows x cols matrix over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "_rows")

    def __init__(self, field: FieldSpec, code_rows: Iterable[Iterable[int]],
                 cols: Optional[int] = None):
        rows = tuple(tuple(r) for r in code_rows)
        self.field = field
        self.rows = len(rows)
        if rows:
            self.cols = len(rows[0])
            if any(len(r) != self.cols for r in rows):
                raise ShapeMismatch("ragged rows")
        else:
            self.cols = 0 if cols is None else cols
        self._rows = rows

    # -- constructors --

    @classmethod
    def from_elements(cls, field: FieldSpec, element_rows) -> "FMatrix":
        out = []
        for row in element_rows:
            codes = []
            for e in row:
                if isinstance(e, FieldElement):
                    if e.field != field:
                        raise FieldMismatch("entry from a different field")
                    codes.append(e.code)
                else:
                    codes.append(field.element(e).code)
            out.append(codes)
        return cls(field, out)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "FMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "FMatrix":
        return cls(field, [[0] * cols for _ in range(rows)], cols=cols)

    # -- access --

    @property
    def code_rows(self):
        return self._rows

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, self._rows[i][j])

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.entry(i, j)

    def column_codes(self, j: int):
        return tuple(r[j] for r in self._rows)

    def __eq__(self, other):
        return (
            isinstance(other, FMatrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self._rows))

    def __repr__(self):
        return f"FMatrix({self.rows}x{self.cols} over {self.field!r})"

    def __reduce__(self):
        return (FMatrix, (self.field, self._rows, self.cols))

    # -- structural ops --

    def transpose(self) -> "FMatrix":
        return FMatrix(self.field,
                       [[self._rows[i][j] for i in range(self.rows)]
                        for j in range(self.cols)],
                       cols=self.rows)

    def vstack(self, other: "FMatrix") -> "FMatrix":
        if other.field != self.field:
            raise FieldMismatch("stacking matrices over different fields")
        if other.cols != self.cols and self.rows and other.rows:
            raise ShapeMismatch("column counts differ")
        cols = self.cols if self.rows else other.cols
        return FMatrix(self.field, self._rows + other._rows, cols=cols)

    def scale(self, factor: int) -> "FMatrix":
        mul = self.field.mul
        return FMatrix(self.field,
                       [[mul(factor, v) for v in r] for r in self._rows],
                       cols=self.cols)

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        if not isinstance(other, FMatrix):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch("multiplying matrices over different fields")
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        mul, add = f.mul, f.add
        bt = other.transpose()._rows
        out = []
        for arow in self._rows:
            orow = []
            for bcol in bt:
                acc = 0
                for x, y in zip(arow, bcol):
                    if x and y:
                        acc = add(acc, mul(x, y))
                orow.append(acc)
            out.append(orow)
        return FMatrix(f, out, cols=other.cols)

    def mul_vector(self, codes: Sequence[int]):
        """Matrix times column vector, returned as a code tuple."""
        f = self.field
        mul, add = f.mul, f.add
        out = []
        for row in self._rows:
            acc = 0
            for x, y in zip(row, codes):
                if x and y:
                    acc = add(acc, mul(x, y))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in r) for r in self._rows)

    # -- serialization --

    def to_dict(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "field": self.field.to_dict(),
            "entries": [list(self.field.code_to_coeffs(v))
                        for r in self._rows for v in r],
        }

    @classmethod
    def from_dict(cls, data) -> "FMatrix":
        field = field_from_dict(data["field"])
        r, c = data["rows"], data["cols"]
        flat = [field.coeffs_to_code(tuple(e)) for e in data["entries"]]
        if len(flat) != r * c:
            raise ShapeMismatch("entry count does not match rows*cols")
        return cls(field, [flat[i * c:(i + 1) * c] for i in range(r)], cols=c)


# ---------------------------------------------------------------------------
# elimination
# ---------------------------------------------------------------------------

def _echelon(rows, field):
    """In-place forward elimination; returns the list of pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    nrows = len(rows)
    mul, sub, inv = field.mul, field.sub, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        sel = -1
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        piv_inv = inv(rows[r][c])
        prow = rows[r]
        for i in range(r + 1, nrows):
            irow = rows[i]
            if irow[c]:
                f = mul(irow[c], piv_inv)
                for j in range(c, ncols):
                    if prow[j]:
                        irow[j] = sub(irow[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(M: FMatrix) -> int:
    """Row rank by exact Gaussian elimination."""
    rows = [list(r) for r in M._rows]
    return len(_echelon(rows, M.field))


def rref(M: FMatrix):
    """Reduced row echelon form; returns (matrix, pivot column tuple).

    The output is canonical for the row space, so two matrices span the
    same space exactly when their rref matrices are equal.
    """
    rows = [list(r) for r in M._rows]
    field = M.field
    pivots = _echelon(rows, field)
    mul, sub, inv = field.mul, field.sub, field.inv
    ncols = M.cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        piv_inv = inv(rows[r][c])
        rows[r] = [mul(piv_inv, v) for v in rows[r]]
        prow = rows[r]
        for i in range(r):
            f = rows[i][c]
            if f:
                irow = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        irow[j] = sub(irow[j], mul(f, prow[j]))
    reduced = FMatrix(field, rows[: len(pivots)], cols=ncols)
    return reduced, tuple(pivots)


def right_kernel(M: FMatrix) -> FMatrix:
    """Basis of {v : M v^T = 0}, one basis vector per row.

    Row count always equals cols - rank(M); the basis is the canonical
    one read off the reduced echelon form (one vector per free column).
    """
    reduced, pivots = rref(M)
    field = M.field
    n = M.cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    neg = field.neg
    rows = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for i, pcol in enumerate(pivots):
            v[pcol] = neg(reduced._rows[i][fcol])
        rows.append(v)
    return FMatrix(field, rows, cols=n)


def solve_right(M: FMatrix, b: Sequence[int]):
    """One solution x (code tuple) of M x^T = b^T, or None if inconsistent."""
    if len(b) != M.rows:
        raise ShapeMismatch("rhs length does not match row count")
    field = M.field
    rows = [list(r) + [bv] for r, bv in zip(M._rows, b)]
    if not rows:
        return tuple()
    pivots = _echelon(rows, field)
    n = M.cols
    if pivots and pivots[-1] == n:
        return None  # pivot in the augmented column: no solution
    mul, sub, div = field.mul, field.sub, field.div
    x = [0] * n
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        acc = rows[r][n]
        for j in range(c + 1, n):
            if rows[r][j] and x[j]:
                acc = sub(acc, mul(rows[r][j], x[j]))
        x[c] = div(acc, rows[r][c])
    return tuple(x)


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------

def kron(A: FMatrix, B: FMatrix) -> FMatrix:
    """Kronecker product; block (i, j) is A[i][j] * B.

    The index convention matches the grid flattening used everywhere in
    the package: cell (i, j) of an m x n grid maps to flat position
    i*n + j (0-based).
    """
    if A.field != B.field:
        raise FieldMismatch("Kronecker factors over different fields")
    mul = A.field.mul
    out = []
    for arow in A._rows:
        for brow in B._rows:
            row = []
            for a in arow:
                if a:
                    row.extend(mul(a, b) if b else 0 for b in brow)
                else:
                    row.extend([0] * len(brow))
            out.append(row)
    return FMatrix(A.field, out, cols=A.cols * B.cols)


def restrict_cols(M: FMatrix, indices) -> FMatrix:
    """Copy of the columns listed in `indices`, in ascending index order."""
    idx = sorted(set(indices))
    if idx and (idx[0] < 0 or idx[-1] >= M.cols):
        raise IndexOutOfRange(f"column index outside 0..{M.cols - 1}")
    return FMatrix(M.field, [[r[j] for j in idx] for r in M._rows],
                   cols=len(idx))


def row_space_equal(A: FMatrix, B: FMatrix) -> bool:
    """Whether two matrices span the same row space."""
    if A.field != B.field or A.cols != B.cols:
        return False
    ra, _ = rref(A)
    rb, _ = rref(B)
    return ra._rows == rb._rows


def embed_matrix(M: FMatrix, target: FieldSpec) -> FMatrix:
    """Entrywise application of the subfield embedding into `target`."""
    from .gf import _embedding_table
    table = _embedding_table(M.field, target)
    return FMatrix(target, [[table[v] for v in r] for r in M._rows],
                   cols=M.cols)
