"""Exact dense linear algebra over the rationals and over prime fields.

All operations are deterministic: elimination always picks the leftmost
nonzero pivot in the topmost remaining row, kernel bases set free
variables to one in ascending index order, and complements are chosen by
a greedy ascending scan over coordinate vectors.  Matrices are immutable
after construction; 0 x n and n x 0 matrices are legal everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError


class Fp:
    """Element of the prime field F_p, stored as a residue in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return Fp(self.v + other.v, self.p)

    def __sub__(self, other):
        return Fp(self.v - other.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * other.v, self.p)

    def __truediv__(self, other):
        if other.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __eq__(self, other):
        return isinstance(other, Fp) and self.v == other.v and self.p == other.p

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}"


class RationalField:
    """The field Q; scalars are fractions.Fraction in lowest terms."""

    name = "Q"
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, v) -> Fraction:
        return Fraction(v)

    def parse(self, s: str) -> Fraction:
        return Fraction(s)

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The field F_p for a prime p."""

    char = None  # set per instance

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"F{p}"

    def zero(self):
        return Fp(0, self.p)

    def one(self):
        return Fp(1, self.p)

    def of(self, v) -> Fp:
        if isinstance(v, Fp):
            return v
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise InputError(f"denominator divisible by {self.p}")
            return Fp(v.numerator, self.p) / Fp(v.denominator, self.p)
        return Fp(int(v), self.p)

    def parse(self, s: str) -> Fp:
        return self.of(Fraction(s))

    def fmt(self, x) -> str:
        return str(x.v)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

_GF_CACHE: dict = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


class Mat:
    """Immutable dense matrix over a fixed field."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, rows: int, cols: int, data, field=QQ):
        if rows < 0 or cols < 0:
            raise InputError("negative matrix dimension")
        data = tuple(tuple(field.of(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise InputError(f"data does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data
        self.field = field

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "Mat":
        z = field.zero()
        return cls(rows, cols, [[z] * cols for _ in range(rows)], field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Mat":
        z, o = field.zero(), field.one()
        return cls(n, n, [[o if i == j else z for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_rows(cls, rows_list: Sequence[Sequence], field=QQ) -> "Mat":
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        return cls(r, c, rows_list, field)

    @classmethod
    def column(cls, entries: Sequence, field=QQ) -> "Mat":
        return cls(len(entries), 1, [[x] for x in entries], field)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, {self.data})"

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise InputError("shape mismatch in matrix product")
        z = self.field.zero()
        out = []
        bdata = other.data
        for arow in self.data:
            row = [z] * other.cols
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = bdata[k]
                for j, b in enumerate(brow):
                    if b:
                        row[j] = row[j] + a * b
            out.append(row)
        return Mat(self.rows, other.cols, out, self.field)

    def add(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in matrix sum")
        return Mat(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            self.field,
        )

    def scale(self, c) -> "Mat":
        c = self.field.of(c)
        return Mat(self.rows, self.cols, [[c * x for x in row] for row in self.data], self.field)

    def neg(self) -> "Mat":
        return Mat(self.rows, self.cols, [[-x for x in row] for row in self.data], self.field)

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, list(zip(*self.data)) if self.rows else [[] for _ in range(self.cols)], self.field)

    def col(self, j: int) -> "Mat":
        return Mat(self.rows, 1, [[row[j]] for row in self.data], self.field)

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> "Mat":
        return Mat(
            row_stop - row_start,
            col_stop - col_start,
            [row[col_start:col_stop] for row in self.data[row_start:row_stop]],
            self.field,
        )

    def flatten_column_major(self) -> list:
        """Entries in (column ascending, then row ascending) order."""
        return [self.data[t][s] for s in range(self.cols) for t in range(self.rows)]


def hstack(mats: Sequence[Mat], rows: Optional[int] = None, field=QQ) -> Mat:
    mats = list(mats)
    if not mats:
        if rows is None:
            raise InputError("hstack of empty list needs explicit row count")
        return Mat.zeros(rows, 0, field)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise InputError("hstack row mismatch")
    data = [sum((list(m.data[i]) for m in mats), []) for i in range(r)]
    return Mat(r, sum(m.cols for m in mats), data, mats[0].field)


def vstack(mats: Sequence[Mat], cols: Optional[int] = None, field=QQ) -> Mat:
    mats = list(mats)
    if not mats:
        if cols is None:
            raise InputError("vstack of empty list needs explicit column count")
        return Mat.zeros(0, cols, field)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise InputError("vstack column mismatch")
    data = []
    for m in mats:
        data.extend(list(row) for row in m.data)
    return Mat(sum(m.rows for m in mats), c, data, mats[0].field)


def _rref(m: Mat):
    """Reduced row echelon form.

    Returns (rows, pivot_cols) where rows is a list of lists.  Pivoting:
    leftmost nonzero column, topmost remaining row, no size heuristics.
    """
    rows = [list(r) for r in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    pr = 0
    for pc in range(nc):
        hit = None
        for i in range(pr, nr):
            if rows[i][pc]:
                hit = i
                break
        if hit is None:
            continue
        if hit != pr:
            rows[pr], rows[hit] = rows[hit], rows[pr]
        pv = rows[pr][pc]
        if pv != m.field.one():
            inv_row = rows[pr]
            for c in range(pc, nc):
                if inv_row[c]:
                    inv_row[c] = inv_row[c] / pv
        prow = rows[pr]
        for i in range(nr):
            if i == pr:
                continue
            f = rows[i][pc]
            if f:
                irow = rows[i]
                for c in range(pc, nc):
                    if prow[c]:
                        irow[c] = irow[c] - f * prow[c]
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    return rows, pivots


def rank(m: Mat) -> int:
    return len(_rref(m)[1])


def pivot_columns(m: Mat) -> list:
    return _rref(m)[1]


def kernel_basis(m: Mat) -> Mat:
    """Columns span ker m; echelon-derived basis, free variables in
    ascending index order, each set to one."""
    rows, pivots = _rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    z, o = m.field.zero(), m.field.one()
    cols = []
    for j in free:
        v = [z] * m.cols
        v[j] = o
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][j]
        cols.append(v)
    data = [[cols[k][i] for k in range(len(cols))] for i in range(m.cols)]
    return Mat(m.cols, len(free), data, m.field)


def mat_solve(m: Mat, b: Mat) -> Optional[Mat]:
    """Solve m x = b columnwise; None if any column is inconsistent.

    Deterministic: the echelon particular solution with free variables
    set to zero.
    """
    if m.rows != b.rows:
        raise InputError("solve shape mismatch")
    aug = hstack([m, b]) if m.cols or b.cols else Mat.zeros(m.rows, 0, m.field)
    rows, pivots = _rref(aug)
    # a pivot beyond m's columns marks an inconsistent system
    if any(pc >= m.cols for pc in pivots):
        return None
    z = m.field.zero()
    out = [[z] * b.cols for _ in range(m.cols)]
    for r, pc in enumerate(pivots):
        for j in range(b.cols):
            out[pc][j] = rows[r][m.cols + j]
    return Mat(m.cols, b.cols, out, m.field)


def solve(m: Mat, b) -> Optional[Mat]:
    """Solve m x = b for a single right-hand side column."""
    if not isinstance(b, Mat):
        b = Mat.column(list(b), m.field)
    return mat_solve(m, b)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise InputError("inverse of a non-square matrix")
    res = mat_solve(m, Mat.identity(m.rows, m.field))
    if res is None or rank(m) != m.rows:
        raise InputError("matrix is singular")
    return res


class _RowSpace:
    """Incremental row-space tracker used for ranks and greedy complements."""

    def __init__(self, field):
        self.field = field
        self.rows = []  # reduced rows, each with a recorded pivot index
        self.pivots = []

    def add(self, vec: Iterable) -> bool:
        """Reduce vec against the space; absorb it if independent.

        Returns True when the rank increased.
        """
        v = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            f = v[pc]
            if f:
                for c in range(len(v)):
                    if row[c]:
                        v[c] = v[c] - f * row[c]
        pc = next((c for c, x in enumerate(v) if x), None)
        if pc is None:
            return False
        pv = v[pc]
        if pv != self.field.one():
            v = [x / pv for x in v]
        self.rows.append(v)
        self.pivots.append(pc)
        return True


def image_complement(span: Mat, ambient_dim: int) -> Mat:
    """Standard coordinate vectors extending im(span) to the full space.

    Greedy: scan e_1, e_2, ... in ascending order, keeping each vector
    that enlarges the span.
    """
    if span.rows != ambient_dim:
        raise InputError("span rows must equal the ambient dimension")
    space = _RowSpace(span.field)
    for j in range(span.cols):
        space.add(span.data[i][j] for i in range(span.rows))
    z, o = span.field.zero(), span.field.one()
    chosen = []
    for k in range(ambient_dim):
        if len(space.pivots) == ambient_dim:
            break
        e = [z] * ambient_dim
        e[k] = o
        if space.add(e):
            chosen.append(k)
    data = [[o if i == k else z for k in chosen] for i in range(ambient_dim)]
    return Mat(ambient_dim, len(chosen), data, span.field)
