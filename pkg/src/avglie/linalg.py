"""Dense exact matrices and tensors with Gaussian elimination.

Elimination uses the leftmost-nonzero pivot with immediate full reduction
(RREF); no pivot strategy beyond first-hit, so every result is
deterministic.  Kernel bases are the canonical RREF free-variable bases.
"""

from __future__ import annotations

from math import prod

from .errors import DimensionMismatch, FieldTooLarge
from .fields import Field


# ---------------------------------------------------------------------------
# Vectors: plain tuples of scalars, field supplied by the caller.


def vec_zero(fld, n):
    return (fld.zero,) * n


def vec_basis(fld, n, i):
    return tuple(fld.one if k == i else fld.zero for k in range(n))


def vec_add(fld, u, v):
    return tuple(fld.add(a, b) for a, b in zip(u, v, strict=True))


def vec_sub(fld, u, v):
    return tuple(fld.sub(a, b) for a, b in zip(u, v, strict=True))


def vec_neg(fld, u):
    return tuple(fld.neg(a) for a in u)


def vec_scale(fld, c, u):
    return tuple(fld.mul(c, a) for a in u)


def vec_is_zero(fld, u):
    return all(a == fld.zero for a in u)


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, cols: int | None = None):
        rows = tuple(tuple(field.coerce(x) for x in row) for row in entries)
        self.field = field
        self.rows = len(rows)
        if rows:
            self.cols = len(rows[0])
        else:
            self.cols = 0 if cols is None else cols
        if any(len(r) != self.cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.entries = rows

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(field, rows, cols):
        return Matrix(field, [[field.zero] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(field, n):
        return Matrix(
            field,
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
        )

    @staticmethod
    def from_cols(field, cols, rows_hint=None):
        cols = list(cols)
        if not cols:
            return Matrix.zero(field, rows_hint or 0, 0)
        nrows = len(cols[0])
        return Matrix(
            field,
            [[col[r] for col in cols] for r in range(nrows)],
            cols=len(cols),
        )

    @staticmethod
    def from_flat(field, rows, cols, flat):
        flat = list(flat)
        if len(flat) != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} entries, got {len(flat)}"
            )
        return Matrix(
            field, [flat[r * cols : (r + 1) * cols] for r in range(rows)], cols=cols
        )

    # -- access -------------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, r):
        return self.entries[r]

    def col(self, c):
        return tuple(self.entries[r][c] for r in range(self.rows))

    def flat(self):
        return tuple(x for row in self.entries for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries == other.entries
            and self.rows == other.rows
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in row) for row in self.entries
        )
        return f"Matrix({self.field}, {self.rows}x{self.cols}: {body})"

    def is_zero(self):
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_field(self, other):
        if self.field != other.field:
            raise DimensionMismatch("field mismatch")

    def add(self, other):
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in add")
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            cols=self.cols,
        )

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        f = self.field
        return Matrix(f, [[f.neg(x) for x in row] for row in self.entries], cols=self.cols)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return Matrix(f, [[f.mul(c, x) for x in row] for row in self.entries], cols=self.cols)

    def mul(self, other):
        self._check_same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        f = self.field
        out = []
        for r in range(self.rows):
            row = []
            for c in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(self.entries[r][k], other.entries[k][c]))
                row.append(acc)
            out.append(row)
        return Matrix(f, out, cols=other.cols)

    def matvec(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch(f"matvec: {self.cols} cols vs vector of {len(v)}")
        f = self.field
        out = []
        for r in range(self.rows):
            acc = f.zero
            for k in range(self.cols):
                acc = f.add(acc, f.mul(self.entries[r][k], v[k]))
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Matrix(
            self.field,
            [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
        )

    def hstack(self, other):
        self._check_same_field(other)
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(
            self.field,
            [list(r1) + list(r2) for r1, r2 in zip(self.entries, other.entries)],
            cols=self.cols + other.cols,
        )

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Reduced row-echelon form.  Returns (R, pivot_columns)."""
        f = self.field
        m = [list(row) for row in self.entries]
        nr, nc = self.rows, self.cols
        pivots = []
        pr = 0
        for pc in range(nc):
            hit = None
            for r in range(pr, nr):
                if m[r][pc] != f.zero:
                    hit = r
                    break
            if hit is None:
                continue
            m[pr], m[hit] = m[hit], m[pr]
            inv = f.inv(m[pr][pc])
            m[pr] = [f.mul(inv, x) for x in m[pr]]
            for r in range(nr):
                if r != pr and m[r][pc] != f.zero:
                    c0 = m[r][pc]
                    m[r] = [f.sub(x, f.mul(c0, y)) for x, y in zip(m[r], m[pr])]
            pivots.append(pc)
            pr += 1
            if pr == nr:
                break
        return Matrix(f, m, cols=nc), tuple(pivots)

    def det(self):
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of non-square matrix")
        f = self.field
        n = self.rows
        m = [list(row) for row in self.entries]
        det = f.one
        for c in range(n):
            hit = None
            for r in range(c, n):
                if m[r][c] != f.zero:
                    hit = r
                    break
            if hit is None:
                return f.zero
            if hit != c:
                m[c], m[hit] = m[hit], m[c]
                det = f.neg(det)
            det = f.mul(det, m[c][c])
            inv = f.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c] != f.zero:
                    c0 = f.mul(inv, m[r][c])
                    m[r] = [f.sub(x, f.mul(c0, y)) for x, y in zip(m[r], m[c])]
        return det

    def inverse(self):
        """Inverse matrix, or None if singular."""
        if self.rows != self.cols:
            return None
        aug = self.hstack(Matrix.identity(self.field, self.rows))
        red, pivots = aug.rref()
        if len(pivots) < self.rows or any(p >= self.rows for p in pivots):
            return None
        return Matrix(
            self.field, [row[self.rows :] for row in red.entries], cols=self.rows
        )


def rank(m: Matrix) -> int:
    return len(m.rref()[1])


def kernel_basis(m: Matrix):
    """Canonical right-kernel basis from the RREF free-variable construction.

    One vector per free column, in column order: the free variable is 1,
    other free variables 0, pivot variables read off the reduced rows.
    """
    f = m.field
    red, pivots = m.rref()
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(red.entries[r][fc])
        basis.append(tuple(v))
    return basis


def solve_affine(m: Matrix, b):
    """Solve m x = b exactly.

    Returns None when b is outside the column space, else a pair
    (particular, kernel) where the particular solution has all free
    variables set to 0 and kernel is kernel_basis(m).
    """
    if len(b) != m.rows:
        raise DimensionMismatch("solve_affine: rhs length mismatch")
    f = m.field
    aug = m.hstack(Matrix.from_cols(f, [tuple(b)], rows_hint=m.rows))
    red, pivots = aug.rref()
    if any(p == m.cols for p in pivots):
        return None
    x = [f.zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.entries[r][m.cols]
    return tuple(x), kernel_basis(m)


def enumerate_linear_maps(domain_dim, codomain_dim, field, start=0, stop=None):
    """All matrices of a linear map F_p^domain -> F_p^codomain.

    Yields every codomain x domain matrix exactly once, ordered
    lexicographically by the row-major entry tuple.  The [start, stop)
    window makes the stream restartable and partitionable; the union of
    disjoint windows reproduces the full run.
    """
    if not field.finite:
        raise FieldTooLarge("cannot enumerate linear maps over an infinite field")
    p = field.p
    n = domain_dim * codomain_dim
    total = p**n
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise ValueError(f"window [{start}, {stop}) outside [0, {total})")
    for idx in range(start, stop):
        digits = []
        k = idx
        for _ in range(n):
            digits.append(k % p)
            k //= p
        digits.reverse()
        yield Matrix.from_flat(field, codomain_dim, domain_dim, digits)


class Tensor:
    """Immutable dense tensor, row-major with the last index fastest."""

    __slots__ = ("field", "shape", "entries", "_strides")

    def __init__(self, field: Field, shape, entries):
        self.field = field
        self.shape = tuple(shape)
        ent = tuple(field.coerce(x) for x in entries)
        if len(ent) != prod(self.shape, start=1):
            raise DimensionMismatch(
                f"tensor shape {self.shape} wants {prod(self.shape, start=1)} entries,"
                f" got {len(ent)}"
            )
        self.entries = ent
        strides = []
        acc = 1
        for d in reversed(self.shape):
            strides.append(acc)
            acc *= d
        self._strides = tuple(reversed(strides))

    @staticmethod
    def zero(field, shape):
        return Tensor(field, shape, [field.zero] * prod(shape, start=1))

    @staticmethod
    def build(field, shape, fn):
        """Fill entry (i1, ..., ik) with fn(i1, ..., ik)."""
        idxs = [()]
        for d in shape:
            idxs = [t + (i,) for t in idxs for i in range(d)]
        return Tensor(field, shape, [fn(*t) for t in idxs])

    def get(self, *idx):
        if len(idx) != len(self.shape):
            raise DimensionMismatch("tensor index arity mismatch")
        off = sum(i * s for i, s in zip(idx, self._strides))
        return self.entries[off]

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.field == other.field
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def is_zero(self):
        z = self.field.zero
        return all(x == z for x in self.entries)

    def __repr__(self):
        return f"Tensor({self.field}, shape={self.shape})"
