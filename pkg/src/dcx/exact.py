"""Exact dense linear algebra over prime fields and the rationals.

Matrices over GF(p) are stored as int64 numpy arrays with entries in
[0, p); arithmetic reduces mod p after every operation.  Matrices over
the rationals are object arrays of Fraction.  Both backends share the
same vectorized Gauss-Jordan elimination, so every rank, kernel, and
solve below is exact: there is no floating point anywhere in the engine.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

import numpy as np

from .errors import ValidationError

# Keeps p * p * inner_dim safely inside int64 during np.dot.
_PRIME_LIMIT = 1 << 20


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Coefficient field: GF(p) for a small prime p, or the rationals (p=None)."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValidationError(f"field characteristic must be prime, got {p}")
            if p >= _PRIME_LIMIT:
                raise ValidationError(
                    f"field characteristic must be below {_PRIME_LIMIT}, got {p}"
                )
        self.p = p

    @property
    def is_rational(self):
        return self.p is None

    def elem(self, x):
        """Coerce an int, Fraction, or string like '-3/4' into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValidationError(f"denominator of {x} vanishes mod {self.p}")
            return (
                int(x.numerator)
                * pow(int(x.denominator), self.p - 2, self.p)
                % self.p
            )
        return int(x) % self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def inv(self, x):
        if self.p is None:
            x = Fraction(x)
            if x == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return 1 / x
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return pow(x, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field(None)


def GF(p):
    return Field(p)


class Mat:
    """Dense matrix over a Field.  Treated as immutable after construction."""

    __slots__ = ("field", "a")

    def __init__(self, field, a):
        self.field = field
        self.a = a

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows):
        r = len(rows)
        if r == 0:
            return cls.zeros(field, 0, 0)
        c = len(rows[0])
        for row in rows:
            if len(row) != c:
                raise ValidationError("ragged matrix rows")
        if field.p is None:
            a = np.empty((r, c), dtype=object)
            for i, row in enumerate(rows):
                for j, x in enumerate(row):
                    a[i, j] = field.elem(x)
        else:
            a = np.array(
                [[field.elem(x) for x in row] for row in rows], dtype=np.int64
            ).reshape(r, c)
        return cls(field, a)

    @classmethod
    def zeros(cls, field, r, c):
        if field.p is None:
            a = np.full((r, c), Fraction(0), dtype=object)
        else:
            a = np.zeros((r, c), dtype=np.int64)
        return cls(field, a)

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        one = field.one()
        for i in range(n):
            m.a[i, i] = one
        return m

    @classmethod
    def column(cls, field, entries):
        return cls.from_rows(field, [[x] for x in entries])

    @classmethod
    def hcat(cls, mats):
        mats = list(mats)
        if not mats:
            raise ValidationError("hcat of no matrices")
        f = mats[0].field
        r = mats[0].rows
        for m in mats[1:]:
            if m.field != f or m.rows != r:
                raise ValidationError("hcat shape or field mismatch")
        return cls(f, np.concatenate([m.a for m in mats], axis=1))

    @classmethod
    def vcat(cls, mats):
        mats = list(mats)
        if not mats:
            raise ValidationError("vcat of no matrices")
        f = mats[0].field
        c = mats[0].cols
        for m in mats[1:]:
            if m.field != f or m.cols != c:
                raise ValidationError("vcat shape or field mismatch")
        return cls(f, np.concatenate([m.a for m in mats], axis=0))

    @classmethod
    def block(cls, field, grid, row_dims=None, col_dims=None):
        """Assemble a block matrix from a grid of Mat-or-None entries.

        None means a zero block; its size is inferred from siblings in the
        same grid row and column, or taken from row_dims/col_dims.
        """
        nr = len(grid)
        nc = len(grid[0]) if nr else 0
        for row in grid:
            if len(row) != nc:
                raise ValidationError("ragged block grid")
        rdims = list(row_dims) if row_dims is not None else [None] * nr
        cdims = list(col_dims) if col_dims is not None else [None] * nc
        for i in range(nr):
            for j in range(nc):
                b = grid[i][j]
                if b is None:
                    continue
                if rdims[i] is None:
                    rdims[i] = b.rows
                elif rdims[i] != b.rows:
                    raise ValidationError(f"block row {i} has inconsistent heights")
                if cdims[j] is None:
                    cdims[j] = b.cols
                elif cdims[j] != b.cols:
                    raise ValidationError(f"block column {j} has inconsistent widths")
        if any(d is None for d in rdims) or any(d is None for d in cdims):
            raise ValidationError("cannot infer all block sizes; pass row_dims/col_dims")
        out = cls.zeros(field, sum(rdims), sum(cdims))
        roff = 0
        for i in range(nr):
            coff = 0
            for j in range(nc):
                b = grid[i][j]
                if b is not None:
                    out.a[roff : roff + rdims[i], coff : coff + cdims[j]] = b.a
                coff += cdims[j]
            roff += rdims[i]
        return out

    # -- shape and access ---------------------------------------------

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def entry(self, i, j):
        v = self.a[i, j]
        return int(v) if self.field.p is not None else v

    def to_rows(self):
        if self.field.p is None:
            return [[self.a[i, j] for j in range(self.cols)] for i in range(self.rows)]
        return [[int(x) for x in row] for row in self.a]

    def col(self, j):
        return Mat(self.field, self.a[:, j : j + 1].copy())

    def cols_at(self, idxs):
        return Mat(self.field, self.a[:, list(idxs)].copy())

    def rows_at(self, idxs):
        return Mat(self.field, self.a[list(idxs), :].copy())

    def submatrix(self, r0, r1, c0, c1):
        return Mat(self.field, self.a[r0:r1, c0:c1].copy())

    def copy(self):
        return Mat(self.field, self.a.copy())

    # -- arithmetic ----------------------------------------------------

    def _check(self, other, same_shape):
        if self.field != other.field:
            raise ValidationError("field mismatch")
        if same_shape and self.a.shape != other.a.shape:
            raise ValidationError(f"shape mismatch {self.a.shape} vs {other.a.shape}")

    def __add__(self, other):
        self._check(other, True)
        a = self.a + other.a
        if self.field.p is not None:
            a %= self.field.p
        return Mat(self.field, a)

    def __sub__(self, other):
        self._check(other, True)
        a = self.a - other.a
        if self.field.p is not None:
            a %= self.field.p
        return Mat(self.field, a)

    def __neg__(self):
        a = -self.a
        if self.field.p is not None:
            a %= self.field.p
        return Mat(self.field, a)

    def __matmul__(self, other):
        self._check(other, False)
        if self.cols != other.rows:
            raise ValidationError(
                f"inner dimension mismatch {self.a.shape} vs {other.a.shape}"
            )
        p = self.field.p
        if p is None:
            return Mat(self.field, np.dot(self.a, other.a))
        # integer matmul has no BLAS kernel; float64 products are exact
        # integers while cols * (p-1)^2 stays under 2^53, which covers
        # every matrix the engine meets at its default field sizes
        if self.cols * (p - 1) * (p - 1) <= (1 << 53):
            prod = self.a.astype(np.float64) @ other.a.astype(np.float64)
            a = np.asarray(prod % p, dtype=np.int64)
        else:
            a = np.asarray(np.dot(self.a, other.a), dtype=np.int64) % p
        return Mat(self.field, a)

    def scale(self, c):
        c = self.field.elem(c)
        a = self.a * c
        if self.field.p is not None:
            a %= self.field.p
        return Mat(self.field, a)

    def transpose(self):
        return Mat(self.field, self.a.T.copy())

    def is_zero(self):
        if self.a.size == 0:
            return True
        return bool((self.a == 0).all())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or self.a.shape != other.a.shape:
            return False
        if self.a.size == 0:
            return True
        return bool((self.a == other.a).all())

    def __hash__(self):
        return hash(self.digest())

    def digest(self):
        """Stable content hash, used for cache keys."""
        h = hashlib.sha256()
        h.update(repr(self.field).encode())
        h.update(f"{self.rows}x{self.cols}".encode())
        if self.field.p is not None:
            h.update(np.ascontiguousarray(self.a).tobytes())
        else:
            h.update("|".join(str(x) for x in self.a.flat).encode())
        return h.hexdigest()

    def __repr__(self):
        return f"Mat({self.field!r}, {self.to_rows()!r})"


# -- elimination -------------------------------------------------------


def rref(M):
    """Reduced row echelon form.  Returns (R, pivots)."""
    A = M.a.copy()
    p = M.field.p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        pv = A[r, c]
        if p is not None:
            if pv != 1:
                A[r, c:] = A[r, c:] * pow(int(pv), p - 2, p) % p
        else:
            if pv != 1:
                # multiply by an exact Fraction inverse: entries may be ints,
                # and int/int division would fall into floating point
                A[r, c:] = A[r, c:] * (Fraction(1) / Fraction(pv))
        idx = np.flatnonzero(A[:, c])
        idx = idx[idx != r]
        if idx.size:
            f = A[idx, c]
            upd = A[idx, c:] - f[:, None] * A[r, c:][None, :]
            if p is not None:
                upd %= p
            A[idx, c:] = upd
        pivots.append(c)
        r += 1
    return Mat(M.field, A), tuple(pivots)


def rank(M):
    if M.a.size == 0:
        return 0
    return len(rref(M)[1])


def kernel_basis(M):
    """Matrix K (cols x nullity) with M @ K = 0; columns form a basis."""
    R, pivots = rref(M)
    pivset = set(pivots)
    free = [c for c in range(M.cols) if c not in pivset]
    K = Mat.zeros(M.field, M.cols, len(free))
    one = M.field.one()
    p = M.field.p
    for j, fc in enumerate(free):
        K.a[fc, j] = one
        for i, pc in enumerate(pivots):
            v = R.a[i, fc]
            K.a[pc, j] = (-v) % p if p is not None else -v
    return K


def solve(A, B):
    """Solve A @ X = B column by column; None if any column is unsolvable."""
    if A.field != B.field or A.rows != B.rows:
        raise ValidationError("solve shape or field mismatch")
    aug = Mat.hcat([A, B])
    R, pivots = rref(aug)
    for pc in pivots:
        if pc >= A.cols:
            return None
    X = Mat.zeros(A.field, A.cols, B.cols)
    for i, pc in enumerate(pivots):
        X.a[pc, :] = R.a[i, A.cols :]
    return X


def column_space_basis(M):
    """(B, pivots): B's columns are the pivot columns of M, a basis of im M."""
    _, pivots = rref(M)
    return M.cols_at(pivots), pivots


def quotient_space(S):
    """Projection and section for k^n / span(columns of S).

    Returns (proj, section): proj is (n-r) x n with kernel exactly the
    column span W of S, section is n x (n-r) with proj @ section = I.
    """
    n = S.rows
    basis, _ = column_space_basis(S)
    r = basis.cols
    aug = Mat.hcat([basis, Mat.identity(S.field, n)])
    _, piv = rref(aug)
    comp = [pc - r for pc in piv[r:]]
    section = Mat.identity(S.field, n).cols_at(comp)
    T = Mat.hcat([basis, section])
    Tinv = solve(T, Mat.identity(S.field, n))
    proj = Tinv.rows_at(range(r, n))
    return proj, section


def coords_in_span(S, V):
    """Express columns of V in the column span of S, or None."""
    return solve(S, V)
