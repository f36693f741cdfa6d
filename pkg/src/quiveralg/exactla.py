"""Exact dense linear algebra over the rationals and prime fields.

Everything downstream (module homomorphism spaces, resolutions, derived
Hom complexes) reduces to the three kernels in this module: ``rref``,
``kernel`` and ``solve``.  Arithmetic is exact everywhere; no floating
point result is ever returned.  The prime-field path stores entries as
int64 numpy arrays and multiplies through float64 BLAS, which is exact as
long as ``inner_dim * (p-1)**2 < 2**53`` (checked, with an object-dtype
fallback).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["Field", "PrimeField", "RationalField", "GF", "QQ", "Matrix",
           "rref", "kernel", "solve"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond 64 bits of input
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of the two coefficient fields.

    Matrices are plain numpy arrays (int64 mod p, or object-dtype
    Fraction); the wrapper type `Matrix` below is the serialization-facing
    view.  All methods are pure.
    """

    kind: str

    # -- element/array plumbing ------------------------------------------
    def el(self, x):
        raise NotImplementedError

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and bool(np.all(a == b))

    def is_zero(self, a: np.ndarray) -> bool:
        return bool(np.all(a == self.zero))

    def neg(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def smul(self, c, a):
        """Scalar times array."""
        raise NotImplementedError

    def inv_el(self, x):
        raise NotImplementedError

    def rand_el(self, rng):
        raise NotImplementedError

    # -- gaussian elimination --------------------------------------------
    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot column indices."""
        a = a.copy()
        m, n = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.nonzero(a[r:, c])[0]
            if len(nz) == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            a[r] = self.smul(self.inv_el(a[r, c]), a[r])
            col = a[:, c].copy()
            col[r] = self.zero
            if np.any(col != self.zero):
                a = self.sub(a, self._outer(col, a[r]))
                a[:, c] = self.zero
                a[r, c] = self.one
            pivots.append(c)
            r += 1
        return a, pivots

    def _outer(self, col, row):
        raise NotImplementedError

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a: np.ndarray) -> np.ndarray:
        """Basis of {v : a @ v = 0}, one basis vector per row."""
        m, n = a.shape
        if n == 0:
            return self.zeros(0, 0)
        if m == 0:
            return self.eye(n)
        r, pivots = self.rref(a)
        free = [c for c in range(n) if c not in pivots]
        out = self.zeros(len(free), n)
        for i, f in enumerate(free):
            out[i, f] = self.one
            for j, pc in enumerate(pivots):
                out[i, pc] = self.neg(r[j, f])
        return out

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        """One particular solution of a @ x = b (column-wise), or None."""
        if a.shape[0] != b.shape[0]:
            raise ValueError(
                f"dimension mismatch: {a.shape[0]} rows vs {b.shape[0]} rows")
        m, n = a.shape
        k = b.shape[1]
        if k == 0:
            return self.zeros(n, 0)
        if n == 0:
            return None if not self.is_zero(b) else self.zeros(0, k)
        aug = self.zeros(m, n + k)
        aug[:, :n] = a
        aug[:, n:] = b
        r, pivots = self.rref(aug)
        if any(p >= n for p in pivots):
            return None
        x = self.zeros(n, k)
        for i, pc in enumerate(pivots):
            x[pc, :] = r[i, n:]
        return x

    def row_space(self, a: np.ndarray) -> np.ndarray:
        """Row-reduced basis of the row space (rref with zero rows dropped)."""
        r, pivots = self.rref(a)
        return r[: len(pivots)]

    def in_row_space(self, a: np.ndarray, v: np.ndarray) -> bool:
        stacked = np.concatenate([a, v.reshape(1, -1)], axis=0)
        return self.rank(stacked) == self.rank(a)


class PrimeField(Field):
    kind = "GF"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = np.int64(0)
        self.one = np.int64(1)
        # float64 matmul stays exact while inner*(p-1)^2 < 2^53
        self._max_inner = int(2**53 // (p - 1) ** 2) if p > 1 else 2**53

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def el(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return np.int64(x.numerator * pow(x.denominator, -1, self.p) % self.p)
        return np.int64(int(x) % self.p)

    def array(self, data):
        return np.array(data, dtype=np.int64) % self.p

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, a, b):
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if a.shape[1] <= self._max_inner:
            c = np.rint(a.astype(np.float64) @ b.astype(np.float64))
            return c.astype(np.int64) % self.p
        # exact fallback when the float64 bound is exceeded
        c = a.astype(object) @ b.astype(object)
        return (c % self.p).astype(np.int64)

    def neg(self, a):
        return (-a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def smul(self, c, a):
        return (int(c) * a) % self.p

    def inv_el(self, x):
        return np.int64(pow(int(x), self.p - 2, self.p))

    def rand_el(self, rng):
        return np.int64(rng.randrange(self.p))

    def _outer(self, col, row):
        return np.outer(col, row) % self.p

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        # fused mod-p elimination touching only rows with a nonzero entry
        # in the pivot column
        a = a.copy()
        p = self.p
        m, n = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(n):
            if r == m:
                break
            nz = np.nonzero(a[r:, c])[0]
            if len(nz) == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            inv = pow(int(a[r, c]), p - 2, p)
            a[r] = (a[r] * inv) % p
            rows = np.nonzero(a[:, c])[0]
            rows = rows[rows != r]
            if len(rows):
                a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
            pivots.append(c)
            r += 1
        return a, pivots


class RationalField(Field):
    kind = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def el(self, x):
        return Fraction(x)

    def array(self, data):
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        for i, v in enumerate(flat):
            flat[i] = Fraction(v)
        return flat.reshape(a.shape)

    def zeros(self, rows, cols):
        a = np.empty((rows, cols), dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n):
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def matmul(self, a, b):
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return a @ b

    def neg(self, a):
        return -a

    def add(self, a, b):
        return a + b

    def smul(self, c, a):
        return c * a

    def inv_el(self, x):
        return 1 / x

    def rand_el(self, rng):
        return Fraction(rng.randrange(-9, 10))

    def _outer(self, col, row):
        return np.outer(col, row)


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


DEFAULT_FIELD = GF(32003)


@dataclass(frozen=True)
class Matrix:
    """Serialization-facing dense matrix: row-major entries over a field."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_array(cls, a: np.ndarray) -> "Matrix":
        return cls(a.shape[0], a.shape[1], tuple(a.reshape(-1).tolist()))

    def to_array(self, field: Field) -> np.ndarray:
        if self.rows * self.cols == 0:
            return field.zeros(self.rows, self.cols)
        return field.array(
            [list(self.entries[i * self.cols:(i + 1) * self.cols])
             for i in range(self.rows)])


def rref(m: Matrix, field: Field = DEFAULT_FIELD):
    """RREF of ``m``: (reduced matrix, pivot columns, rank)."""
    r, pivots = field.rref(m.to_array(field))
    return Matrix.from_array(r), pivots, len(pivots)


def kernel(m: Matrix, field: Field = DEFAULT_FIELD) -> Matrix:
    """Null-space basis of ``m``, one basis vector per row."""
    return Matrix.from_array(field.kernel(m.to_array(field)))


def solve(m: Matrix, b: Matrix, field: Field = DEFAULT_FIELD):
    """A particular solution of m@x = b per column of b, or None."""
    x = field.solve(m.to_array(field), b.to_array(field))
    return None if x is None else Matrix.from_array(x)


class EchelonState:
    """Incremental row-echelon tracker: feed rows, learn which extend the
    span; reduction against accumulated pivots is a vector operation."""

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        f = self.field
        v = vec.copy()
        for r, c in zip(self.rows, self.pivots):
            coef = v[c]
            if coef != f.zero:
                v = f.sub(v, f.smul(coef, r))
        return v

    def add(self, vec: np.ndarray) -> bool:
        """Reduce and absorb; True iff the row enlarged the span."""
        f = self.field
        v = self.reduce(vec)
        nz = np.nonzero(v != f.zero)[0]
        if len(nz) == 0:
            return False
        c = int(nz[0])
        v = f.smul(f.inv_el(v[c]), v)
        self.rows.append(v)
        self.pivots.append(c)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)
