"""Exact row reduction, rank and kernel computation over GF(p) and Q.

The GF(p) backend is the workhorse: dense int64 matrices reduced by a blocked
Gauss-Jordan elimination whose bulk work is exact mod-p matrix products.  A
product of two residues below 2**32 is computed by 16-bit limb splitting and
float64 BLAS matmuls; every intermediate stays below 2**53, so the float path
is exact.  This requires p**2 < 2**63 (true for both supported primes).

The rationals backend is a textbook Fraction elimination, used for
characteristic-zero certification on small instances.

Reduced row echelon form of a row space is unique, so every basis computed
here is canonical: recomputation yields identical matrices.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import Field, PrimeField


class LinAlgError(ValueError):
    pass


def matmul_modp(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact (A @ B) mod p for int64 matrices with entries in [0, p).

    Limb-split BLAS: exact only while 2 * k * (2**16-1)**2 < 2**53, i.e. inner
    dimension k < 2**20; matrices here are far smaller.
    """
    if A.shape[1] != B.shape[0]:
        raise LinAlgError("matmul shape mismatch")
    m, k = A.shape
    n = B.shape[1]
    if m == 0 or n == 0 or k == 0:
        return np.zeros((m, n), dtype=np.int64)
    af = A.astype(np.float64)
    bf = B.astype(np.float64)
    a_hi = np.floor(af / 65536.0)
    a_lo = af - a_hi * 65536.0
    b_hi = np.floor(bf / 65536.0)
    b_lo = bf - b_hi * 65536.0
    c_hh = (a_hi @ b_hi).astype(np.int64)
    c_mid = (a_hi @ b_lo + a_lo @ b_hi).astype(np.int64)
    c_ll = (a_lo @ b_lo).astype(np.int64)
    r32 = (1 << 32) % p
    r16 = (1 << 16) % p
    if p <= 1 << 31:
        # (hh%p)*r32 + (mid%p)*r16 + ll stays below 2**63 for p <= 2**31
        return (c_hh % p * r32 + c_mid % p * r16 + c_ll) % p
    out = c_hh % p * r32 % p
    out = (out + c_mid % p * r16) % p
    return (out + c_ll % p) % p


def _leaf_rref(V: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Elementwise Gauss-Jordan on a small row block (destroys V).

    Updates touch columns >= the pivot column only: every row is zero left of
    its own pivot, so nothing to clear there.
    """
    m, n = V.shape
    piv: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(V[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            V[[r, i]] = V[[i, r]]
        a = int(V[r, c])
        if a != 1:
            V[r, c:] = V[r, c:] * pow(a, p - 2, p) % p
        rows = np.nonzero(V[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            V[rows, c:] = (V[rows, c:] - V[rows, c : c + 1] * V[r, c:]) % p
        piv.append(c)
        r += 1
    return V[:r], piv


def _rref_scratch(A: np.ndarray, p: int, leaf: int = 64) -> tuple[np.ndarray, list[int]]:
    """Recursive reduced echelon form; cross-block reduction is pure matmul."""
    m = A.shape[0]
    if m <= leaf:
        return _leaf_rref(A, p)
    half = (m // 2 + leaf - 1) // leaf * leaf
    R1, p1 = _rref_scratch(A[:half], p)
    V = A[half:]
    if p1:
        V = (V - matmul_modp(V[:, p1], R1, p)) % p
    R2, p2 = _rref_scratch(V, p)
    if p2 and R1.shape[0]:
        R1 = (R1 - matmul_modp(R1[:, p2], R2, p)) % p
    if not p2:
        return R1, p1
    if not p1:
        return R2, p2
    piv = p1 + p2
    order = np.argsort(piv, kind="stable")
    R = np.vstack([R1, R2])[order]
    piv.sort()
    return R, piv


def _rref_modp(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p)."""
    return _rref_scratch(A % p, p)


def _rref_fraction(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    work = [list(r) for r in rows]
    m = len(work)
    n = len(work[0]) if m else 0
    piv: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        i = next((k for k in range(r, m) if work[k][c] != 0), None)
        if i is None:
            continue
        work[r], work[i] = work[i], work[r]
        a = work[r][c]
        if a != 1:
            work[r] = [v / a for v in work[r]]
        for k in range(m):
            if k != r and work[k][c] != 0:
                f = work[k][c]
                work[k] = [u - f * v for u, v in zip(work[k], work[r])]
        piv.append(c)
        r += 1
    return work[: len(piv)], piv


class EchelonBasis:
    """Canonical reduced row-echelon basis of a row space."""

    __slots__ = ("field", "ncols", "pivots", "data")

    def __init__(self, field: Field, ncols: int, pivots: tuple[int, ...], data):
        self.field = field
        self.ncols = ncols
        self.pivots = pivots
        self.data = data  # int64 ndarray (prime) or tuple of Fraction tuples

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def row(self, i: int) -> list:
        if self.field.kind == "prime":
            return [int(v) for v in self.data[i]]
        return list(self.data[i])

    def rows(self) -> list[list]:
        return [self.row(i) for i in range(self.dim)]

    def reduce(self, vectors):
        """Residuals of row vectors after elimination against this basis."""
        if self.field.kind == "prime":
            V = _as_matrix_modp(vectors, self.ncols, self.field.p)
            if self.dim == 0 or V.shape[0] == 0:
                return V
            return (V - matmul_modp(V[:, list(self.pivots)], self.data, self.field.p)) % self.field.p
        out = []
        for vec in vectors:
            v = [Fraction(x) for x in vec]
            if len(v) != self.ncols:
                raise LinAlgError("ragged input")
            for j, c in enumerate(self.pivots):
                if v[c] != 0:
                    f = v[c]
                    row = self.data[j]
                    v = [u - f * w for u, w in zip(v, row)]
            out.append(v)
        return out

    def contains_vector(self, vec) -> bool:
        res = self.reduce([vec])
        if self.field.kind == "prime":
            return not res.any()
        return all(x == 0 for x in res[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, EchelonBasis):
            return NotImplemented
        if self.field != other.field or self.ncols != other.ncols or self.pivots != other.pivots:
            return False
        if self.field.kind == "prime":
            return bool(np.array_equal(self.data, other.data))
        return self.data == other.data

    def __repr__(self) -> str:
        return f"EchelonBasis(dim={self.dim}, ncols={self.ncols})"


def _as_matrix_modp(rows, ncols: int | None, p: int) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        A = rows.astype(np.int64, copy=False)
        if A.ndim != 2:
            raise LinAlgError("expected a 2-d matrix")
    else:
        rows = list(rows)
        if not rows:
            return np.zeros((0, ncols or 0), dtype=np.int64)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise LinAlgError("ragged input")
        A = np.array([[int(v) for v in r] for r in rows], dtype=np.int64)
    if ncols is not None and A.shape[1] != ncols and A.shape[0] > 0:
        raise LinAlgError("ragged input")
    return A % p


def rref(rows, field: Field, ncols: int | None = None) -> EchelonBasis:
    """Reduced row-echelon basis of the span of the given rows."""
    if field.kind == "prime":
        A = _as_matrix_modp(rows, ncols, field.p)
        R, piv = _rref_modp(A, field.p)
        return EchelonBasis(field, A.shape[1], tuple(piv), R)
    rows = [list(map(Fraction, r)) for r in rows]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise LinAlgError("ragged input")
    else:
        width = ncols or 0
    R, piv = _rref_fraction(rows) if rows else ([], [])
    return EchelonBasis(field, width, tuple(piv), tuple(tuple(r) for r in R))


def rank(rows, field: Field, ncols: int | None = None) -> int:
    return rref(rows, field, ncols).dim


def kernel(rows, field: Field, ncols: int | None = None) -> EchelonBasis:
    """Canonical basis of the right kernel; dim = ncols - rank."""
    basis = rows if isinstance(rows, EchelonBasis) else rref(rows, field, ncols)
    n = basis.ncols
    piv = list(basis.pivots)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return EchelonBasis(field, n, (), _empty_data(field, n))
    if field.kind == "prime":
        K = np.zeros((len(free), n), dtype=np.int64)
        K[np.arange(len(free)), free] = 1
        if piv:
            K[:, piv] = (-basis.data[:, free].T) % field.p
        R, kpiv = _rref_modp(K, field.p)
        return EchelonBasis(field, n, tuple(kpiv), R)
    K = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for j, c in enumerate(piv):
            v[c] = -basis.data[j][f]
        K.append(v)
    R, kpiv = _rref_fraction(K)
    return EchelonBasis(field, n, tuple(kpiv), tuple(tuple(r) for r in R))


def _empty_data(field: Field, ncols: int):
    if field.kind == "prime":
        return np.zeros((0, ncols), dtype=np.int64)
    return ()


def stack_bases(a: EchelonBasis, extra_rows, field: Field) -> EchelonBasis:
    """RREF of (rows of a) union (extra rows)."""
    if field.kind == "prime":
        B = _as_matrix_modp(extra_rows, a.ncols, field.p)
        return rref(np.vstack([a.data, B]), field)
    rows = [list(r) for r in a.data] + [list(map(Fraction, r)) for r in extra_rows]
    return rref(rows, field, a.ncols)
