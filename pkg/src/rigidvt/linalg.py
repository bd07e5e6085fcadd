"""Exact linear algebra over GF(p), p = 2**61 - 1, vectorised with numpy.

Entries live in ``uint64`` arrays. Products of two 61-bit residues do not fit
in 64 bits, so :func:`mulmod` splits both operands into 31/30-bit halves and
folds the partial products with the Mersenne identity ``2**61 == 1 (mod p)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

P = (1 << 61) - 1
_P = np.uint64(P)
_M31 = np.uint64((1 << 31) - 1)
_M30 = np.uint64((1 << 30) - 1)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S61 = np.uint64(61)


def _fold(x: np.ndarray) -> np.ndarray:
    x = (x & _P) + (x >> _S61)
    x = (x & _P) + (x >> _S61)
    return _reduce_once(x)


def _reduce_once(x: np.ndarray) -> np.ndarray:
    return x - np.where(x >= _P, _P, np.uint64(0))


def mulmod(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    a0, a1 = a & _M31, a >> _S31
    b0, b1 = b & _M31, b >> _S31
    lo = a0 * b0
    mid = a0 * b1 + a1 * b0
    hi = a1 * b1
    total = (hi << np.uint64(1)) + (mid >> _S30) + ((mid & _M30) << _S31) + lo
    return _fold(total)


def addmod(a, b) -> np.ndarray:
    return _reduce_once(np.asarray(a, dtype=np.uint64) + np.asarray(b, dtype=np.uint64))


def submod(a, b) -> np.ndarray:
    return _reduce_once(np.asarray(a, dtype=np.uint64) + (_P - np.asarray(b, dtype=np.uint64)))


def to_field(values) -> np.ndarray:
    """Reduce arbitrary Python integers (possibly negative) into GF(p)."""
    arr = np.asarray(values, dtype=object)
    return np.vectorize(lambda x: int(x) % P, otypes=[np.uint64])(arr) if arr.size else arr.astype(np.uint64)


def inv(x: int) -> int:
    return pow(int(x), P - 2, P)


def _eliminate(A: np.ndarray, full: bool) -> tuple[np.ndarray, list[int]]:
    """Row-reduce a copy of ``A``. With ``full`` the result is in reduced row
    echelon form; otherwise only forward elimination is done."""
    A = np.array(A, dtype=np.uint64, copy=True)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r, c:] = mulmod(A[r, c:], np.uint64(inv(A[r, c])))
        targets = r + 1 + np.flatnonzero(A[r + 1 :, c])
        if full and r:
            targets = np.concatenate([np.flatnonzero(A[:r, c]), targets])
        if targets.size:
            factors = A[targets, c][:, None]
            A[np.ix_(targets, np.arange(c, cols))] = submod(
                A[targets, c:], mulmod(factors, A[r, c:][None, :])
            )
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(A: np.ndarray) -> int:
    A = np.asarray(A, dtype=np.uint64)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(_eliminate(A, full=False)[1])


def rref_mod_p(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    return _eliminate(np.asarray(A, dtype=np.uint64), full=True)


def nullspace_mod_p(A: np.ndarray) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` as the rows of the returned array."""
    A = np.asarray(A, dtype=np.uint64)
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.uint64)
    R, pivots = rref_mod_p(A)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (P - int(R[r, f])) % P
    return basis


def left_kernel_mod_p(A: np.ndarray) -> np.ndarray:
    """Basis of ``{y : y A = 0}`` as rows."""
    return nullspace_mod_p(np.asarray(A, dtype=np.uint64).T)


def matmul_mod_p(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.uint64)
    B = np.asarray(B, dtype=np.uint64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.uint64)
    for k in range(A.shape[1]):
        out = addmod(out, mulmod(A[:, k][:, None], B[k, :][None, :]))
    return out


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination (small inputs)."""
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(rank + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank
