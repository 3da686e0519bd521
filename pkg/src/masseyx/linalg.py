"""Gaussian elimination over a FieldSpec on numpy int64 matrices."""

from __future__ import annotations

import numpy as np

from .gf import FieldSpec


def as_matrix(rows, ncols: int) -> np.ndarray:
    """Coerce nested lists to a 2-d int64 matrix with ``ncols`` columns."""
    return np.array(rows, dtype=np.int64).reshape(-1, ncols)


def rref(F: FieldSpec, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns; zero rows are dropped."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = int(A[r, c])
        if piv != 1:
            A[r] = F.scale_array(F.inv(piv), A[r])
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            if F.is_prime_field:
                A = (A - np.outer(col, A[r])) % F.p
            else:
                A = F.add_array(A, F.neg_array(F.mul_array(col[:, None], A[r][None, :])))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, M: np.ndarray) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def kernel(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of ``{v : M @ v == 0}``."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(F, M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg(int(R[i, f]))
    return basis


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.is_prime_field:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = F.add_array(out, F.mul_array(A[:, t : t + 1], B[t : t + 1, :]))
    return out


def vecmat(F: FieldSpec, u, M: np.ndarray) -> np.ndarray:
    return matmul(F, np.asarray(u, dtype=np.int64).reshape(1, -1), M)[0]


def solve_left(F: FieldSpec, A: np.ndarray, b) -> np.ndarray | None:
    """One solution ``u`` of ``u @ A == b``, or None when inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    k, m = A.shape
    if k == 0:
        return np.zeros(0, dtype=np.int64) if not b.any() else None
    # transpose: A^T u^T = b^T; eliminate the augmented system
    aug = np.concatenate([A.T, b.reshape(-1, 1)], axis=1)
    R, pivots = rref(F, aug)
    if k in pivots:
        return None
    u = np.zeros(k, dtype=np.int64)
    for i, pc in enumerate(pivots):
        u[pc] = R[i, k]
    return u


def left_kernel(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    """Basis of ``{u : u @ A == 0}``."""
    return kernel(F, np.asarray(A, dtype=np.int64).T)
