"""Dense linear algebra over GF(q) on arrays of element codes.

Matrices act on row vectors (``v -> v @ M``), so the kernel of a map is the
left null space of its matrix.
"""

from __future__ import annotations

import numpy as np

from .gf import GF, NotInvertibleError


def matmul(F: GF, A, B) -> np.ndarray:
    """Exact product over F; batched like ``np.matmul``."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.k == 1:
        # float64 keeps BLAS speed and is exact: every partial sum < 2**53
        return np.rint(np.matmul(A.astype(np.float64), B.astype(np.float64))).astype(np.int64) % F.p
    n = A.shape[-1]
    acc = None
    for t in range(n):
        term = F.mul(A[..., :, t, None], B[..., None, t, :])
        acc = term if acc is None else F.add(acc, term)
    return acc


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns (left-to-right pivot order)."""
    R = np.array(M, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F.inv(int(R[r, c])))
        for j in range(rows):
            if j != r and R[j, c]:
                R[j] = F.sub(R[j], F.mul(R[r], R[j, c]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_space(F: GF, M) -> np.ndarray:
    """Canonical basis (nonzero rows of the RREF) of the row space."""
    R, piv = rref(F, M)
    return R[: len(piv)]


def nullspace(F: GF, M) -> np.ndarray:
    """Basis of ``{v : M @ v = 0}`` as rows, in reduced row-echelon form."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(int(R[i, f]))
        basis.append(v)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return row_space(F, np.array(basis))


def left_nullspace(F: GF, M) -> np.ndarray:
    """Basis of ``{v : v @ M = 0}`` as rows."""
    return nullspace(F, np.asarray(M).T)


def inverse(F: GF, M) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(F, np.concatenate([M, identity(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise NotInvertibleError("singular matrix")
    return R[:, n:]


def same_span(F: GF, A, B) -> bool:
    A, B = np.asarray(A), np.asarray(B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return rank(F, A) == rank(F, B) == 0
    ra = row_space(F, A)
    rb = row_space(F, B)
    return ra.shape == rb.shape and np.array_equal(ra, rb)


def expand_to_prime(F: GF, M) -> np.ndarray:
    """Matrix of the same map on GF(p)^(nk), coordinates as coefficient digits.

    Entry ``m`` becomes the k x k block of ``y -> y*m`` in the polynomial
    basis, so applying the expanded matrix to digit vectors is exact.
    """
    M = np.asarray(M, dtype=np.int64)
    if F.k == 1:
        return M
    k = F.k
    basis_codes = F.p ** np.arange(k)
    digit = lambda c: (c[..., None] // basis_codes) % F.p  # noqa: E731
    # block[s, t] = digit t of (x^s * m)
    blocks = digit(F.mul(basis_codes[:, None, None], M[None, :, :]))  # (k, r, c, k)
    r, c = M.shape
    return blocks.transpose(1, 0, 2, 3).reshape(r * k, c * k)


def to_digits(F: GF, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    if F.k == 1:
        return X
    digits = (X[..., None] // (F.p ** np.arange(F.k))) % F.p
    return digits.reshape(*X.shape[:-1], X.shape[-1] * F.k)


def from_digits(F: GF, D) -> np.ndarray:
    D = np.asarray(D, dtype=np.int64)
    if F.k == 1:
        return D
    D = D.reshape(*D.shape[:-1], D.shape[-1] // F.k, F.k)
    return D @ (F.p ** np.arange(F.k))


def apply_many(F: GF, X, M) -> np.ndarray:
    """Rows of ``X`` times ``M`` over F, via the prime-subfield expansion."""
    D = to_digits(F, X)
    E = expand_to_prime(F, M)
    Y = np.rint(D.astype(np.float64) @ E.astype(np.float64)).astype(np.int64) % F.p
    return from_digits(F, Y)
