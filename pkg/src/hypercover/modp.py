"""Dense linear algebra over Z_p for small primes."""

from __future__ import annotations

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` mod ``p`` and its pivot columns.

    Entries stay below p, so int64 products never overflow for p < 3 * 10^9.
    """
    M = np.array(A, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: np.ndarray, p: int) -> int:
    return len(rref(A, p)[1])


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0}`` mod ``p``, one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, fcol]) % p
    return basis


def solve(A: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``A x = b`` mod ``p`` (free variables set to 0), or None."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    aug = np.concatenate([A % p, (np.asarray(b, dtype=np.int64) % p).reshape(rows, 1)], axis=1)
    R, pivots = rref(aug, p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, cols]
    return x
