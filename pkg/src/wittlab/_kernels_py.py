"""Pure numpy versions of the prime-field kernels.

Signatures match the compiled module ``wittlab._kernels`` exactly.  All
matrices are 2-d int64 arrays with entries in [0, p).
"""

import numpy as np


def matmul_modp(A, B, p):
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def rref_modp(A, p):
    """Reduced row echelon form; returns (R, pivot column list)."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_modp(A, p):
    return len(rref_modp(A, p)[1])


def charpoly_modp(A, p):
    """Coefficients of det(tI - A), constant term first (Berkowitz)."""
    A = np.asarray(A, dtype=np.int64) % p
    d = A.shape[0]
    vec = np.ones(1, dtype=np.int64)
    for k in range(d - 1, -1, -1):
        s = d - k
        diags = np.zeros(s + 1, dtype=np.int64)
        diags[0] = 1
        diags[1] = (-A[k, k]) % p
        R = A[k, k + 1:]
        w = A[k + 1:, k].copy()
        Asub = A[k + 1:, k + 1:]
        for j in range(s - 1):
            diags[j + 2] = (-(R @ w)) % p
            w = (Asub @ w) % p
        new = np.zeros(s + 1, dtype=np.int64)
        for j in range(s):
            new[j:j + s + 1 - j] += diags[: s + 1 - j] * vec[j]
        vec = new % p
    return vec[::-1].copy()


def charpoly_multidual_modp(A0, A1, p):
    """Berkowitz over F_p[e_1..e_K]/(e_i e_j).

    ``A0`` is (d, d), ``A1`` is (d, d, K); the matrix is A0 + sum_k e_k A1[..., k].
    Returns (c0, c1) with c0 of shape (d+1,) and c1 of shape (d+1, K), constant
    term first.
    """
    A0 = np.asarray(A0, dtype=np.int64) % p
    A1 = np.asarray(A1, dtype=np.int64) % p
    d = A0.shape[0]
    K = A1.shape[2]
    v0 = np.ones(1, dtype=np.int64)
    v1 = np.zeros((1, K), dtype=np.int64)
    for k in range(d - 1, -1, -1):
        s = d - k
        g0 = np.zeros(s + 1, dtype=np.int64)
        g1 = np.zeros((s + 1, K), dtype=np.int64)
        g0[0] = 1
        g0[1] = (-A0[k, k]) % p
        g1[1] = (-A1[k, k]) % p
        R0, R1 = A0[k, k + 1:], A1[k, k + 1:]
        w0, w1 = A0[k + 1:, k].copy(), A1[k + 1:, k].copy()
        S0, S1 = A0[k + 1:, k + 1:], A1[k + 1:, k + 1:]
        for j in range(s - 1):
            g0[j + 2] = (-(R0 @ w0)) % p
            g1[j + 2] = (-(R0 @ w1 + w0 @ R1)) % p
            w0, w1 = (S0 @ w0) % p, (S0 @ w1 + np.einsum("abk,b->ak", S1, w0)) % p
        n0 = np.zeros(s + 1, dtype=np.int64)
        n1 = np.zeros((s + 1, K), dtype=np.int64)
        for j in range(s):
            n0[j:] += g0[: s + 1 - j] * v0[j]
            n1[j:] += g0[: s + 1 - j, None] * v1[j] + g1[: s + 1 - j] * v0[j]
        v0, v1 = n0 % p, n1 % p
    return v0[::-1].copy(), v1[::-1].copy()
