"""Dense kernels for small vectors and matrices (n <= 16).

determinant        -- LU with partial pivoting
exterior_magnitude -- wedge-product magnitude from the 2x2 minors
orthonormalize     -- modified Gram-Schmidt (two passes)
sym_eigen          -- cyclic Jacobi rotations, eigenvalues ascending

All tolerances are scale-relative (multiplied by the largest absolute
entry) so badly scaled inputs behave the same as unit-scale ones.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, NotSymmetricError, RankDeficientError

__all__ = ["determinant", "exterior_magnitude", "orthonormalize", "sym_eigen"]


def determinant(a) -> float:
    """Determinant by LU factorization with partial pivoting."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return 1.0
    sign = 1.0
    for col in range(n - 1):
        p = col + int(np.argmax(np.abs(a[col:, col])))
        if a[p, col] == 0.0:
            return 0.0
        if p != col:
            a[[col, p]] = a[[p, col]]
            sign = -sign
        for row in range(col + 1, n):
            m = a[row, col] / a[col, col]
            a[row, col + 1:] -= m * a[col, col + 1:]
    det = sign
    for k in range(n):
        det *= a[k, k]
    return float(det)


def exterior_magnitude(u, v) -> float:
    """Magnitude of the wedge product u ^ v: sqrt of the sum of squared 2x2 minors.

    Equals the area of the parallelogram spanned by u and v; cross-checked in
    tests against the Lagrange identity |u|^2 |v|^2 - <u,v>^2.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.ndim != 1 or v.ndim != 1 or u.shape != v.shape:
        raise DimensionMismatchError(f"expected two vectors of equal length, got {u.shape} and {v.shape}")
    n = u.shape[0]
    if n < 2:
        raise DimensionMismatchError("wedge magnitude needs dimension >= 2")
    total = 0.0
    for i in range(n - 1):
        for j in range(i + 1, n):
            minor = u[i] * v[j] - u[j] * v[i]
            total += minor * minor
    return math.sqrt(total)


def orthonormalize(vs) -> list[np.ndarray]:
    """Modified Gram-Schmidt with a re-orthogonalization pass.

    Raises RankDeficientError naming the 1-based index of the first input
    vector that collapses into the span of its predecessors (residual norm
    <= 1e-10 relative to the vector's own norm).
    """
    out: list[np.ndarray] = []
    size = None
    for idx, v in enumerate(vs, start=1):
        w = np.array(v, dtype=float)
        if w.ndim != 1:
            raise DimensionMismatchError("expected vectors")
        if size is None:
            size = w.shape[0]
        elif w.shape[0] != size:
            raise DimensionMismatchError("vectors of mixed lengths")
        scale = float(np.linalg.norm(w))
        for _ in range(2):  # twice is enough
            for q in out:
                w = w - float(np.dot(q, w)) * q
        residual = float(np.linalg.norm(w))
        if residual <= 1e-10 * (scale if scale > 0.0 else 1.0):
            raise RankDeficientError(idx)
        out.append(w / residual)
    return out


def sym_eigen(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by the cyclic Jacobi method.

    Returns (eigenvalues ascending, matrix whose COLUMNS are the matching
    eigenvectors).  Sweeps run until the off-diagonal Frobenius mass falls
    below 1e-14 * maxAbs(a).
    """
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    k = a.shape[0]
    if k == 0:
        return np.empty(0), np.empty((0, 0))
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.zeros(k), np.eye(k)
    if float(np.max(np.abs(a - a.T))) > 1e-12 * scale:
        raise NotSymmetricError("matrix is not symmetric within 1e-12 relative tolerance")
    a = 0.5 * (a + a.T)  # fold roundoff asymmetry
    vecs = np.eye(k)
    tol = 1e-14 * scale
    for _sweep in range(100):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2) * 2.0))
        if off <= tol:
            break
        for p in range(k - 1):
            for q in range(p + 1, k):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-36 * abs(diff):
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = 1.0 / (abs(theta) + math.sqrt(1.0 + theta * theta))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # similarity rotation in the (p,q) plane, columns then rows
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                vp = vecs[:, p].copy()
                vq = vecs[:, q].copy()
                vecs[:, p] = c * vp - s * vq
                vecs[:, q] = s * vp + c * vq
    eigvals = np.diag(a).copy()
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], vecs[:, order]
