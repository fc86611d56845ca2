"""Batched dense symmetric eigensolver.

Cyclic-sweep Jacobi rotations: every matrix walks the (p, q) pivot schedule
p < q in row order with its own rotation angle, sweeping until all
off-diagonal magnitudes fall below ``tol_factor`` times the matrix max-norm.
Two interchangeable backends share the same arithmetic: a numba-compiled
per-matrix kernel (used when numba imports cleanly; the survey needs its
throughput) and a pure-numpy path vectorized over the batch.
"""

from __future__ import annotations

import numpy as np

SWEEP_TOL_FACTOR = 1e-13
MAX_SWEEPS = 60


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted without meeting the off-diagonal threshold."""


def jacobi_eigenvalues(mats: np.ndarray, tol_factor: float = SWEEP_TOL_FACTOR,
                       max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a (b, n, n) stack of symmetric matrices, sorted descending."""
    A = np.array(mats, dtype=np.float64, copy=True)
    if A.ndim == 2:
        A = A[None, :, :]
    b, n, n2 = A.shape
    if n != n2:
        raise ValueError("matrices must be square")
    if n == 1:
        return A[:, :, 0].copy()
    kern = _numba_kernel()
    if kern is not None:
        out = np.empty((b, n), dtype=np.float64)
        ok = kern(A, out, tol_factor, max_sweeps)
        if not ok:
            raise ConvergenceError(f"no convergence after {max_sweeps} sweeps")
        return out
    return _jacobi_numpy(A, tol_factor, max_sweeps)


# ---------------------------------------------------------------------------
# numba backend

_KERNEL = None
_KERNEL_TRIED = False


def _numba_kernel():
    global _KERNEL, _KERNEL_TRIED
    if _KERNEL_TRIED:
        return _KERNEL
    _KERNEL_TRIED = True
    try:
        from numba import njit
    except Exception:
        return None

    @njit(cache=True, fastmath=False)
    def kern(A, out, tol_factor, max_sweeps):  # pragma: no cover - compiled
        b, n, _ = A.shape
        for g in range(b):
            M = A[g]
            scale = 0.0
            for i in range(n):
                for j in range(n):
                    v = abs(M[i, j])
                    if v > scale:
                        scale = v
            thresh = tol_factor * max(scale, 1.0)
            converged = False
            for _sweep in range(max_sweeps):
                off = 0.0
                for i in range(n):
                    for j in range(i + 1, n):
                        v = abs(M[i, j])
                        if v > off:
                            off = v
                if off <= thresh:
                    converged = True
                    break
                for p in range(n - 1):
                    for q in range(p + 1, n):
                        apq = M[p, q]
                        if apq == 0.0:
                            continue
                        app = M[p, p]
                        aqq = M[q, q]
                        tau = (aqq - app) / (2.0 * apq)
                        if tau == 0.0:
                            t = 1.0
                        else:
                            sg = 1.0 if tau > 0.0 else -1.0
                            t = sg / (abs(tau) + np.sqrt(tau * tau + 1.0))
                        c = 1.0 / np.sqrt(t * t + 1.0)
                        s = t * c
                        for i in range(n):
                            aip = M[i, p]
                            aiq = M[i, q]
                            M[i, p] = c * aip - s * aiq
                            M[i, q] = s * aip + c * aiq
                        for i in range(n):
                            M[p, i] = M[i, p]
                            M[q, i] = M[i, q]
                        M[p, p] = app - t * apq
                        M[q, q] = aqq + t * apq
                        M[p, q] = 0.0
                        M[q, p] = 0.0
            if not converged:
                return False
            d = np.empty(n)
            for i in range(n):
                d[i] = M[i, i]
            out[g] = -np.sort(-d)
        return True

    _KERNEL = kern
    return _KERNEL


# ---------------------------------------------------------------------------
# numpy backend

def _jacobi_numpy(A: np.ndarray, tol_factor: float, max_sweeps: int) -> np.ndarray:
    b, n, _ = A.shape
    scale = np.abs(A).reshape(b, -1).max(axis=1)
    thresh = tol_factor * np.maximum(scale, 1.0)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.abs(A)[:, off_mask].max(axis=1)
        if np.all(off <= thresh):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(A, p, q)
    else:
        raise ConvergenceError(f"no convergence after {max_sweeps} sweeps")
    eigs = A[:, np.arange(n), np.arange(n)]
    return -np.sort(-eigs, axis=1)


def _rotate(A: np.ndarray, p: int, q: int) -> None:
    apq = A[:, p, q].copy()
    active = apq != 0.0
    if not active.any():
        return
    app = A[:, p, p].copy()
    aqq = A[:, q, q].copy()
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        tau = np.where(active, (aqq - app) / np.where(active, 2.0 * apq, 1.0), 0.0)
        t = np.sign(tau) / (np.abs(tau) + np.sqrt(tau * tau + 1.0))
        t = np.where(tau == 0.0, np.where(active, 1.0, 0.0), t)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = A[:, :, p].copy()
    col_q = A[:, :, q].copy()
    new_p = c[:, None] * col_p - s[:, None] * col_q
    new_q = s[:, None] * col_p + c[:, None] * col_q
    A[:, :, p] = new_p
    A[:, :, q] = new_q
    A[:, p, :] = new_p
    A[:, q, :] = new_q
    A[:, p, p] = app - t * apq
    A[:, q, q] = aqq + t * apq
    A[:, p, q] = 0.0
    A[:, q, p] = 0.0
