"""Pure NumPy implementations of the hot kernels.

Reference implementations; ``_kernels_c`` provides compiled twins with
identical contracts. Keep the two in sync.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

CONVERGED = 0
MAX_ITER = 1
DIVERGED = 2
SINGULAR = 3


def det_shifted(mat, lam):
    """det(mat - lam*I) of a dense complex matrix."""
    a = np.asarray(mat, dtype=np.complex128)
    return complex(np.linalg.det(a - lam * np.eye(a.shape[0])))


def charpoly_coeffs(mat):
    """Monic characteristic polynomial coefficients via the trace recursion.

    Returns c with c[0] = 1 and det(lam*I - A) = sum_i c[i] lam^(n-i).
    """
    a = np.asarray(mat, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.empty(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    work = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        work = a @ (work + coeffs[k - 1] * eye)
        coeffs[k] = -np.trace(work) / k
    return coeffs


def _charpoly_tail(mat):
    return charpoly_coeffs(mat)[1:]


def newton_diagonal(mat, target, x0, max_iter=100, tol=1e-12, blowup=1e3):
    """Newton iteration for the diagonal inverse eigenvalue problem.

    Seeks a diagonal correction x so that mat + diag(x) has characteristic
    polynomial equal to prod(lam - target_i), by driving the non-leading
    charpoly coefficients onto the target's. Returns (x, residual_inf,
    status, iterations).
    """
    a0 = np.asarray(mat, dtype=np.complex128)
    t = np.asarray(target, dtype=np.complex128).reshape(-1)
    n = a0.shape[0]
    if t.shape[0] != n:
        raise ValueError("target length must match matrix dimension")
    x = np.array(x0, dtype=np.complex128).reshape(-1).copy()
    if x.shape[0] != n:
        raise ValueError("start vector length must match matrix dimension")

    resid = np.inf
    for it in range(max_iter):
        a = a0 + np.diag(x)
        r = _charpoly_tail(a) - t
        resid = float(np.max(np.abs(r)))
        if resid < tol:
            return x, resid, CONVERGED, it
        if n == 1:
            # d/dx det(lam - (a+x)) tail is just the constant term -1
            jac = np.array([[-1.0 + 0.0j]])
        else:
            # dc_i/dx_j = -(coeff i-1 of the charpoly of the minor without j)
            jac = np.empty((n, n), dtype=np.complex128)
            for j in range(n):
                keep = [i for i in range(n) if i != j]
                minor = a[np.ix_(keep, keep)]
                jac[:, j] = -charpoly_coeffs(minor)[:n]
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            return x, resid, SINGULAR, it
        if not np.all(np.isfinite(step.view(np.float64))):
            return x, resid, SINGULAR, it
        x = x + step
        if float(np.max(np.abs(x))) > blowup:
            return x, resid, DIVERGED, it
    return x, resid, MAX_ITER, max_iter
