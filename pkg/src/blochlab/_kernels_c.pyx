# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the hot kernels in ``_kernels_py``.

Small dense complex matrices dominate every inner loop of the package, so
per-call overhead matters more than asymptotics; everything here is plain
C loops over contiguous complex128 buffers.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, isfinite

cnp.import_array()

BACKEND_NAME = "compiled"

cdef enum:
    _CONVERGED = 0
    _MAX_ITER = 1
    _DIVERGED = 2
    _SINGULAR = 3

CONVERGED = _CONVERGED
MAX_ITER = _MAX_ITER
DIVERGED = _DIVERGED
SINGULAR = _SINGULAR


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef double complex _lu_det(double complex[:, ::1] a, Py_ssize_t n) noexcept nogil:
    """In-place LU with partial pivoting; returns the determinant."""
    cdef Py_ssize_t i, j, k, piv
    cdef double best, cand
    cdef double complex det = 1.0
    cdef double complex tmp, factor
    for k in range(n):
        piv = k
        best = _abs2(a[k, k])
        for i in range(k + 1, n):
            cand = _abs2(a[i, k])
            if cand > best:
                best = cand
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(k, n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            det = -det
        det = det * a[k, k]
        for i in range(k + 1, n):
            factor = a[i, k] / a[k, k]
            for j in range(k + 1, n):
                a[i, j] = a[i, j] - factor * a[k, j]
    return det


cdef int _lu_solve(double complex[:, ::1] a, double complex[::1] b, Py_ssize_t n) noexcept nogil:
    """Solve a x = b in place (x returned in b). 0 on success, 1 if singular."""
    cdef Py_ssize_t i, j, k, piv
    cdef double best, cand
    cdef double complex tmp, factor
    for k in range(n):
        piv = k
        best = _abs2(a[k, k])
        for i in range(k + 1, n):
            cand = _abs2(a[i, k])
            if cand > best:
                best = cand
                piv = i
        if best == 0.0:
            return 1
        if piv != k:
            for j in range(k, n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            tmp = b[k]
            b[k] = b[piv]
            b[piv] = tmp
        for i in range(k + 1, n):
            factor = a[i, k] / a[k, k]
            for j in range(k + 1, n):
                a[i, j] = a[i, j] - factor * a[k, j]
            b[i] = b[i] - factor * b[k]
    for k in range(n - 1, -1, -1):
        tmp = b[k]
        for j in range(k + 1, n):
            tmp = tmp - a[k, j] * b[j]
        b[k] = tmp / a[k, k]
    return 0


cdef void _charpoly(double complex[:, ::1] a, Py_ssize_t n,
                    double complex[::1] out,
                    double complex[:, ::1] work,
                    double complex[:, ::1] nxt) noexcept nogil:
    """Trace recursion for det(lam I - a); out gets n+1 monic coefficients."""
    cdef Py_ssize_t i, j, k, m
    cdef double complex tr, s
    out[0] = 1.0
    for i in range(n):
        for j in range(n):
            work[i, j] = 0.0
    for k in range(1, n + 1):
        for i in range(n):
            work[i, i] = work[i, i] + out[k - 1]
        tr = 0.0
        for i in range(n):
            for j in range(n):
                s = 0.0
                for m in range(n):
                    s = s + a[i, m] * work[m, j]
                nxt[i, j] = s
            tr = tr + nxt[i, i]
        for i in range(n):
            for j in range(n):
                work[i, j] = nxt[i, j]
        out[k] = -tr / <double>k


def det_shifted(mat, lam):
    """det(mat - lam*I) of a dense complex matrix via pivoted elimination."""
    a = np.array(mat, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex[:, ::1] av = a
    cdef double complex shift = lam
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            av[i, i] = av[i, i] - shift
    return complex(_lu_det(av, n))


def charpoly_coeffs(mat):
    """Monic characteristic polynomial coefficients, same convention as the
    pure backend: c[0] = 1 and det(lam*I - A) = sum_i c[i] lam^(n-i)."""
    a = np.array(mat, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a.shape[0]
    out = np.empty(n + 1, dtype=np.complex128)
    work = np.empty((n, n), dtype=np.complex128)
    nxt = np.empty((n, n), dtype=np.complex128)
    _charpoly(a, n, out, work, nxt)
    return out


def newton_diagonal(mat, target, x0, int max_iter=100, double tol=1e-12,
                    double blowup=1e3):
    """Newton iteration for the diagonal inverse eigenvalue problem.

    Same contract as the pure backend: returns (x, residual_inf, status,
    iterations) where status is one of CONVERGED/MAX_ITER/DIVERGED/SINGULAR.
    """
    # plain copies: inputs may be read-only views, and memoryviews need
    # writable buffers
    a0 = np.array(mat, dtype=np.complex128, order="C")
    t = np.array(target, dtype=np.complex128).reshape(-1).copy()
    cdef Py_ssize_t n = a0.shape[0]
    if t.shape[0] != n:
        raise ValueError("target length must match matrix dimension")
    x = np.array(x0, dtype=np.complex128).reshape(-1).copy()
    if x.shape[0] != n:
        raise ValueError("start vector length must match matrix dimension")

    a = np.empty((n, n), dtype=np.complex128)
    coeffs = np.empty(n + 1, dtype=np.complex128)
    work = np.empty((n, n), dtype=np.complex128)
    nxt = np.empty((n, n), dtype=np.complex128)
    jac = np.empty((n, n), dtype=np.complex128)
    rhs = np.empty(n, dtype=np.complex128)
    mdim = n - 1 if n > 1 else 1
    minor = np.empty((mdim, mdim), dtype=np.complex128)
    mcoeffs = np.empty(mdim + 1, dtype=np.complex128)
    mwork = np.empty((mdim, mdim), dtype=np.complex128)
    mnxt = np.empty((mdim, mdim), dtype=np.complex128)

    cdef double complex[:, ::1] a0v = a0
    cdef double complex[::1] tv = t
    cdef double complex[::1] xv = x
    cdef double complex[:, ::1] av = a
    cdef double complex[::1] cv = coeffs
    cdef double complex[:, ::1] workv = work
    cdef double complex[:, ::1] nxtv = nxt
    cdef double complex[:, ::1] jacv = jac
    cdef double complex[::1] rv = rhs
    cdef double complex[:, ::1] minorv = minor
    cdef double complex[::1] mcv = mcoeffs
    cdef double complex[:, ::1] mworkv = mwork
    cdef double complex[:, ::1] mnxtv = mnxt

    cdef Py_ssize_t it, i, j, ri, ci, rr, cc
    cdef double resid = INFINITY
    cdef double xmax, cand
    cdef int status = _MAX_ITER
    cdef Py_ssize_t iters = max_iter
    cdef bint bad_step

    with nogil:
        for it in range(max_iter):
            for i in range(n):
                for j in range(n):
                    av[i, j] = a0v[i, j]
                av[i, i] = av[i, i] + xv[i]
            _charpoly(av, n, cv, workv, nxtv)
            resid = 0.0
            for i in range(n):
                cand = abs(cv[i + 1] - tv[i])
                if cand > resid:
                    resid = cand
            if resid < tol:
                status = _CONVERGED
                iters = it
                break
            if n == 1:
                jacv[0, 0] = -1.0
            else:
                for j in range(n):
                    rr = 0
                    for ri in range(n):
                        if ri == j:
                            continue
                        cc = 0
                        for ci in range(n):
                            if ci == j:
                                continue
                            minorv[rr, cc] = av[ri, ci]
                            cc = cc + 1
                        rr = rr + 1
                    _charpoly(minorv, n - 1, mcv, mworkv, mnxtv)
                    for i in range(n):
                        jacv[i, j] = -mcv[i]
            for i in range(n):
                rv[i] = tv[i] - cv[i + 1]
            if _lu_solve(jacv, rv, n) != 0:
                status = _SINGULAR
                iters = it
                break
            bad_step = False
            for i in range(n):
                if not (isfinite(rv[i].real) and isfinite(rv[i].imag)):
                    bad_step = True
                    break
            if bad_step:
                status = _SINGULAR
                iters = it
                break
            xmax = 0.0
            for i in range(n):
                xv[i] = xv[i] + rv[i]
                cand = abs(xv[i])
                if cand > xmax:
                    xmax = cand
            if xmax > blowup:
                status = _DIVERGED
                iters = it
                break

    if status == _MAX_ITER:
        iters = max_iter
    return x, resid, status, int(iters)
