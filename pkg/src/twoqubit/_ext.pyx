# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same algorithms and signatures as ``_pykernels``."""

from libc.math cimport sqrt, fabs, copysign, cos, sin, log2, hypot, M_PI

import numpy as np

NAME = "cython"

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64

DEF GRID = 8
DEF XTOL = 1e-8
DEF DROP = 1e-14
DEF MAXROWS = 4

cdef double INVPHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex cconj(double complex z) nogil:
    return z.real - 1j * z.imag


cdef int _jacobi(double complex A[4][4], double complex V[4][4],
                 double tol, int max_sweeps) nogil:
    cdef int n = 4, p, q, k, sweeps = 0
    cdef double scale = 0.0, thresh, off, r, app, aqq, theta, t, c, s
    cdef double complex e, se, sec, akp, akq, nkp, nkq, vkp, vkq

    for p in range(n):
        for q in range(n):
            scale += cabs2(A[p][q])
    scale = sqrt(scale)
    thresh = tol * (scale if scale > 1.0 else 1.0)

    while sweeps < max_sweeps:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = sqrt(cabs2(A[p][q]))
                if r > off:
                    off = r
        if off <= thresh:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = sqrt(cabs2(A[p][q]))
                if r == 0.0:
                    continue
                e = A[p][q] / r
                app = A[p][p].real
                aqq = A[q][q].real
                theta = (aqq - app) / (2.0 * r)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = s * cconj(e)
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = A[k][p]
                    akq = A[k][q]
                    nkp = c * akp - sec * akq
                    nkq = se * akp + c * akq
                    A[k][p] = nkp
                    A[p][k] = cconj(nkp)
                    A[k][q] = nkq
                    A[q][k] = cconj(nkq)
                A[p][p] = app - t * r
                A[q][q] = aqq + t * r
                A[p][q] = 0.0
                A[q][p] = 0.0
                for k in range(n):
                    vkp = V[k][p]
                    vkq = V[k][q]
                    V[k][p] = c * vkp - sec * vkq
                    V[k][q] = se * vkp + c * vkq
    return sweeps


def jacobi_eigh(a, double tol=JACOBI_TOL, int max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic complex Jacobi eigensolver for a Hermitian 4x4 matrix.

    Returns ``(w, v, sweeps)``; eigenvalues descending (stable on ties),
    eigenvectors as columns of ``v``.
    """
    cdef const double complex[:, ::1] src = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex A[4][4]
    cdef double complex V[4][4]
    cdef int i, j, sweeps
    if src.shape[0] != 4 or src.shape[1] != 4:
        raise ValueError("expected a 4x4 matrix")
    for i in range(4):
        A[i][i] = src[i, i].real
        for j in range(i + 1, 4):
            A[i][j] = src[i, j]
            A[j][i] = cconj(src[i, j])
        for j in range(4):
            V[i][j] = 1.0 if i == j else 0.0
    with nogil:
        sweeps = _jacobi(A, V, tol, max_sweeps)

    diag = [A[i][i].real for i in range(4)]
    order = sorted(range(4), key=lambda k: -diag[k])
    w = np.array([diag[k] for k in order])
    v = np.empty((4, 4), dtype=np.complex128)
    for i in range(4):
        for j in range(4):
            v[i, j] = V[i][order[j]]
    return w, v, sweeps


cdef int _svdvals(double complex A[4][4], double tol, int max_sweeps) nogil:
    cdef int n = 4, p, q, k, sweeps = 0, rotated
    cdef double alpha, beta, r, theta, t, c, s
    cdef double complex gamma, e, se, sec, x, y
    while sweeps < max_sweeps:
        rotated = 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(n):
                    x = A[k][p]
                    y = A[k][q]
                    alpha += cabs2(x)
                    beta += cabs2(y)
                    gamma += cconj(x) * y
                r = sqrt(cabs2(gamma))
                if r == 0.0 or r <= tol * sqrt(alpha * beta):
                    continue
                rotated = 1
                e = gamma / r
                theta = (beta - alpha) / (2.0 * r)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = copysign(1.0, theta) / (fabs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = s * cconj(e)
                for k in range(n):
                    x = A[k][p]
                    y = A[k][q]
                    A[k][p] = c * x - sec * y
                    A[k][q] = se * x + c * y
        if not rotated:
            break
        sweeps += 1
    return sweeps


def jacobi_svdvals(a, double tol=1e-15, int max_sweeps=JACOBI_MAX_SWEEPS):
    """Singular values of a complex 4x4 matrix by one-sided Jacobi.

    Returns ``(sigma, sweeps)`` with ``sigma`` descending.
    """
    cdef const double complex[:, ::1] src = np.ascontiguousarray(a, dtype=np.complex128)
    cdef double complex A[4][4]
    cdef int i, j, sweeps
    cdef double norms[4]
    if src.shape[0] != 4 or src.shape[1] != 4:
        raise ValueError("expected a 4x4 matrix")
    for i in range(4):
        for j in range(4):
            A[i][j] = src[i, j]
    with nogil:
        sweeps = _svdvals(A, tol, max_sweeps)
        for j in range(4):
            norms[j] = 0.0
            for i in range(4):
                norms[j] += cabs2(A[i][j])
            norms[j] = sqrt(norms[j])
    sigma = np.sort(np.array([norms[0], norms[1], norms[2], norms[3]]))[::-1].copy()
    return sigma, sweeps


cdef inline double _entanglement(double c) nogil:
    cdef double s, zm, z
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return 1.0
    s = sqrt(1.0 - c * c)
    zm = c * c / (2.0 * (1.0 + s))
    z = 0.5 * (1.0 + s)
    return -z * log2(z) - zm * log2(zm)


cdef inline double _row_term(double complex u0, double complex u1,
                             double complex *w0, double complex *w1) nogil:
    cdef double complex x0 = u0 * w0[0] + u1 * w1[0]
    cdef double complex x1 = u0 * w0[1] + u1 * w1[1]
    cdef double complex x2 = u0 * w0[2] + u1 * w1[2]
    cdef double complex x3 = u0 * w0[3] + u1 * w1[3]
    cdef double p = cabs2(x0) + cabs2(x1) + cabs2(x2) + cabs2(x3)
    cdef double complex b
    if p < DROP:
        return 0.0
    b = x0 * x3 - x1 * x2
    return p * _entanglement(2.0 * hypot(b.real, b.imag) / p)


cdef inline void _rotate(double complex *uj, double complex *uk, int kind, double t,
                         double complex *a, double complex *b) nogil:
    cdef double c = cos(t), s = sin(t)
    cdef double complex js
    if kind == 0:
        a[0] = c * uj[0] + s * uk[0]
        a[1] = c * uj[1] + s * uk[1]
        b[0] = c * uk[0] - s * uj[0]
        b[1] = c * uk[1] - s * uj[1]
    else:
        js = 1j * s
        a[0] = c * uj[0] + js * uk[0]
        a[1] = c * uj[1] + js * uk[1]
        b[0] = c * uk[0] + js * uj[0]
        b[1] = c * uk[1] + js * uj[1]


cdef inline double _pair_value(double rest, double complex *uj, double complex *uk,
                               int kind, double t, double complex *w0,
                               double complex *w1) nogil:
    cdef double complex a[2]
    cdef double complex b[2]
    _rotate(uj, uk, kind, t, a, b)
    return rest + _row_term(a[0], a[1], w0, w1) + _row_term(b[0], b[1], w0, w1)


cdef int _refine(double complex *w0, double complex *w1, double complex U[MAXROWS][2],
                 int m, int max_sweeps, double rel_tol, double *fout) nogil:
    cdef double terms[MAXROWS]
    cdef double f = 0.0, f_start, rest, step, best_t, best_f, t, ft
    cdef double lo, hi, x1, x2, f1, f2
    cdef double complex a[2]
    cdef double complex b[2]
    cdef int j, k, kind, i, sweeps = 0

    for k in range(m):
        terms[k] = _row_term(U[k][0], U[k][1], w0, w1)
        f += terms[k]
    step = M_PI / GRID

    while sweeps < max_sweeps:
        f_start = f
        sweeps += 1
        for j in range(m - 1):
            for k in range(j + 1, m):
                for kind in range(2):
                    rest = f - terms[j] - terms[k]
                    best_t = 0.0
                    best_f = f
                    for i in range(GRID):
                        t = -M_PI / 2 + i * step
                        if t == 0.0:
                            continue
                        ft = _pair_value(rest, U[j], U[k], kind, t, w0, w1)
                        if ft < best_f:
                            best_t = t
                            best_f = ft
                    lo = best_t - step
                    hi = best_t + step
                    x1 = hi - INVPHI * (hi - lo)
                    x2 = lo + INVPHI * (hi - lo)
                    f1 = _pair_value(rest, U[j], U[k], kind, x1, w0, w1)
                    f2 = _pair_value(rest, U[j], U[k], kind, x2, w0, w1)
                    while hi - lo > XTOL:
                        if f1 < f2:
                            hi = x2
                            x2 = x1
                            f2 = f1
                            x1 = hi - INVPHI * (hi - lo)
                            f1 = _pair_value(rest, U[j], U[k], kind, x1, w0, w1)
                        else:
                            lo = x1
                            x1 = x2
                            f1 = f2
                            x2 = lo + INVPHI * (hi - lo)
                            f2 = _pair_value(rest, U[j], U[k], kind, x2, w0, w1)
                    if f1 < best_f:
                        best_t = x1
                        best_f = f1
                    if f2 < best_f:
                        best_t = x2
                        best_f = f2
                    if best_f < f:
                        _rotate(U[j], U[k], kind, best_t, a, b)
                        U[j][0] = a[0]
                        U[j][1] = a[1]
                        U[k][0] = b[0]
                        U[k][1] = b[1]
                        terms[j] = _row_term(a[0], a[1], w0, w1)
                        terms[k] = _row_term(b[0], b[1], w0, w1)
                        f = 0.0
                        for i in range(m):
                            f += terms[i]
        if f_start - f <= rel_tol * f_start or f_start - f <= 1e-15:
            break
    fout[0] = f
    return sweeps


def average_entanglement_rows(w, u):
    """Average pure-state entanglement of the decomposition ``u @ w``."""
    cdef const double complex[:, ::1] wv = np.ascontiguousarray(w, dtype=np.complex128)
    cdef const double complex[:, ::1] uv = np.ascontiguousarray(u, dtype=np.complex128)
    cdef double complex w0[4]
    cdef double complex w1[4]
    cdef double total = 0.0
    cdef int i, k
    for i in range(4):
        w0[i] = wv[0, i]
        w1[i] = wv[1, i]
    for k in range(uv.shape[0]):
        total += _row_term(uv[k, 0], uv[k, 1], w0, w1)
    return total


def refine_isometry(w, u, int max_sweeps=500, double rel_tol=1e-8):
    """Coordinate-wise golden-section descent over Givens rotations of ``u``.

    Returns ``(value, u_new, sweeps)``. Releases the GIL while iterating.
    """
    cdef const double complex[:, ::1] wv = np.ascontiguousarray(w, dtype=np.complex128)
    cdef const double complex[:, ::1] uv = np.ascontiguousarray(u, dtype=np.complex128)
    cdef double complex w0[4]
    cdef double complex w1[4]
    cdef double complex U[MAXROWS][2]
    cdef int m = uv.shape[0], i, sweeps
    cdef double f = 0.0
    if m < 1 or m > MAXROWS or uv.shape[1] != 2:
        raise ValueError("isometry must be m x 2 with 1 <= m <= 4")
    for i in range(4):
        w0[i] = wv[0, i]
        w1[i] = wv[1, i]
    for i in range(m):
        U[i][0] = uv[i, 0]
        U[i][1] = uv[i, 1]
    with nogil:
        sweeps = _refine(w0, w1, U, m, max_sweeps, rel_tol, &f)
    out = np.empty((m, 2), dtype=np.complex128)
    for i in range(m):
        out[i, 0] = U[i][0]
        out[i, 1] = U[i][1]
    return f, out, sweeps
