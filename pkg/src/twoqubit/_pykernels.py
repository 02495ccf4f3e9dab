"""Pure-Python kernels.

Reference implementation of the two hot loops; ``_ext.pyx`` mirrors it
line for line.  Both operate on plain Python complex numbers because for
4x4 problems per-element numpy indexing is slower than list access.
"""

from math import copysign, cos, hypot, log2, pi, sin, sqrt

import numpy as np

NAME = "python"

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 64

_GRID = 8
_INVPHI = (sqrt(5.0) - 1.0) / 2.0
_XTOL = 1e-8
_DROP = 1e-14


def jacobi_eigh(a, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Cyclic complex Jacobi eigensolver for a Hermitian 4x4 matrix.

    Only the upper triangle of the input is trusted; the lower triangle is
    taken as its conjugate. Returns ``(w, v, sweeps)`` with eigenvalues in
    descending order (stable on ties) and eigenvectors as columns of ``v``.
    """
    n = 4
    A = [[0j] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = complex(a[i][i].real, 0.0)
        for j in range(i + 1, n):
            z = complex(a[i][j])
            A[i][j] = z
            A[j][i] = z.conjugate()
    V = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]

    scale = sqrt(sum(abs(A[i][j]) ** 2 for i in range(n) for j in range(n)))
    thresh = tol * max(1.0, scale)

    sweeps = 0
    while sweeps < max_sweeps:
        off = max(abs(A[p][q]) for p in range(n - 1) for q in range(p + 1, n))
        if off <= thresh:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p][q]
                r = abs(apq)
                if r == 0.0:
                    continue
                e = apq / r
                app = A[p][p].real
                aqq = A[q][q].real
                theta = (aqq - app) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = copysign(1.0, theta) / (abs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = s * e.conjugate()
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = A[k][p]
                    akq = A[k][q]
                    nkp = c * akp - sec * akq
                    nkq = se * akp + c * akq
                    A[k][p] = nkp
                    A[p][k] = nkp.conjugate()
                    A[k][q] = nkq
                    A[q][k] = nkq.conjugate()
                A[p][p] = complex(app - t * r, 0.0)
                A[q][q] = complex(aqq + t * r, 0.0)
                A[p][q] = 0j
                A[q][p] = 0j
                for k in range(n):
                    vkp = V[k][p]
                    vkq = V[k][q]
                    V[k][p] = c * vkp - sec * vkq
                    V[k][q] = se * vkp + c * vkq

    diag = [A[i][i].real for i in range(n)]
    order = sorted(range(n), key=lambda i: -diag[i])
    w = np.array([diag[i] for i in order])
    v = np.array([[V[k][i] for i in order] for k in range(n)], dtype=complex)
    return w, v, sweeps


def jacobi_svdvals(a, tol=1e-15, max_sweeps=JACOBI_MAX_SWEEPS):
    """Singular values of a complex 4x4 matrix by one-sided Jacobi.

    Column pairs are rotated until mutually orthogonal; the singular values
    are then the column norms. Small singular values keep absolute accuracy
    near machine epsilon, unlike square roots of Gram-matrix eigenvalues.
    Returns ``(sigma, sweeps)`` with ``sigma`` descending.
    """
    n = 4
    A = [[complex(a[i][j]) for j in range(n)] for i in range(n)]
    sweeps = 0
    while sweeps < max_sweeps:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = beta = 0.0
                gamma = 0j
                for k in range(n):
                    x, y = A[k][p], A[k][q]
                    alpha += x.real * x.real + x.imag * x.imag
                    beta += y.real * y.real + y.imag * y.imag
                    gamma += x.conjugate() * y
                r = abs(gamma)
                if r == 0.0 or r <= tol * sqrt(alpha * beta):
                    continue
                rotated = True
                e = gamma / r
                theta = (beta - alpha) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = copysign(1.0, theta) / (abs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                se = s * e
                sec = s * e.conjugate()
                for k in range(n):
                    x, y = A[k][p], A[k][q]
                    A[k][p] = c * x - sec * y
                    A[k][q] = se * x + c * y
        if not rotated:
            break
        sweeps += 1
    sigma = sorted((sqrt(sum(abs(A[k][j]) ** 2 for k in range(n))) for j in range(n)), reverse=True)
    return np.array(sigma), sweeps


def _entanglement(c):
    # H(z(c)) with 1 - z evaluated without cancellation
    if c <= 0.0:
        return 0.0
    if c >= 1.0:
        return 1.0
    s = sqrt(1.0 - c * c)
    zm = c * c / (2.0 * (1.0 + s))
    z = 0.5 * (1.0 + s)
    return -z * log2(z) - zm * log2(zm)


def _row_term(u0, u1, w0, w1):
    x0 = u0 * w0[0] + u1 * w1[0]
    x1 = u0 * w0[1] + u1 * w1[1]
    x2 = u0 * w0[2] + u1 * w1[2]
    x3 = u0 * w0[3] + u1 * w1[3]
    p = (x0.real * x0.real + x0.imag * x0.imag + x1.real * x1.real + x1.imag * x1.imag
         + x2.real * x2.real + x2.imag * x2.imag + x3.real * x3.real + x3.imag * x3.imag)
    if p < _DROP:
        return 0.0
    b = x0 * x3 - x1 * x2
    return p * _entanglement(2.0 * hypot(b.real, b.imag) / p)


def average_entanglement_rows(w, u):
    """Average pure-state entanglement of the decomposition ``u @ w``.

    ``w`` is 2x4 (rows are sqrt-weighted eigenvectors), ``u`` is m x 2.
    """
    w0 = [complex(z) for z in w[0]]
    w1 = [complex(z) for z in w[1]]
    return sum(_row_term(complex(u[k][0]), complex(u[k][1]), w0, w1) for k in range(len(u)))


def _rotate(uj, uk, kind, t):
    c = cos(t)
    s = sin(t)
    if kind == 0:
        return ([c * uj[0] + s * uk[0], c * uj[1] + s * uk[1]],
                [c * uk[0] - s * uj[0], c * uk[1] - s * uj[1]])
    js = 1j * s
    return ([c * uj[0] + js * uk[0], c * uj[1] + js * uk[1]],
            [c * uk[0] + js * uj[0], c * uk[1] + js * uj[1]])


def refine_isometry(w, u, max_sweeps=500, rel_tol=1e-8):
    """Coordinate-wise golden-section descent over Givens rotations of ``u``.

    Each coordinate is a one-parameter subgroup acting on a pair of rows of
    ``u`` (a real rotation or an ``exp(i t sigma_x)`` rotation), so column
    orthonormality is preserved exactly up to rounding. Returns
    ``(value, u_new, sweeps)``.
    """
    w0 = [complex(z) for z in w[0]]
    w1 = [complex(z) for z in w[1]]
    U = [[complex(u[k][0]), complex(u[k][1])] for k in range(len(u))]
    m = len(U)
    terms = [_row_term(U[k][0], U[k][1], w0, w1) for k in range(m)]
    f = sum(terms)

    sweeps = 0
    while sweeps < max_sweeps:
        f_start = f
        sweeps += 1
        for j in range(m - 1):
            for k in range(j + 1, m):
                for kind in (0, 1):
                    rest = f - terms[j] - terms[k]
                    uj, uk = U[j], U[k]

                    def g(t):
                        a, b = _rotate(uj, uk, kind, t)
                        return rest + _row_term(a[0], a[1], w0, w1) + _row_term(b[0], b[1], w0, w1)

                    step = pi / _GRID
                    best_t, best_f = 0.0, f
                    for i in range(_GRID):
                        t = -pi / 2 + i * step
                        if t == 0.0:
                            continue
                        ft = g(t)
                        if ft < best_f:
                            best_t, best_f = t, ft
                    lo, hi = best_t - step, best_t + step
                    x1 = hi - _INVPHI * (hi - lo)
                    x2 = lo + _INVPHI * (hi - lo)
                    f1, f2 = g(x1), g(x2)
                    while hi - lo > _XTOL:
                        if f1 < f2:
                            hi, x2, f2 = x2, x1, f1
                            x1 = hi - _INVPHI * (hi - lo)
                            f1 = g(x1)
                        else:
                            lo, x1, f1 = x1, x2, f2
                            x2 = lo + _INVPHI * (hi - lo)
                            f2 = g(x2)
                    if f1 < best_f:
                        best_t, best_f = x1, f1
                    if f2 < best_f:
                        best_t, best_f = x2, f2
                    if best_f < f:
                        a, b = _rotate(uj, uk, kind, best_t)
                        U[j], U[k] = a, b
                        terms[j] = _row_term(a[0], a[1], w0, w1)
                        terms[k] = _row_term(b[0], b[1], w0, w1)
                        f = sum(terms)
        if f_start - f <= rel_tol * f_start or f_start - f <= 1e-15:
            break
    return f, np.array(U, dtype=complex), sweeps
