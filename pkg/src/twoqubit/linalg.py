"""Fixed-size (4x4) Hermitian linear algebra.

The eigensolver is a cyclic complex Jacobi iteration, executed by the
compiled kernel when available.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import NotHermitian, NotPSD

HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-10
NULL_RTOL = 64 * np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class HermEigenResult:
    """Eigenvalues in descending order and matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_mat4(m) -> np.ndarray:
    a = np.asarray(getattr(m, "matrix", m), dtype=complex)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitian_deviation(m) -> float:
    a = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


def herm_eigen(m) -> HermEigenResult:
    """Eigendecomposition of a Hermitian 4x4 matrix.

    Raises
    ------
    NotHermitian
        If ``max |M - M^H| > 1e-9``.
    """
    a = as_mat4(m)
    dev = hermitian_deviation(a)
    if dev > HERMITIAN_TOL:
        raise NotHermitian(dev)
    a = 0.5 * (a + a.conj().T)
    w, v, sweeps = _kernels.jacobi_eigh(a)
    w.flags.writeable = False
    v.flags.writeable = False
    return HermEigenResult(w, v, sweeps)


def sqrt_psd(m) -> np.ndarray:
    """Principal square root of a positive semidefinite 4x4 matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as zero, and so are positive
    ones at rounding level (``<= NULL_RTOL * max eigenvalue``): their square
    roots would otherwise inject ``O(sqrt(eps))`` noise into the result.

    Raises
    ------
    NotPSD
        If an eigenvalue is below ``-1e-10``.
    """
    eig = herm_eigen(m)
    w = eig.eigenvalues
    if w[-1] < -PSD_TOL:
        raise NotPSD(float(w[-1]))
    w = np.where(w <= NULL_RTOL * max(float(w[0]), 0.0), 0.0, w)
    root = np.sqrt(w)
    v = eig.eigenvectors
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)
