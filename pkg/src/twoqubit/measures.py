"""Entanglement measures for two-qubit states.

Two independent routes to the mixed-state concurrence are provided:

* the spectral route, ``max(l1 - l2 - l3 - l4, 0)`` with ``l_i`` the square
  roots of the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``, valid for any rank;
* the closed form for rank <= 2, which needs only the complex concurrences
  of the two eigenvectors and of their sum and difference.

Entropies are in bits (log base 2), so one Bell pair carries 1 ebit.
"""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .errors import DomainError, NumericalError
from .linalg import herm_eigen, sqrt_psd
from .states import (
    Rank2Decomposition,
    as_density,
    magic_basis_state,
)

SLACK = 1e-12
LAMBDA_CLAMP = 1e-12
Y_CLAMP = 1e-12

# sigma_y (x) sigma_y in the computational basis
SIGMA_YY = np.array([
    [0, 0, 0, -1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [-1, 0, 0, 0],
], dtype=complex)


class Method(str, enum.Enum):
    spectral = "spectral"
    closed_form = "closed_form"


class Branch(str, enum.Enum):
    general = "general"
    corollary2_upper = "corollary2_upper"
    corollary2_mid = "corollary2_mid"
    corollary2_lower = "corollary2_lower"
    corollary3 = "corollary3"
    corollary4 = "corollary4"


@dataclass(frozen=True)
class ComplexConcurrences:
    c1: complex
    c2: complex
    cplus: complex
    cminus: complex

    @property
    def diff(self) -> complex:
        return self.cplus - self.cminus


@dataclass(frozen=True)
class ClosedFormIntermediates:
    x: float
    y: float
    omega_plus: float
    omega_minus: float


@dataclass(frozen=True)
class BranchResult:
    branch: Branch
    predicted_sq: Optional[float]


@dataclass(frozen=True)
class ConcurrenceReport:
    lambdas: tuple
    concurrence: float
    concurrence_sq: float
    method: Method
    we_entropy: float
    branch: Optional[Branch] = None
    lower_bound: Optional[float] = None
    upper_bound: Optional[float] = None
    intermediates: Optional[ClosedFormIntermediates] = field(default=None, compare=False)

    def as_dict(self) -> dict:
        out = {
            "method": self.method.value,
            "concurrence": self.concurrence,
            "concurrence_sq": self.concurrence_sq,
            "we_entropy": self.we_entropy,
            "lambdas": list(self.lambdas),
        }
        if self.method is Method.closed_form:
            out["branch"] = self.branch.value if self.branch else None
            out["lower_bound"] = self.lower_bound
            out["upper_bound"] = self.upper_bound
            out["x"] = self.intermediates.x
            out["y"] = self.intermediates.y
            out["omega_plus"] = self.intermediates.omega_plus
            out["omega_minus"] = self.intermediates.omega_minus
        return out


def _amplitudes(psi) -> np.ndarray:
    a = np.asarray(getattr(psi, "amplitudes", psi), dtype=complex)
    if a.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {a.shape}")
    return a


def complex_concurrence(psi) -> complex:
    """``2(ad - bc)`` for ``psi = a|00> + b|01> + c|10> + d|11>``."""
    a, b, c, d = _amplitudes(psi)
    return complex(2.0 * (a * d - b * c))


def pure_concurrence(psi) -> float:
    """Concurrence ``2|ad - bc|`` of a normalized pure state."""
    return min(abs(complex_concurrence(psi)), 1.0)


_MAGIC = np.array([magic_basis_state(k).amplitudes for k in (1, 2, 3, 4)])


def magic_coefficients(psi) -> np.ndarray:
    return _MAGIC.conj() @ _amplitudes(psi)


def magic_concurrence(psi) -> float:
    """``|sum_i alpha_i^2|`` with ``alpha`` the magic-basis coefficients."""
    alpha = magic_coefficients(psi)
    return float(abs(np.sum(alpha * alpha)))


def reduced_state(psi, subsystem: str = "B") -> np.ndarray:
    m = _amplitudes(psi).reshape(2, 2)
    if subsystem == "A":
        return m @ m.conj().T
    if subsystem == "B":
        return m.T @ m.conj()
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def polarized_vector(psi, subsystem: str = "B") -> np.ndarray:
    """Bloch vector ``xi`` of the reduced state, ``rho_red = (I + xi . sigma) / 2``."""
    r = reduced_state(psi, subsystem)
    return np.array([2.0 * r[0, 1].real, -2.0 * r[0, 1].imag, (r[0, 0] - r[1, 1]).real])


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)``."""
    m = np.asarray(getattr(rho, "matrix", rho), dtype=complex)
    return SIGMA_YY @ m.conj() @ SIGMA_YY


def wootters_matrix(rho) -> np.ndarray:
    """``sqrt(rho) rho~ sqrt(rho)``, Hermitian PSD."""
    m = np.asarray(as_density(rho).matrix)
    s = sqrt_psd(m)
    r = s @ spin_flip(m) @ s
    return 0.5 * (r + r.conj().T)


def wootters_lambdas(rho) -> tuple:
    """Square roots of the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``, descending.

    Evaluated as the singular values of ``A = sqrt(rho) YY sqrt(rho)*``
    (``A A^H`` is the matrix above). Square-rooting eigenvalues that sit at
    rounding level would inflate them to ~1e-8; singular values do not.
    """
    m = np.asarray(as_density(rho).matrix)
    s = sqrt_psd(m)
    sigma, _ = _kernels.jacobi_svdvals(s @ SIGMA_YY @ s.conj())
    return tuple(float(x) for x in sigma)


def wootters_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``, descending, from the Hermitian solver."""
    return herm_eigen(wootters_matrix(rho)).eigenvalues


def _check_unit(name, value):
    if value < -SLACK or value > 1.0 + SLACK or math.isnan(value):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return min(max(value, 0.0), 1.0)


def binary_entropy(zval: float) -> float:
    """``-z log2 z - (1 - z) log2(1 - z)``, with ``0 log 0 = 0``."""
    z = _check_unit("z", float(zval))
    out = 0.0
    for t in (z, 1.0 - z):
        if t > 0.0:
            out -= t * math.log2(t)
    return out


def z_of_concurrence(c: float) -> float:
    c = _check_unit("concurrence", float(c))
    return 0.5 * (1.0 + math.sqrt(1.0 - c * c))


def entanglement_of_concurrence(c: float) -> float:
    """Wootters entanglement ``H(z(C))``.

    ``1 - z`` is evaluated as ``C^2 / (2 (1 + sqrt(1 - C^2)))`` so that small
    concurrences keep full relative precision.
    """
    c = _check_unit("concurrence", float(c))
    if c == 0.0:
        return 0.0
    s = math.sqrt(1.0 - c * c)
    zm = c * c / (2.0 * (1.0 + s))
    z = 0.5 * (1.0 + s)
    return -z * math.log2(z) - zm * math.log2(zm)


def spectral_concurrence(rho) -> ConcurrenceReport:
    """Mixed-state concurrence from the full ``lambda`` spectrum; any rank."""
    lam = wootters_lambdas(rho)
    c = max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)
    c = min(c, 1.0)
    return ConcurrenceReport(
        lambdas=lam,
        concurrence=c,
        concurrence_sq=c * c,
        method=Method.spectral,
        we_entropy=entanglement_of_concurrence(c),
    )


def combo_concurrences(d: Rank2Decomposition) -> ComplexConcurrences:
    """Complex concurrences of both eigenvectors and of their sum and difference.

    The sum/difference values use the raw, unnormalized amplitudes
    ``(a1 +- a2)(d1 +- d2) - (b1 +- b2)(c1 +- c2)``; for orthonormal
    eigenvectors this equals the complex concurrence of ``(psi1 +- psi2)/sqrt 2``.
    """
    return _combos(d.psi1.amplitudes, d.psi2.amplitudes)


def _combos(u, w) -> ComplexConcurrences:
    a1, b1, c1, d1 = u
    a2, b2, c2, d2 = w
    return ComplexConcurrences(
        c1=complex(2.0 * (a1 * d1 - b1 * c1)),
        c2=complex(2.0 * (a2 * d2 - b2 * c2)),
        cplus=complex((a1 + a2) * (d1 + d2) - (b1 + b2) * (c1 + c2)),
        cminus=complex((a1 - a2) * (d1 - d2) - (b1 - b2) * (c1 - c2)),
    )


def closed_form_xy(d: Rank2Decomposition) -> ClosedFormIntermediates:
    """``x``, ``y`` and ``omega_pm = x +- sqrt(y)``, the two nonzero eigenvalues
    of ``sqrt(rho) rho~ sqrt(rho)``."""
    cc = combo_concurrences(d)
    v1, v2 = d.v1, d.v2
    diff = cc.diff
    x = 0.5 * (v1 * v1 * abs(cc.c1) ** 2 + v2 * v2 * abs(cc.c2) ** 2) + 0.25 * v1 * v2 * abs(diff) ** 2
    y = x * x - (v1 * v1 * v2 * v2 / 16.0) * abs(diff * diff - 4.0 * cc.c1 * cc.c2) ** 2
    if y < 0.0:
        if y < -Y_CLAMP:
            raise NumericalError(f"y = {y:.3e} is below -{Y_CLAMP:g}")
        y = 0.0
    root = math.sqrt(y)
    om = x - root
    if om < 0.0:
        if om < -LAMBDA_CLAMP:
            raise NumericalError(f"omega_minus = {om:.3e} is below -{LAMBDA_CLAMP:g}")
        om = 0.0
    return ClosedFormIntermediates(x=x, y=y, omega_plus=x + root, omega_minus=om)


def closed_form_sq(d: Rank2Decomposition) -> float:
    """Squared concurrence of a rank <= 2 state from its eigen-data alone."""
    cc = combo_concurrences(d)
    v1, v2 = d.v1, d.v2
    n1, n2 = abs(cc.c1), abs(cc.c2)
    diff = cc.diff
    return (v1 * v1 * n1 * n1 + v2 * v2 * n2 * n2
            + 0.5 * v1 * v2 * abs(diff) ** 2
            - 0.5 * v1 * v2 * abs(diff * diff - 4.0 * cc.c1 * cc.c2))


def concurrence_bounds(d: Rank2Decomposition) -> tuple:
    """``((v1 C1 - v2 C2)^2, (v1 C1 + v2 C2)^2)``."""
    cc = combo_concurrences(d)
    a = d.v1 * min(abs(cc.c1), 1.0)
    b = d.v2 * min(abs(cc.c2), 1.0)
    return (a - b) ** 2, (a + b) ** 2


def _real_form(vec, tol):
    # rotate away the global phase using the largest amplitude
    k = int(np.argmax(np.abs(vec)))
    r = vec * (abs(vec[k]) / vec[k])
    if np.max(np.abs(r.imag)) > tol:
        return None
    return r.real


def corollary_branches(d: Rank2Decomposition, tol: float = 1e-9) -> list:
    """Every special-case branch whose condition holds, in detection order.

    Each entry is a BranchResult carrying the squared concurrence that
    branch predicts. An empty list means only the general formula applies.
    """
    cc = combo_concurrences(d)
    v1, v2 = d.v1, d.v2
    n1, n2 = abs(cc.c1), abs(cc.c2)
    found = []
    if n1 <= tol or n2 <= tol:
        pred = (v2 * n2) ** 2 if n1 <= tol else (v1 * n1) ** 2
        found.append(BranchResult(Branch.corollary4, pred))
    if abs(cc.diff) <= tol:
        found.append(BranchResult(Branch.corollary3, (v1 * n1 - v2 * n2) ** 2))
    r1 = _real_form(d.psi1.amplitudes, tol)
    r2 = _real_form(d.psi2.amplitudes, tol)
    if r1 is not None and r2 is not None:
        rc = _combos(r1.astype(complex), r2.astype(complex))
        s1, s2, dr = rc.c1.real, rc.c2.real, rc.diff.real
        if s1 * s2 <= 0.0:
            found.append(BranchResult(Branch.corollary2_lower, (v1 * n1 - v2 * n2) ** 2))
        elif dr * dr >= 4.0 * s1 * s2:
            found.append(BranchResult(Branch.corollary2_upper, (v1 * n1 + v2 * n2) ** 2))
        else:
            found.append(BranchResult(Branch.corollary2_mid, (v1 * n1 - v2 * n2) ** 2 + v1 * v2 * dr * dr))
    return found


def corollary_branch(d: Rank2Decomposition, tol: float = 1e-9) -> BranchResult:
    """First firing branch (corollary 4, then 3, then 2), else ``general``."""
    found = corollary_branches(d, tol)
    return found[0] if found else BranchResult(Branch.general, None)


def closed_form_concurrence(d: Rank2Decomposition) -> ConcurrenceReport:
    inter = closed_form_xy(d)
    csq = closed_form_sq(d)
    c = min(math.sqrt(max(csq, 0.0)), 1.0)
    lo, hi = concurrence_bounds(d)
    return ConcurrenceReport(
        lambdas=(math.sqrt(inter.omega_plus), math.sqrt(inter.omega_minus), 0.0, 0.0),
        concurrence=c,
        concurrence_sq=csq,
        method=Method.closed_form,
        we_entropy=entanglement_of_concurrence(c),
        branch=corollary_branch(d).branch,
        lower_bound=lo,
        upper_bound=hi,
        intermediates=inter,
    )


def eigen_average_entanglement(d: Rank2Decomposition) -> float:
    """Average entanglement of the eigendecomposition itself."""
    return (d.v1 * entanglement_of_concurrence(pure_concurrence(d.psi1))
            + d.v2 * entanglement_of_concurrence(pure_concurrence(d.psi2)))
