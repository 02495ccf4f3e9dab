"""Two-qubit states, the state families used in the worked examples, and I/O.

All vectors and matrices are in the computational basis ordered
``|00>, |01>, |10>, |11>``.
"""

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIndex,
    BadProbability,
    InvariantViolation,
    NotNormalized,
    ParseError,
    RankTooHigh,
    SameState,
)
from .linalg import HERMITIAN_TOL, PSD_TOL, hermitian_deviation, herm_eigen

NORM_TOL = 1e-10
TRACE_TOL = 1e-9
ORTHO_TOL = 1e-9
GAUGE_THRESHOLD = 1e-12
SEED_MASK = (1 << 64) - 1

_R2 = 1.0 / math.sqrt(2.0)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitudes ``(a, b, c, d)``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (4,):
            raise InvariantViolation("shape", f"expected 4 amplitudes, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvariantViolation("finite")
        norm2 = float(np.vdot(a, a).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm2!r}")
        object.__setattr__(self, "amplitudes", _frozen(a))

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        a = np.asarray(amplitudes, dtype=complex)
        n = np.linalg.norm(a)
        if n == 0.0:
            raise NotNormalized("zero vector")
        return cls(a / n)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite 4x4 matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise InvariantViolation("shape", f"expected 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvariantViolation("finite")
        dev = hermitian_deviation(m)
        if dev > HERMITIAN_TOL:
            raise InvariantViolation("hermitian", f"max |M - M^H| = {dev:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolation("trace", f"trace = {tr.real:.12g}")
        low = float(herm_eigen(m).eigenvalues[-1])
        if low < -PSD_TOL:
            raise InvariantViolation("psd", f"smallest eigenvalue {low:.3e}")
        object.__setattr__(self, "matrix", _frozen(m))

    def eigenvalues(self) -> np.ndarray:
        return herm_eigen(self.matrix).eigenvalues

    def rank(self, tol: float = 1e-10) -> int:
        return int(np.sum(self.eigenvalues() > tol))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Rank2Decomposition:
    """``rho = v1 |psi1><psi1| + v2 |psi2><psi2|`` with orthonormal ``psi1, psi2``."""

    v1: float
    v2: float
    psi1: PureState
    psi2: PureState

    def __post_init__(self):
        v1, v2 = float(self.v1), float(self.v2)
        if not (v2 >= -NORM_TOL and v1 >= v2 - NORM_TOL):
            raise InvariantViolation("weights", f"need v1 >= v2 >= 0, got ({v1}, {v2})")
        if abs(v1 + v2 - 1.0) > NORM_TOL:
            raise InvariantViolation("weights", f"v1 + v2 = {v1 + v2!r}")
        ov = abs(np.vdot(self.psi1.amplitudes, self.psi2.amplitudes))
        if ov > ORTHO_TOL:
            raise InvariantViolation("orthogonal", f"|<psi1|psi2>| = {ov:.3e}")
        object.__setattr__(self, "v1", v1)
        object.__setattr__(self, "v2", v2)

    @classmethod
    def from_pairs(cls, wa, psia, wb, psib) -> "Rank2Decomposition":
        """Build from two weighted states given in either order."""
        psia = psia if isinstance(psia, PureState) else PureState(psia)
        psib = psib if isinstance(psib, PureState) else PureState(psib)
        if wa >= wb:
            return cls(wa, wb, psia, psib)
        return cls(wb, wa, psib, psia)

    def weighted_rows(self) -> np.ndarray:
        """2x4 array whose rows are ``sqrt(v_j) |psi_j>``."""
        return np.array([
            math.sqrt(max(self.v1, 0.0)) * self.psi1.amplitudes,
            math.sqrt(max(self.v2, 0.0)) * self.psi2.amplitudes,
        ])


class BellKind(enum.Enum):
    PhiPlus = "phi+"
    PhiMinus = "phi-"
    PsiPlus = "psi+"
    PsiMinus = "psi-"

    @classmethod
    def parse(cls, value) -> "BellKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip()
        for kind in cls:
            if key == kind.value or key.lower() == kind.name.lower():
                return kind
        raise ValueError(f"unknown Bell state {value!r}; expected one of phi+, phi-, psi+, psi-")


_BELL = {
    BellKind.PhiPlus: (_R2, 0.0, 0.0, _R2),
    BellKind.PhiMinus: (_R2, 0.0, 0.0, -_R2),
    BellKind.PsiPlus: (0.0, _R2, _R2, 0.0),
    BellKind.PsiMinus: (0.0, _R2, -_R2, 0.0),
}


def bell_state(kind) -> PureState:
    """Plain Bell state (no magic-basis phase)."""
    return PureState(_BELL[BellKind.parse(kind)])


def magic_basis_state(k: int) -> PureState:
    """Magic basis vector ``e_k``: Phi+, i Phi-, i Psi+, Psi-."""
    if k not in (1, 2, 3, 4):
        raise BadIndex(f"magic basis index must be in 1..4, got {k!r}")
    kinds = (BellKind.PhiPlus, BellKind.PhiMinus, BellKind.PsiPlus, BellKind.PsiMinus)
    phases = (1.0, 1j, 1j, 1.0)
    return PureState(phases[k - 1] * bell_state(kinds[k - 1]).amplitudes)


def basis_state(i: int) -> PureState:
    """Computational basis vector; ``i`` = 1..4 for ``|00>, |01>, |10>, |11>``."""
    if i not in (1, 2, 3, 4):
        raise BadIndex(f"basis index must be in 1..4, got {i!r}")
    a = np.zeros(4, dtype=complex)
    a[i - 1] = 1.0
    return PureState(a)


def _check_probability(name, value):
    if not (0.0 <= value <= 1.0):
        raise BadProbability(f"{name} must lie in [0, 1], got {value!r}")


def mixture(weights, states) -> DensityMatrix:
    return DensityMatrix(sum(w * s.projector() for w, s in zip(weights, states)))


def bell_mixture(first, second, g: float) -> DensityMatrix:
    """``g |first><first| + (1 - g) |second><second|`` for two distinct Bell states."""
    first, second = BellKind.parse(first), BellKind.parse(second)
    if first == second:
        raise SameState(f"Bell mixture needs two different states, got {first.value} twice")
    _check_probability("g", g)
    return mixture((g, 1.0 - g), (bell_state(first), bell_state(second)))


def bell_mixture_decomposition(first, second, g: float) -> Rank2Decomposition:
    first, second = BellKind.parse(first), BellKind.parse(second)
    if first == second:
        raise SameState(f"Bell mixture needs two different states, got {first.value} twice")
    _check_probability("g", g)
    return Rank2Decomposition.from_pairs(g, bell_state(first), 1.0 - g, bell_state(second))


def departure_diag(i: int, p: float) -> DensityMatrix:
    """Singlet mixed with a computational basis state: ``p Psi- + (1 - p) |i><i|``."""
    if i not in (1, 2, 3, 4):
        raise BadIndex(f"basis index must be in 1..4, got {i!r}")
    _check_probability("p", p)
    return mixture((p, 1.0 - p), (bell_state(BellKind.PsiMinus), basis_state(i)))


def chi_state(x1, x2, x4) -> PureState:
    """``x1|00> + x2 (|01> + |10>)/sqrt(2) + x4|11>``."""
    x1, x2, x4 = complex(x1), complex(x2), complex(x4)
    n2 = abs(x1) ** 2 + abs(x2) ** 2 + abs(x4) ** 2
    if abs(n2 - 1.0) > NORM_TOL:
        raise NotNormalized(f"|x1|^2 + |x2|^2 + |x4|^2 = {n2!r}")
    return PureState((x1, x2 * _R2, x2 * _R2, x4))


def product_chi(theta: float) -> tuple:
    """Coefficients ``(x1, x2, x4)`` of ``u(theta) (x) u(theta)`` with ``u = (cos, sin)``."""
    c, s = math.cos(theta), math.sin(theta)
    return c * c, math.sqrt(2.0) * c * s, s * s


def departure_orth(q: float, x1, x2, x4) -> DensityMatrix:
    """Singlet mixed with the symmetric state ``chi``: ``q Psi- + (1 - q) chi``."""
    return mixture((q, 1.0 - q), (bell_state(BellKind.PsiMinus), _orth_chi(q, x1, x2, x4)))


def departure_orth_decomposition(q: float, x1, x2, x4) -> Rank2Decomposition:
    chi = _orth_chi(q, x1, x2, x4)
    return Rank2Decomposition.from_pairs(q, bell_state(BellKind.PsiMinus), 1.0 - q, chi)


def _orth_chi(q, x1, x2, x4):
    chi = chi_state(x1, x2, x4)
    _check_probability("q", q)
    return chi


def werner(w: float) -> DensityMatrix:
    """``w |Psi-><Psi-| + (1 - w) I/4``."""
    _check_probability("w", w)
    return DensityMatrix(w * bell_state(BellKind.PsiMinus).projector() + (1.0 - w) * np.eye(4) / 4)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & SEED_MASK)


def _haar_amplitudes(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return z / np.linalg.norm(z)


def random_pure(seed: int) -> PureState:
    """Haar-random pure state, deterministic in ``seed``."""
    return PureState(_haar_amplitudes(_rng(seed)))


def random_rank2(seed: int) -> Rank2Decomposition:
    """Random rank-2 decomposition: Haar-random orthonormal pair, ``v1 ~ U[1/2, 1]``."""
    rng = _rng(seed)
    a = _haar_amplitudes(rng)
    while True:
        b = _haar_amplitudes(rng)
        ov = np.vdot(a, b)
        if abs(ov) <= 1.0 - 1e-6:
            break
    b = b - ov * a
    b /= np.linalg.norm(b)
    b = b - np.vdot(a, b) * a
    b /= np.linalg.norm(b)
    v = rng.uniform(0.5, 1.0)
    return Rank2Decomposition(v, 1.0 - v, PureState(a), PureState(b))


def to_density(d: Rank2Decomposition) -> DensityMatrix:
    m = d.v1 * d.psi1.projector() + d.v2 * d.psi2.projector()
    return DensityMatrix(0.5 * (m + m.conj().T))


def gauge_fix(vec) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    v = np.asarray(vec, dtype=complex)
    for i, amp in enumerate(v):
        if abs(amp) > GAUGE_THRESHOLD:
            out = v * (abs(amp) / amp)
            out[i] = abs(amp)
            return out
    return v.copy()


def eigen_rank2(rho, rank_tol: float = 1e-10) -> Rank2Decomposition:
    """Eigendecomposition of a state of rank at most two.

    Raises
    ------
    RankTooHigh
        If the third-largest eigenvalue exceeds ``rank_tol``.
    """
    rho = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    eig = herm_eigen(rho.matrix)
    w = eig.eigenvalues
    if w[2] > rank_tol:
        raise RankTooHigh(float(w[2]), rank_tol)
    v1, v2 = max(float(w[0]), 0.0), max(float(w[1]), 0.0)
    total = v1 + v2
    vecs = eig.eigenvectors
    return Rank2Decomposition(
        v1 / total, v2 / total,
        PureState(gauge_fix(vecs[:, 0])), PureState(gauge_fix(vecs[:, 1])),
    )


def _encode(values) -> list:
    return [[float(z.real), float(z.imag)] for z in values]


def write_state(state) -> str:
    """Serialize a PureState or DensityMatrix to the JSON state-file format."""
    if isinstance(state, PureState):
        doc = {"kind": "pure", "basis": "comp", "data": _encode(state.amplitudes)}
    elif isinstance(state, DensityMatrix):
        doc = {"kind": "density", "basis": "comp", "data": _encode(state.matrix.ravel())}
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    return json.dumps(doc) + "\n"


def _decode_pair(item, index):
    if (not isinstance(item, list) or len(item) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in item)):
        raise ParseError(f"data[{index}] must be a [re, im] pair of numbers, got {item!r}")
    return complex(item[0], item[1])


def parse_state(text: str):
    """Parse the JSON state-file format into a PureState or DensityMatrix.

    Raises
    ------
    ParseError
        Malformed JSON or layout.
    InvariantViolation
        Well-formed input describing an invalid state.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("state file must be a JSON object")
    kind = doc.get("kind")
    basis = doc.get("basis", "comp")
    if basis != "comp":
        raise ParseError(f"unsupported basis {basis!r}; only 'comp' is defined")
    data = doc.get("data")
    if not isinstance(data, list):
        raise ParseError("'data' must be a list of [re, im] pairs")
    if kind == "pure":
        expected = 4
    elif kind == "density":
        expected = 16
    else:
        raise ParseError(f"'kind' must be 'pure' or 'density', got {kind!r}")
    if len(data) != expected:
        raise ParseError(f"{kind} state needs {expected} entries, got {len(data)}")
    values = np.array([_decode_pair(item, i) for i, item in enumerate(data)])
    if kind == "pure":
        return PureState(values)
    return DensityMatrix(values.reshape(4, 4))


def as_density(state) -> DensityMatrix:
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.to_density()
    if isinstance(state, Rank2Decomposition):
        return to_density(state)
    return DensityMatrix(state)
