"""Brute-force entanglement of formation for states of rank <= 2.

Every pure-state decomposition of ``rho = v1|psi1><psi1| + v2|psi2><psi2|``
into ``m`` members is reached by an m x 2 isometry ``U``:
``|w_k> = sum_j U_kj sqrt(v_j) |psi_j>``, ``p_k = <w_k|w_k>``.  The search
minimizes the average pure-state entanglement over ``U`` using random
restarts followed by coordinate-wise golden-section refinement over Givens
rotations (see ``_kernels.refine_isometry``).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvariantViolation
from .measures import entanglement_of_concurrence, pure_concurrence, spectral_concurrence
from .states import SEED_MASK, PureState, Rank2Decomposition, as_density, eigen_rank2

ISOMETRY_TOL = 1e-10
PROB_SUM_TOL = 1e-10
RECONSTRUCT_TOL = 1e-8
DROP_PROBABILITY = 1e-14


@dataclass(frozen=True, eq=False)
class IsometryParams:
    """``m x 2`` complex matrix with orthonormal columns, ``2 <= m <= 4``."""

    entries: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.entries, dtype=complex)
        if u.ndim != 2 or u.shape[1] != 2 or not 2 <= u.shape[0] <= 4:
            raise InvariantViolation("shape", f"isometry must be m x 2 with m in 2..4, got {u.shape}")
        dev = float(np.max(np.abs(u.conj().T @ u - np.eye(2))))
        if dev > ISOMETRY_TOL:
            raise InvariantViolation("isometry", f"max |U^H U - I| = {dev:.3e}")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "entries", u)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, m: int = 2) -> "IsometryParams":
        return cls(np.eye(m, 2, dtype=complex))

    @classmethod
    def random(cls, m: int, rng: np.random.Generator) -> "IsometryParams":
        g = rng.standard_normal((m, 2)) + 1j * rng.standard_normal((m, 2))
        q, _ = np.linalg.qr(g)
        return cls(q)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Pure-state ensemble ``[(p_k, psi_k)]``."""

    members: tuple

    def __post_init__(self):
        members = tuple((float(p), psi) for p, psi in self.members)
        if not 1 <= len(members) <= 4:
            raise InvariantViolation("members", f"need 1..4 members, got {len(members)}")
        if any(p < 0.0 for p, _ in members):
            raise InvariantViolation("probability", "negative member probability")
        total = sum(p for p, _ in members)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise InvariantViolation("probability", f"probabilities sum to {total!r}")
        object.__setattr__(self, "members", members)

    @property
    def probabilities(self) -> list:
        return [p for p, _ in self.members]

    def density(self) -> np.ndarray:
        return sum(p * psi.projector() for p, psi in self.members)

    def residual(self, rho) -> float:
        target = np.asarray(getattr(rho, "matrix", rho))
        return float(np.max(np.abs(self.density() - target)))


def apply_isometry(d: Rank2Decomposition, u: IsometryParams) -> Decomposition:
    """Decomposition generated by ``u``; members below 1e-14 probability are dropped."""
    w = u.entries @ d.weighted_rows()
    members = []
    for row in w:
        p = float(np.vdot(row, row).real)
        if p < DROP_PROBABILITY:
            continue
        members.append((p, PureState(row / math.sqrt(p))))
    total = sum(p for p, _ in members)
    return Decomposition(tuple((p / total, psi) for p, psi in members))


def average_entanglement(dec: Decomposition) -> float:
    """``sum_k p_k E(psi_k)`` with ``E`` the pure-state entanglement in ebits."""
    return sum(p * entanglement_of_concurrence(pure_concurrence(psi)) for p, psi in dec.members)


@dataclass(frozen=True, eq=False)
class OracleResult:
    value: float
    decomposition: Decomposition
    isometry: IsometryParams
    restart: int
    seed: int
    restarts: int
    m: int
    sweeps: int
    residual: float
    values: tuple

    def as_dict(self) -> dict:
        return {
            "min_value": self.value,
            "best_restart": self.restart,
            "seed": self.seed,
            "restarts": self.restarts,
            "m": self.m,
            "sweeps": self.sweeps,
            "residual": self.residual,
        }


def _start(k: int, m: int, seed: int) -> np.ndarray:
    if k == 0:
        # the eigendecomposition itself is always one of the starts
        return np.eye(m, 2, dtype=complex)
    rng = np.random.default_rng([int(seed) & SEED_MASK, k])
    return IsometryParams.random(m, rng).entries


def minimize_ef(rho, m: int = 4, restarts: int = 64, seed: int = 0, *,
                rank_tol: float = 1e-10, max_sweeps: int = 500, rel_tol: float = 1e-8,
                workers: int = 1) -> OracleResult:
    """Minimum average entanglement over decompositions of a rank <= 2 state.

    Start 0 is the eigendecomposition; starts ``1..restarts-1`` are random
    isometries seeded by ``(seed, k)``. Each start is refined independently,
    and the winner is chosen by ``(value, start index)``, so the result does
    not depend on ``workers``.

    Raises
    ------
    RankTooHigh
        If ``rho`` has rank above two.
    """
    if not 2 <= m <= 4:
        raise ValueError(f"m must be in 2..4, got {m}")
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    rho = as_density(rho)
    d = eigen_rank2(rho, rank_tol)

    if d.v2 <= rank_tol:
        dec = Decomposition(((1.0, d.psi1),))
        return OracleResult(
            value=average_entanglement(dec), decomposition=dec,
            isometry=IsometryParams.identity(m), restart=0, seed=seed, restarts=restarts,
            m=m, sweeps=0, residual=dec.residual(rho), values=(average_entanglement(dec),),
        )

    w = d.weighted_rows()

    def run(k):
        return _kernels.refine_isometry(w, _start(k, m, seed), max_sweeps, rel_tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(restarts)))
    else:
        results = [run(k) for k in range(restarts)]

    best = min(range(restarts), key=lambda k: (results[k][0], k))
    _, u, sweeps = results[best]
    # re-orthonormalize to wash out accumulated rotation rounding
    q, r = np.linalg.qr(u)
    u = IsometryParams(q * np.sign(np.diag(r)))
    dec = apply_isometry(d, u)
    return OracleResult(
        value=average_entanglement(dec), decomposition=dec, isometry=u, restart=best, seed=seed,
        restarts=restarts, m=m, sweeps=sweeps, residual=dec.residual(rho),
        values=tuple(float(r[0]) for r in results),
    )


def wootters_gap(rho, **kwargs) -> tuple:
    """``(oracle result, Wootters entanglement, gap)``, with gap = oracle min minus WE."""
    res = minimize_ef(rho, **kwargs)
    we = spectral_concurrence(rho).we_entropy
    return res, we, res.value - we
