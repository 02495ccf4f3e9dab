"""Randomized verification suites for the closed form and its corollaries.

Trial ``t`` uses seed ``seed + t``, so any failing seed can be regenerated
with ``twoqubit gen random-rank2 --seed S``.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import measures as ms
from .oracle import IsometryParams, apply_isometry, average_entanglement, minimize_ef
from .states import (
    SEED_MASK,
    PureState,
    Rank2Decomposition,
    departure_orth_decomposition,
    random_pure,
    random_rank2,
    to_density,
    write_state,
)


@dataclass
class VerifyConfig:
    trials: int = 1000
    seed: int = 42
    tol: float = 1e-9
    rank_tol: float = 1e-10
    oracle_trials: int = 5
    oracle_restarts: int = 16
    m: int = 4

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be > 0")


@dataclass
class SuiteResult:
    name: str
    tol: float
    trials: int = 0
    max_error: float = 0.0
    failures: list = field(default_factory=list)  # (seed, error, dump)

    def record(self, seed, error, dump=None):
        self.trials += 1
        if not error <= self.max_error:
            self.max_error = error
        if not error <= self.tol:
            self.failures.append((seed, error, dump))

    @property
    def passed(self) -> bool:
        return not self.failures


def faulty_closed_form_sq(d: Rank2Decomposition) -> float:
    """Closed form with the sign of its last term flipped (harness self-test)."""
    cc = ms.combo_concurrences(d)
    v1, v2 = d.v1, d.v2
    diff = cc.diff
    return (v1 * v1 * abs(cc.c1) ** 2 + v2 * v2 * abs(cc.c2) ** 2
            + 0.5 * v1 * v2 * abs(diff) ** 2
            + 0.5 * v1 * v2 * abs(diff * diff - 4.0 * cc.c1 * cc.c2))


def dump_decomposition(d: Rank2Decomposition) -> str:
    lines = [f"v1 = {d.v1!r}", f"v2 = {d.v2!r}",
             "psi1 = " + write_state(d.psi1).strip(),
             "psi2 = " + write_state(d.psi2).strip(),
             "rho = " + write_state(to_density(d)).strip()]
    return "\n".join(lines)


def _seed(cfg, t):
    return (cfg.seed + t) & SEED_MASK


def _rng(seed, salt):
    return np.random.default_rng([seed, salt])


def _orthonormal_pair(a, b):
    a = a / np.linalg.norm(a)
    b = b - np.vdot(a, b) * a
    b = b / np.linalg.norm(b)
    return PureState(a), PureState(b)


def suite_theorem(cfg, closed_sq):
    res = SuiteResult("theorem_equivalence", cfg.tol)
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        d = random_rank2(s)
        err = abs(closed_sq(d) - ms.spectral_concurrence(to_density(d)).concurrence_sq)
        res.record(s, err, lambda d=d: dump_decomposition(d))
    return res


def suite_omega(cfg):
    out = [SuiteResult("omega_spectrum", cfg.tol), SuiteResult("omega_null_eigenvalues", 1e-10)]
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        d = random_rank2(s)
        inter = ms.closed_form_xy(d)
        ev = ms.wootters_eigenvalues(to_density(d))
        dump = lambda d=d: dump_decomposition(d)
        out[0].record(s, max(abs(inter.omega_plus - ev[0]), abs(inter.omega_minus - ev[1])), dump)
        out[1].record(s, max(abs(ev[2]), abs(ev[3])), dump)
    return out


def suite_bounds(cfg, closed_sq):
    res = SuiteResult("corollary1_bounds", cfg.tol)
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        d = random_rank2(s)
        lo, hi = ms.concurrence_bounds(d)
        c2 = closed_sq(d)
        res.record(s, max(lo - c2, c2 - hi, 0.0), lambda d=d: dump_decomposition(d))
    return res


def _gauge_fields(rep):
    inter = rep.intermediates
    return np.array([rep.concurrence_sq, rep.lower_bound, rep.upper_bound,
                     inter.x, inter.y, inter.omega_plus, inter.omega_minus])


def suite_gauge(cfg, closed_sq):
    res = SuiteResult("gauge_invariance", 1e-12)
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        d = random_rank2(s)
        theta = _rng(s, 1).uniform(0.0, 2.0 * math.pi)
        rot = Rank2Decomposition(d.v1, d.v2, d.psi1, PureState(cmath.exp(1j * theta) * d.psi2.amplitudes))
        a, b = ms.closed_form_concurrence(d), ms.closed_form_concurrence(rot)
        err = float(np.max(np.abs(_gauge_fields(a) - _gauge_fields(b))))
        err = max(err, abs(closed_sq(d) - closed_sq(rot)))
        if a.branch != b.branch:
            err = math.inf
        res.record(s, err, lambda d=d: dump_decomposition(d))
    return res


def suite_degeneracy(cfg, closed_sq):
    res = SuiteResult("degeneracy_invariance", cfg.tol)
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        base = random_rank2(s)
        d = Rank2Decomposition(0.5, 0.5, base.psi1, base.psi2)
        rng = _rng(s, 2)
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        q, _ = np.linalg.qr(g)
        p1 = q[0, 0] * d.psi1.amplitudes + q[1, 0] * d.psi2.amplitudes
        p2 = q[0, 1] * d.psi1.amplitudes + q[1, 1] * d.psi2.amplitudes
        mixed = Rank2Decomposition(0.5, 0.5, *_orthonormal_pair(p1, p2))
        res.record(s, abs(closed_sq(d) - closed_sq(mixed)), lambda d=d: dump_decomposition(d))
    return res


def suite_pure(cfg):
    out = [SuiteResult("pure_eq10_vs_magic", 1e-12),
           SuiteResult("pure_polarization", 1e-10),
           SuiteResult("pure_spectral", 1e-10)]
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        psi = random_pure(s)
        c = ms.pure_concurrence(psi)
        dump = lambda psi=psi: "psi = " + write_state(psi).strip()
        out[0].record(s, abs(c - ms.magic_concurrence(psi)), dump)
        xi = ms.polarized_vector(psi, "B")
        out[1].record(s, abs(float(xi @ xi) + c * c - 1.0), dump)
        out[2].record(s, abs(ms.spectral_concurrence(psi.to_density()).concurrence - c), dump)
    return out


def suite_spin_flip(cfg):
    out = [SuiteResult("spin_flip_involution", 1e-12), SuiteResult("spin_flip_psd", 1e-10)]
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        rho = to_density(random_rank2(s)).matrix
        f = ms.spin_flip(rho)
        dump = lambda rho=rho: "rho = " + np.array2string(rho)
        err = float(np.max(np.abs(ms.spin_flip(f) - rho)))
        err = max(err, abs(np.trace(f) - 1.0), float(np.max(np.abs(f - f.conj().T))))
        out[0].record(s, err, dump)
        out[1].record(s, max(0.0, -float(np.linalg.eigvalsh(f)[0])), dump)
    return out


def _real_pair(rng):
    a, b = rng.standard_normal(4), rng.standard_normal(4)
    return _orthonormal_pair(a.astype(complex), b.astype(complex))


def _separable_pair(rng):
    u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    prod = np.kron(u, w)
    other = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    sep, ent = _orthonormal_pair(prod, other)
    return ent, sep


def suite_corollaries(cfg, closed_sq):
    res = SuiteResult("corollary_consistency", 1e-8)
    fired = {b: 0 for b in ms.Branch}
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        rng = _rng(s, 3)
        v = rng.uniform(0.5, 1.0)
        cases = [random_rank2(s)]
        p, q = _real_pair(rng)
        cases.append(Rank2Decomposition(v, 1 - v, p, q))
        ent, sep = _separable_pair(rng)
        cases.append(Rank2Decomposition.from_pairs(v, ent, 1 - v, sep))
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        x /= np.linalg.norm(x)
        cases.append(departure_orth_decomposition(rng.uniform(), *x))
        for d in cases:
            exact = closed_sq(d)
            for br in ms.corollary_branches(d):
                fired[br.branch] += 1
                res.record(s, abs(br.predicted_sq - exact), lambda d=d: dump_decomposition(d))
    res.fired = fired
    return res


def suite_monotone(cfg):
    res = SuiteResult("entropy_monotone", 0.0)
    grid = np.linspace(0.0, 1.0, 1001)
    vals = [ms.entanglement_of_concurrence(c) for c in grid]
    res.record(cfg.seed, max(0.0, -min(np.diff(vals))))
    return res


def suite_oracle_bound(cfg):
    out = [SuiteResult("oracle_pointwise_bound", 1e-9),
           SuiteResult("oracle_reconstruction", 1e-8)]
    for t in range(cfg.trials):
        s = _seed(cfg, t)
        d = random_rank2(s)
        rho = to_density(d)
        we = ms.spectral_concurrence(rho).we_entropy
        rng = _rng(s, 4)
        m = int(rng.integers(2, 5))
        dec = apply_isometry(d, IsometryParams.random(m, rng))
        out[0].record(s, max(0.0, we - average_entanglement(dec)), lambda d=d: dump_decomposition(d))
        out[1].record(s, dec.residual(rho), lambda d=d: dump_decomposition(d))
    return out


def suite_oracle_minimum(cfg):
    out = [SuiteResult("oracle_below_eigen_average", 1e-9),
           SuiteResult("oracle_not_below_we", 1e-6)]
    for t in range(min(cfg.oracle_trials, cfg.trials)):
        s = _seed(cfg, t)
        d = random_rank2(s)
        rho = to_density(d)
        r = minimize_ef(rho, m=cfg.m, restarts=cfg.oracle_restarts, seed=s, rank_tol=cfg.rank_tol)
        we = ms.spectral_concurrence(rho).we_entropy
        dump = lambda d=d: dump_decomposition(d)
        out[0].record(s, max(0.0, r.value - ms.eigen_average_entanglement(d)), dump)
        out[1].record(s, max(0.0, we - r.value), dump)
    return out


def run_all(cfg: VerifyConfig, inject_fault: bool = False) -> list:
    closed_sq = faulty_closed_form_sq if inject_fault else ms.closed_form_sq
    results = [
        suite_theorem(cfg, closed_sq),
        *suite_omega(cfg),
        suite_bounds(cfg, closed_sq),
        suite_gauge(cfg, closed_sq),
        suite_degeneracy(cfg, closed_sq),
        *suite_pure(cfg),
        *suite_spin_flip(cfg),
        suite_corollaries(cfg, closed_sq),
        suite_monotone(cfg),
        *suite_oracle_bound(cfg),
        *suite_oracle_minimum(cfg),
    ]
    return results
