import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twoqubit.errors import InvariantViolation, RankTooHigh
from twoqubit.measures import entanglement_of_concurrence, spectral_concurrence
from twoqubit.oracle import (
    Decomposition,
    IsometryParams,
    apply_isometry,
    average_entanglement,
    minimize_ef,
    wootters_gap,
)
from twoqubit.states import (
    Rank2Decomposition,
    basis_state,
    bell_state,
    departure_diag,
    mixture,
    random_rank2,
    to_density,
    werner,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def fig1_state():
    # psi2 = |01> is separable and orthogonal to Phi+
    return Rank2Decomposition.from_pairs(0.1, bell_state("phi+"), 0.9, basis_state(2))


def test_isometry_validation():
    with pytest.raises(InvariantViolation):
        IsometryParams(np.ones((3, 2)))
    with pytest.raises(InvariantViolation):
        IsometryParams(np.eye(5, 2))
    u = IsometryParams.identity(3)
    assert u.m == 3
    with pytest.raises(ValueError):
        u.entries[0, 0] = 2


def test_decomposition_validation():
    psi = bell_state("phi+")
    with pytest.raises(InvariantViolation):
        Decomposition(((0.5, psi),))
    with pytest.raises(InvariantViolation):
        Decomposition(((1.2, psi), (-0.2, psi)))
    with pytest.raises(InvariantViolation):
        Decomposition(tuple((0.2, psi) for _ in range(5)))


@given(seed=seeds, m=st.integers(2, 4))
def test_isometry_reproduces_state(seed, m):
    d = random_rank2(seed)
    rho = to_density(d)
    u = IsometryParams.random(m, np.random.default_rng(seed))
    dec = apply_isometry(d, u)
    assert dec.residual(rho) <= 1e-12
    assert sum(dec.probabilities) == pytest.approx(1.0, abs=1e-12)


@given(seed=seeds, m=st.integers(2, 4))
def test_every_decomposition_bounded_by_we(seed, m):
    d = random_rank2(seed)
    we = spectral_concurrence(to_density(d)).we_entropy
    dec = apply_isometry(d, IsometryParams.random(m, np.random.default_rng(seed + 1)))
    assert average_entanglement(dec) >= we - 1e-9


def test_identity_isometry_is_eigendecomposition():
    d = fig1_state()
    dec = apply_isometry(d, IsometryParams.identity(4))
    assert len(dec.members) == 2
    assert average_entanglement(dec) == pytest.approx(0.1, abs=1e-15)


def test_bell_projector():
    res, we, gap = wootters_gap(bell_state("psi-").to_density())
    assert res.value == pytest.approx(1.0, abs=1e-12)
    assert abs(gap) <= 1e-6
    assert len(res.decomposition.members) == 1


def test_separable_diagonal():
    rho = mixture((0.3, 0.7), (basis_state(1), basis_state(4)))
    assert minimize_ef(rho, restarts=8).value <= 1e-6


def test_fig1_state_below_eigen_average():
    rho = to_density(fig1_state())
    res = minimize_ef(rho, restarts=16, seed=1)
    target = entanglement_of_concurrence(0.1)
    assert res.value == pytest.approx(target, abs=1e-6)
    assert res.value < 0.1
    assert res.residual <= 1e-10


def test_separable_mixture_of_entangled_states():
    # equal Bell mixture is separable though both members are maximally entangled
    from twoqubit.states import bell_mixture
    res = minimize_ef(bell_mixture("phi+", "psi-", 0.5), restarts=16)
    assert res.value <= 1e-6


def test_rank_too_high():
    with pytest.raises(RankTooHigh):
        minimize_ef(werner(0.9))


def test_bad_arguments():
    rho = to_density(random_rank2(0))
    with pytest.raises(ValueError):
        minimize_ef(rho, m=5)
    with pytest.raises(ValueError):
        minimize_ef(rho, restarts=0)


def test_deterministic_and_worker_independent():
    rho = to_density(random_rank2(77))
    a = minimize_ef(rho, restarts=8, seed=5)
    b = minimize_ef(rho, restarts=8, seed=5)
    c = minimize_ef(rho, restarts=8, seed=5, workers=4)
    assert a.value == b.value == c.value
    assert a.values == c.values
    np.testing.assert_array_equal(a.isometry.entries, c.isometry.entries)


def test_result_metadata():
    rho = departure_diag(2, 0.6)
    res = minimize_ef(rho, m=3, restarts=4, seed=9)
    doc = res.as_dict()
    assert doc["seed"] == 9 and doc["restarts"] == 4 and doc["m"] == 3
    assert len(res.values) == 4
    assert res.value <= min(res.values) + 1e-12
    assert res.isometry.m == 3


@settings(max_examples=10)
@given(seed=seeds)
def test_oracle_meets_wootters(seed):
    rho = to_density(random_rank2(seed))
    res, we, gap = wootters_gap(rho, restarts=16, seed=seed)
    assert gap >= -1e-6
    assert gap <= 1e-3
