import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from twoqubit.errors import DomainError
from twoqubit.measures import (
    SIGMA_YY,
    Branch,
    Method,
    binary_entropy,
    closed_form_concurrence,
    closed_form_sq,
    closed_form_xy,
    combo_concurrences,
    complex_concurrence,
    concurrence_bounds,
    corollary_branch,
    corollary_branches,
    eigen_average_entanglement,
    entanglement_of_concurrence,
    magic_coefficients,
    magic_concurrence,
    polarized_vector,
    pure_concurrence,
    reduced_state,
    spectral_concurrence,
    spin_flip,
    wootters_eigenvalues,
    wootters_lambdas,
    wootters_matrix,
    z_of_concurrence,
)
from twoqubit.states import (
    BellKind,
    PureState,
    Rank2Decomposition,
    basis_state,
    bell_mixture,
    bell_mixture_decomposition,
    bell_state,
    departure_diag,
    departure_orth_decomposition,
    product_chi,
    random_pure,
    random_rank2,
    to_density,
    werner,
)

seeds = st.integers(min_value=0, max_value=2**63)


def mp_concurrence(rho, dps=40):
    """Concurrence from the eigenvalues of rho rho~ in extended precision."""
    with mpmath.workdps(dps):
        r = mpmath.matrix(rho.tolist())
        f = mpmath.matrix(spin_flip(rho).tolist())
        ev = mpmath.eig(r * f, left=False, right=False)
        lam = sorted((mpmath.sqrt(abs(mpmath.re(e))) for e in ev), reverse=True)
        return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0))


def numpy_concurrence(rho):
    ev = np.linalg.eigvals(rho @ spin_flip(rho))
    lam = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)


# pure states

def test_bell_states_maximally_entangled():
    for k in BellKind:
        psi = bell_state(k)
        assert pure_concurrence(psi) == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(polarized_vector(psi), 0.0, atol=1e-15)


def test_product_state_unentangled():
    u = np.array([0.6, 0.8j])
    w = np.array([cmath.exp(0.3j), 0.0])
    psi = PureState(np.kron(u, w))
    assert complex_concurrence(psi) == 0
    assert np.linalg.norm(polarized_vector(psi, "A")) == pytest.approx(1.0)


def test_complex_concurrence_value():
    psi = PureState([0.5, 0.5j, 0.5, -0.5j])
    # 2(ad - bc) = 2(-0.25j - 0.25j)
    assert complex_concurrence(psi) == pytest.approx(-1j)


@given(seed=seeds)
def test_magic_basis_agrees(seed):
    psi = random_pure(seed)
    assert abs(pure_concurrence(psi) - magic_concurrence(psi)) <= 1e-12
    alpha = magic_coefficients(psi)
    assert np.sum(np.abs(alpha) ** 2) == pytest.approx(1.0, abs=1e-14)


@given(seed=seeds)
def test_polarization_identity(seed):
    psi = random_pure(seed)
    c = pure_concurrence(psi)
    for side in "AB":
        xi = polarized_vector(psi, side)
        assert abs(float(xi @ xi) + c * c - 1.0) <= 1e-10


def test_reduced_state():
    psi = PureState(np.kron([0.6, 0.8], [1.0, 0.0]))
    np.testing.assert_allclose(reduced_state(psi, "A"), [[0.36, 0.48], [0.48, 0.64]], atol=1e-15)
    np.testing.assert_allclose(reduced_state(psi, "B"), [[1, 0], [0, 0]], atol=1e-15)
    np.testing.assert_allclose(polarized_vector(psi, "A"), [0.96, 0.0, -0.28], atol=1e-15)
    with pytest.raises(ValueError):
        reduced_state(psi, "C")


# spin flip and spectral route

@given(seed=seeds)
def test_spin_flip_involution(seed):
    rho = to_density(random_rank2(seed)).matrix
    f = spin_flip(rho)
    np.testing.assert_allclose(spin_flip(f), rho, atol=1e-15)
    assert np.trace(f).real == pytest.approx(1.0)
    assert np.linalg.eigvalsh(f)[0] >= -1e-14


def test_sigma_yy():
    sy = np.array([[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(SIGMA_YY, np.kron(sy, sy))


def test_spin_flip_of_pure_state_is_rank_one():
    psi = random_pure(3)
    f = spin_flip(psi.projector())
    yy_psi = SIGMA_YY @ psi.amplitudes.conj()
    np.testing.assert_allclose(f, np.outer(yy_psi, yy_psi.conj()), atol=1e-15)


@pytest.mark.parametrize("seed", range(6))
def test_spectral_matches_extended_precision(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    # lean towards the singlet so that C > 0 for some seeds
    rho = 0.5 * rho + 0.5 * bell_state("psi-").projector()
    assert spectral_concurrence(rho).concurrence == pytest.approx(mp_concurrence(rho), abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_spectral_rank2_matches_extended_precision(seed):
    rho = to_density(random_rank2(seed)).matrix
    assert spectral_concurrence(rho).concurrence == pytest.approx(mp_concurrence(rho), abs=1e-12)


@given(seed=seeds)
def test_spectral_full_rank_matches_numpy(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    assume(np.linalg.eigvalsh(rho)[0] > 1e-3)
    assert spectral_concurrence(rho).concurrence == pytest.approx(numpy_concurrence(rho), abs=1e-9)


@pytest.mark.parametrize("w", [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0])
def test_werner(w):
    rep = spectral_concurrence(werner(w))
    assert rep.concurrence == pytest.approx(max(0.0, (3 * w - 1) / 2), abs=1e-12)
    assert rep.method is Method.spectral


@given(seed=seeds)
def test_lambdas_are_sqrt_of_wootters_spectrum(seed):
    rho = to_density(random_rank2(seed))
    lam = np.array(wootters_lambdas(rho))
    np.testing.assert_allclose(lam ** 2, wootters_eigenvalues(rho), atol=1e-12)
    r = wootters_matrix(rho)
    np.testing.assert_allclose(r, r.conj().T, atol=0)


def test_pure_state_spectral():
    psi = random_pure(9)
    rep = spectral_concurrence(psi.to_density())
    assert rep.concurrence == pytest.approx(pure_concurrence(psi), abs=1e-10)
    assert rep.lambdas[1] == pytest.approx(0.0, abs=1e-12)


# entropy

def test_binary_entropy_values():
    # extended-precision reference
    assert binary_entropy(0.9) == pytest.approx(0.4689955935892812, abs=1e-15)
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


@pytest.mark.parametrize("c, expected", [
    (0.5, 0.35457890266526988),
    (0.1, 0.025266127727119876),
    (0.4, 0.25022491161107054),
    (1e-4, 7.5045299674057639e-08),
])
def test_entanglement_of_concurrence_reference(c, expected):
    assert entanglement_of_concurrence(c) == pytest.approx(expected, rel=1e-13)


def test_entanglement_endpoints():
    assert entanglement_of_concurrence(0.0) == 0.0
    assert entanglement_of_concurrence(1.0) == 1.0
    assert z_of_concurrence(1.0) == 0.5
    assert z_of_concurrence(0.0) == 1.0


def test_entanglement_small_c_keeps_precision():
    # naive 1 - z cancels to zero for c ~ 1e-9
    assert entanglement_of_concurrence(1e-9) > 0.0


def test_entanglement_monotone():
    grid = np.linspace(0, 1, 2001)
    assert np.all(np.diff([entanglement_of_concurrence(c) for c in grid]) >= 0)


@pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        entanglement_of_concurrence(bad)
    with pytest.raises(DomainError):
        binary_entropy(bad)


def test_slack_is_clamped():
    assert entanglement_of_concurrence(1.0 + 1e-13) == 1.0
    assert binary_entropy(-1e-13) == 0.0


# closed form

@given(seed=seeds)
def test_closed_form_matches_spectral(seed):
    d = random_rank2(seed)
    spec = spectral_concurrence(to_density(d))
    assert abs(closed_form_sq(d) - spec.concurrence_sq) <= 1e-9


@given(seed=seeds)
def test_omegas_are_wootters_eigenvalues(seed):
    d = random_rank2(seed)
    inter = closed_form_xy(d)
    ev = wootters_eigenvalues(to_density(d))
    assert inter.omega_plus == pytest.approx(ev[0], abs=1e-9)
    assert inter.omega_minus == pytest.approx(ev[1], abs=1e-9)
    assert inter.omega_plus >= inter.omega_minus >= 0


@given(seed=seeds)
def test_bounds(seed):
    d = random_rank2(seed)
    lo, hi = concurrence_bounds(d)
    c2 = closed_form_sq(d)
    assert lo - 1e-9 <= c2 <= hi + 1e-9


@given(seed=seeds, theta=st.floats(0, 2 * math.pi))
def test_gauge_invariance(seed, theta):
    d = random_rank2(seed)
    rot = Rank2Decomposition(d.v1, d.v2, d.psi1, PureState(cmath.exp(1j * theta) * d.psi2.amplitudes))
    assert abs(closed_form_sq(d) - closed_form_sq(rot)) <= 1e-12
    assert corollary_branch(d).branch == corollary_branch(rot).branch


def test_closed_form_report():
    d = bell_mixture_decomposition("phi+", "psi-", 0.25)
    rep = closed_form_concurrence(d)
    assert rep.method is Method.closed_form
    assert rep.concurrence == pytest.approx(0.5, abs=1e-15)
    assert rep.lambdas[0] == pytest.approx(0.75) and rep.lambdas[1] == pytest.approx(0.25)
    assert rep.intermediates.omega_plus == pytest.approx(0.5625)
    assert rep.branch is Branch.corollary3
    assert rep.lower_bound == pytest.approx(0.25)
    assert set(rep.as_dict()) >= {"branch", "omega_plus", "omega_minus", "x", "y"}


def test_combo_concurrences_bell_pair():
    d = bell_mixture_decomposition("phi+", "psi-", 0.25)
    cc = combo_concurrences(d)
    assert abs(cc.c1) == pytest.approx(1.0) and abs(cc.c2) == pytest.approx(1.0)
    assert abs(cc.diff) <= 1e-15


def test_pure_limit():
    psi = random_pure(4)
    other = PureState.normalized(np.array([1, 2j, 3, 4]) - np.vdot(psi.amplitudes, [1, 2j, 3, 4]) * psi.amplitudes)
    d = Rank2Decomposition(1.0, 0.0, psi, other)
    assert closed_form_sq(d) == pytest.approx(pure_concurrence(psi) ** 2, abs=1e-14)


# corollary branches

def test_corollary3_for_bell_pairs():
    for a in BellKind:
        for b in BellKind:
            if a != b:
                br = corollary_branch(bell_mixture_decomposition(a, b, 0.3))
                assert br.branch is Branch.corollary3
                assert br.predicted_sq == pytest.approx(0.16, abs=1e-12)


def test_corollary4_separable_eigenvector():
    d = Rank2Decomposition.from_pairs(0.6, bell_state("phi+"), 0.4, basis_state(2))
    br = corollary_branch(d)
    assert br.branch is Branch.corollary4
    assert br.predicted_sq == pytest.approx(0.36)
    assert closed_form_sq(d) == pytest.approx(0.36, abs=1e-12)


def test_departure_orth_fires_corollary3():
    x = np.array([0.3 + 0.4j, 0.5, -0.2j])
    x /= np.linalg.norm(x)
    d = departure_orth_decomposition(0.7, *x)
    names = [b.branch for b in corollary_branches(d)]
    assert Branch.corollary3 in names


def test_corollary2_real_eigenvectors_up_to_phase():
    rng = np.random.default_rng(8)
    a, b = rng.standard_normal(4), rng.standard_normal(4)
    a /= np.linalg.norm(a)
    b -= (a @ b) * a
    b /= np.linalg.norm(b)
    d = Rank2Decomposition(0.7, 0.3, PureState(a * 1j), PureState(b * cmath.exp(0.4j)))
    br = corollary_branch(d)
    assert br.branch.name.startswith("corollary2")
    assert br.predicted_sq == pytest.approx(closed_form_sq(d), abs=1e-12)


def test_general_branch():
    assert corollary_branch(random_rank2(5)).branch is Branch.general
    assert corollary_branch(random_rank2(5)).predicted_sq is None


@given(seed=seeds)
def test_all_firing_branches_agree(seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    x /= np.linalg.norm(x)
    d = departure_orth_decomposition(rng.uniform(), *x)
    exact = closed_form_sq(d)
    for br in corollary_branches(d):
        assert abs(br.predicted_sq - exact) <= 1e-8


# examples with known values

@pytest.mark.parametrize("g", [0.0, 0.1, 0.5, 0.85, 1.0])
def test_bell_mixture_law(g):
    rho = bell_mixture("psi+", "phi-", g)
    assert spectral_concurrence(rho).concurrence == pytest.approx(abs(1 - 2 * g), abs=1e-12)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_departure_diag_concurrence(i):
    for p in (0.0, 0.3, 0.7, 1.0):
        assert spectral_concurrence(departure_diag(i, p)).concurrence == pytest.approx(p, abs=1e-12)


def test_product_chi_departure():
    d = departure_orth_decomposition(0.4, *product_chi(0.6))
    assert closed_form_concurrence(d).concurrence == pytest.approx(0.4, abs=1e-12)


def test_eigen_average_entanglement():
    d = Rank2Decomposition.from_pairs(0.1, bell_state("phi+"), 0.9, basis_state(2))
    assert eigen_average_entanglement(d) == pytest.approx(0.1, abs=1e-15)
    assert spectral_concurrence(to_density(d)).concurrence == pytest.approx(0.1, abs=1e-12)
