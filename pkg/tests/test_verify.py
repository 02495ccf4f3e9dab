import pytest

from twoqubit.measures import closed_form_sq
from twoqubit.states import random_rank2
from twoqubit.verify import VerifyConfig, faulty_closed_form_sq, run_all


def test_config_validation():
    with pytest.raises(ValueError):
        VerifyConfig(trials=0)
    with pytest.raises(ValueError):
        VerifyConfig(tol=0.0)


def test_all_suites_pass():
    results = run_all(VerifyConfig(trials=100, oracle_trials=2, oracle_restarts=8))
    bad = [(r.name, r.max_error) for r in results if not r.passed]
    assert not bad
    names = {r.name for r in results}
    assert {"theorem_equivalence", "corollary1_bounds", "gauge_invariance",
            "degeneracy_invariance", "corollary_consistency", "oracle_not_below_we"} <= names


def test_corollary_branches_exercised():
    results = run_all(VerifyConfig(trials=200, oracle_trials=1, oracle_restarts=4))
    fired = next(r for r in results if r.name == "corollary_consistency").fired
    assert all(count > 0 for branch, count in fired.items() if branch.value != "general")


def test_injected_fault_is_caught():
    results = {r.name: r for r in run_all(VerifyConfig(trials=20, oracle_trials=1, oracle_restarts=4),
                                          inject_fault=True)}
    assert not results["theorem_equivalence"].passed
    assert not results["corollary_consistency"].passed
    seed, err, dump = results["theorem_equivalence"].failures[0]
    assert seed == 42 and err > 1e-3
    assert "rho = " in dump()


def test_fault_differs_only_in_sign():
    d = random_rank2(0)
    assert faulty_closed_form_sq(d) > closed_form_sq(d)


def test_seeds_are_offsets():
    cfg = VerifyConfig(trials=5, seed=100, oracle_trials=1, oracle_restarts=2)
    r = run_all(cfg, inject_fault=True)[0]
    assert [s for s, _, _ in r.failures] == [100, 101, 102, 103, 104]
