"""Smoke tests for the lcslab python module (built by CMake into the build tree)."""

import lcslab


def letters(s):
    return [ord(c) - ord("a") for c in s]


def test_subsequence_and_containment():
    assert lcslab.is_subsequence(letters("abada"), letters("abracadabra"), 26)
    assert lcslab.almost_contained(letters("macabre"), letters("abracadabra"), 26, 2)
    assert not lcslab.almost_contained(letters("macabre"), letters("abracadabra"), 26, 1)


def test_lcs_and_lnds():
    assert lcslab.lcs_length(letters("abada"), letters("abracadabra"), 26) == 5
    assert lcslab.lnds([2, 2, 1, 2, 0], 3) == 3
    assert lcslab.lnds_restricted([2, 2, 1, 2, 0], 3, 1) == 1


def test_worked_dynamics_example():
    w = [0, 2, 1, 2, 0, 1, 0]  # 1323121 shifted down by one
    wp = [1, 2, 0]             # 231
    assert lcslab.waiting_time(w, wp, 3, 3) == 6
    assert lcslab.waiting_time(w, wp, 3, 0) == 1


def test_q_step_example():
    w = [1] * 16
    for p in (0, 2, 6, 7):
        w[p] = 0
    assert lcslab.q_step([3, 7, 0, 6, 2, 8], w, 2, 0) == [3, 9, 1, 7, 4, 8]


def test_exact_values():
    assert lcslab.random_walk_abs_expectation(2) == "5/4"
    assert lcslab.good_turn_walk_value(2) == "7/4"
    assert lcslab.star_probability(3) == "7/12"
    assert abs(lcslab.delta_game_optimal_value(2, 1) - 1.5) < 1e-12


def test_stationary_distribution_k2():
    pi = dict(((s, b), p) for s, b, p in lcslab.stationary_distribution(2))
    assert abs(pi[(0, "out")] - 0.375) < 1e-12
    assert abs(pi[(2, "in")] - 0.5) < 1e-12


def test_sampling_is_deterministic():
    a = lcslab.sample_word(4, 1000, seed=7, stream=1)
    b = lcslab.sample_word(4, 1000, seed=7, stream=1)
    assert a == b
    assert a != lcslab.sample_word(4, 1000, seed=7, stream=2)
    assert all(0 <= s < 4 for s in a)


def test_run_dynamics_summary():
    out = lcslab.run_dynamics(3, 2, 20, seed=5)
    positions = out["positions"]
    assert positions == sorted(positions)
    assert len(positions) == 3
    assert out["b_count"] >= 0


def test_estimator_report_shape():
    rep = lcslab.estimate_drift(2, 1, 50, samples=200, seed=9, threads=1)
    assert rep["quantity"] == "drift"
    assert rep["samples"] == 200
    lo, hi = rep["ci95"]
    assert lo <= rep["mean"] <= hi
    again = lcslab.estimate_drift(2, 1, 50, samples=200, seed=9, threads=2)
    assert again["mean"] == rep["mean"]


def test_verify_suite_runs():
    rep = lcslab.run_suite("walk")
    assert rep["suite"] == "walk"
    assert not rep["failed"]
    assert len(rep["rows"]) >= 17
