import math

import pytest

import verigen


def test_discrete_closed_form():
    result = verigen.expected_reward_with_verifier(0.9, 0.9, 2)
    assert result["expected_with_verifier"] == pytest.approx(0.972, abs=1e-12)
    assert result["expected_naive"] == 0.9
    assert 0.0 < result["q"] < 1.0

    dependent = verigen.expected_reward_with_verifier_dependent(0.9, 0.9, 0.9, 2)
    assert dependent["expected_with_verifier"] == result["expected_with_verifier"]

    assert verigen.expected_reward_naive(0.35) == 0.35


def test_domain_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        verigen.expected_reward_with_verifier(1.5, 0.9, 2)
    with pytest.raises(ValueError):
        verigen.approx_expected_max_std_normal(1)


def test_expected_max_of_normals():
    exact2 = verigen.exact_expected_max_std_normal(2)
    assert exact2 == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-4)
    assert verigen.exact_expected_max_std_normal(1) == 0.0

    gap = abs(
        verigen.approx_expected_max_std_normal(1000)
        - verigen.exact_expected_max_std_normal(1000)
    )
    assert gap < 0.06


def test_delta_ver_fields():
    result = verigen.delta_ver(1.0, 0.5, 20)
    assert result["rho"] == pytest.approx(1.0 / math.sqrt(1.25), abs=1e-12)
    assert result["delta_ver"] > 0.0
    assert result["expected_with_verifier"] == pytest.approx(
        result["delta_ver"], abs=1e-12
    )


def test_monte_carlo_is_deterministic_and_calibrated():
    first = verigen.run_discrete(0.9, 0.9, 2, 40000, seed=2024)
    again = verigen.run_discrete(0.9, 0.9, 2, 40000, seed=2024)
    assert first == again
    assert first["trials"] == 40000
    assert abs(first["mean"] - 0.972) <= 3.0 * first["std_error"] + 1e-9

    improvement = verigen.run_normal_improvement(1.0, 0.5, 10, 20000, seed=7)
    assert improvement["mean"] > 5.0 * improvement["std_error"]


def test_door_batches():
    stats = verigen.run_door(
        "verifier_selection",
        n=30,
        episodes=4000,
        seed=11,
        quality_lo=1.0,
        quality_hi=1.0,
    )
    assert stats["failure_rate"] == 0.0
    assert stats["mean_steps"] == pytest.approx(2.5, abs=0.08)
    assert stats["valid_rate"] >= 0.99

    naive = verigen.run_door(
        "naive_generator", n=1, episodes=4000, seed=12, quality_lo=1.0, quality_hi=1.0
    )
    assert naive["mean_steps"] > stats["mean_steps"]


def test_rod_batches_and_interval():
    naive = verigen.run_rod("naive_generator", n=1, episodes=10000, seed=13)
    assert naive["failure_rate"] == pytest.approx(0.599, abs=0.02)

    grid = verigen.run_rod(
        "verifier_selection", n=200, episodes=1, seed=14, com_grid=2001
    )
    assert grid["episodes"] == 2001
    assert grid["failure_rate"] == 0.0

    lo, hi = verigen.theoretical_com_interval(
        [(0.5, "right"), (0.2, "left")], epsilon=0.05
    )
    assert lo == pytest.approx(0.25, abs=1e-12)
    assert hi == pytest.approx(0.45, abs=1e-12)
    with pytest.raises(RuntimeError):
        verigen.theoretical_com_interval([(0.5, "right"), (0.9, "left")], 0.05)
