"""Best-of-n selection with verifiers.

Thin Python surface over the C++ core: closed-form expected rewards,
extreme-value approximations, deterministic Monte-Carlo estimates, and the
door / rod environment batch runners.
"""

from ._core import (
    approx_expected_max_std_normal,
    delta_ver,
    exact_expected_max_std_normal,
    expected_reward_naive,
    expected_reward_with_verifier,
    expected_reward_with_verifier_dependent,
    run_discrete,
    run_door,
    run_normal_improvement,
    run_rod,
    theoretical_com_interval,
)

__version__ = "0.1.0"

__all__ = [
    "approx_expected_max_std_normal",
    "delta_ver",
    "exact_expected_max_std_normal",
    "expected_reward_naive",
    "expected_reward_with_verifier",
    "expected_reward_with_verifier_dependent",
    "run_discrete",
    "run_door",
    "run_normal_improvement",
    "run_rod",
    "theoretical_com_interval",
]
