#pragma once

#include "verigen/reward_models.hpp"

namespace verigen {

struct DiscreteResult {
  double expected_naive = 0.0;         // = p_g
  double expected_with_verifier = 0.0;
  double q = 0.0;  // marginal probability a sampled action is labeled positive
};

struct ContinuousResult {
  double rho = 0.0;          // sigma_g / sqrt(sigma_g^2 + sigma_v^2)
  double ez_n_approx = 0.0;  // series value for n >= 2, exact 0 for n = 1
  double delta_ver = 0.0;    // expected gain of best-of-n over a single draw
  double expected_with_verifier = 0.0;  // mu_g + delta_ver
};

// Single unverified draw: the expected reward is just p_g.
double expected_reward_naive(const DiscreteGenerator& gen);

/*
 * Best-of-n with a verifier: draw n candidates, keep one chosen uniformly
 * among the positively labeled ones, falling back to a uniform pick when
 * every label is negative. With q the probability a candidate is labeled
 * positive,
 *
 *   E = (1 - (1-q)^n) * p_g*p_v1 / q  +  (1-q)^n * p_g*(1-p_v1) / (1-q)
 *
 * The first term conditions on at least one positive label, the second on
 * none. (1-q)^n goes through exp(n*log1p(-q)) so large n cannot underflow
 * through a subtraction first.
 */
DiscreteResult expected_reward_with_verifier_independent(
    const DiscreteGenerator& gen, double p_v, int n);

DiscreteResult expected_reward_with_verifier_dependent(
    const DiscreteGenerator& gen, double p_v1, double p_v0, int n);

// Extreme-value series for the expected maximum of n iid standard normals:
//   sqrt(2 ln n) - (ln ln n + ln 4pi) / (2 sqrt(2 ln n)) + gamma / sqrt(2 ln n)
// Valid for n >= 2; the series is singular at n = 1.
double approx_expected_max_std_normal(int n);

// Adaptive quadrature of n*z*phi(z)*Phi(z)^(n-1) over [-10, 10]; serves as
// the precision oracle for the series above. n >= 1.
double exact_expected_max_std_normal(int n);

// Best-of-n gain for a normal generator scored with additive noise:
//   delta = E[Z_(n)] * sigma_g^2 / sqrt(sigma_g^2 + sigma_v^2)
// using the series E[Z_(n)] (exact 0 at n = 1).
ContinuousResult delta_ver(double sigma_g, double sigma_v, int n,
                           double mu_g = 0.0);

}  // namespace verigen
