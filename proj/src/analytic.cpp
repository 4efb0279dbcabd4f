#include "verigen/analytic.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "verigen/normal.hpp"

namespace verigen {

namespace {

// Standard adaptive Simpson refinement: a panel is accepted when the
// Richardson error estimate (S_left + S_right - S_whole)/15 drops under its
// tolerance share, otherwise it splits. Depth is bounded for safety; the
// integrands here are smooth and never get near the bound.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Unit-width panels, each refined adaptively to the per-panel tolerance.
// Seeding with fixed panels matters: the integrands here concentrate in a
// narrow peak (near z = 3 for large n), and a single coarse panel over the
// whole range would sample right past it and stop refining.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_tol) {
  double total = 0.0;
  for (double lo = a; lo < b - 0.5; lo += 1.0) {
    double hi = lo + 1.0;
    double m = 0.5 * (lo + hi);
    double fa = f(lo), fm = f(m), fb = f(hi);
    double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(f, lo, hi, fa, fm, fb, whole, panel_tol, 48);
  }
  return total;
}

void validate_count(int n, int minimum) {
  if (n < minimum) throw std::invalid_argument("candidate count out of domain");
}

DiscreteResult discrete_result(double p_g, double p_v1, double p_v0, int n) {
  double q = p_g * p_v1 + (1.0 - p_g) * (1.0 - p_v0);
  double none_positive = q < 1.0 ? std::exp(n * std::log1p(-q)) : 0.0;
  // q = 0 or 1 means the labels carry no information and selection is a
  // uniform pick; the guarded terms below reduce to p_g there.
  double value = 0.0;
  if (q > 0.0) value += (1.0 - none_positive) * p_g * p_v1 / q;
  if (q < 1.0) value += none_positive * p_g * (1.0 - p_v1) / (1.0 - q);
  return DiscreteResult{p_g, value, q};
}

}  // namespace

double expected_reward_naive(const DiscreteGenerator& gen) {
  validate(gen);
  return gen.p_g;
}

DiscreteResult expected_reward_with_verifier_independent(
    const DiscreteGenerator& gen, double p_v, int n) {
  return expected_reward_with_verifier_dependent(gen, p_v, p_v, n);
}

DiscreteResult expected_reward_with_verifier_dependent(
    const DiscreteGenerator& gen, double p_v1, double p_v0, int n) {
  validate(gen);
  validate(DiscreteVerifier{DependentVerifier{p_v1, p_v0}});
  validate_count(n, 1);
  return discrete_result(gen.p_g, p_v1, p_v0, n);
}

double approx_expected_max_std_normal(int n) {
  validate_count(n, 2);
  double s = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  double ln4pi = std::log(4.0 * 3.14159265358979323846);
  return s - (std::log(std::log(static_cast<double>(n))) + ln4pi) / (2.0 * s) +
         kEulerGamma / s;
}

double exact_expected_max_std_normal(int n) {
  validate_count(n, 1);
  if (n == 1) return 0.0;
  auto integrand = [n](double z) {
    // density of the max of n iid standard normals, times z
    return n * z * std_normal_pdf(z) *
           std::pow(std_normal_cdf(z), n - 1);
  };
  // tail mass beyond |z| = 10 is below 1e-22, far under the tolerance
  return integrate(integrand, -10.0, 10.0, 1e-10);
}

ContinuousResult delta_ver(double sigma_g, double sigma_v, int n,
                           double mu_g) {
  if (!(sigma_g > 0.0)) throw std::invalid_argument("sigma_g must be > 0");
  if (!(sigma_v >= 0.0)) throw std::invalid_argument("sigma_v must be >= 0");
  validate_count(n, 1);
  double spread = std::sqrt(sigma_g * sigma_g + sigma_v * sigma_v);
  double rho = sigma_g / spread;
  double ez = n == 1 ? 0.0 : approx_expected_max_std_normal(n);
  double delta = ez * sigma_g * sigma_g / spread;
  return ContinuousResult{rho, ez, delta, mu_g + delta};
}

}  // namespace verigen
