#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "verigen/analytic.hpp"
#include "verigen/envs.hpp"
#include "verigen/montecarlo.hpp"
#include "verigen/policies.hpp"

namespace py = pybind11;

namespace {

using namespace verigen;

py::dict discrete_dict(const DiscreteResult& r) {
  py::dict out;
  out["expected_naive"] = r.expected_naive;
  out["expected_with_verifier"] = r.expected_with_verifier;
  out["q"] = r.q;
  return out;
}

py::dict estimate_dict(const mc::Estimate& e) {
  py::dict out;
  out["mean"] = e.mean;
  out["std_error"] = e.std_error;
  out["trials"] = e.trials;
  return out;
}

py::dict stats_dict(const policy::BatchStats& s) {
  py::dict out;
  out["episodes"] = s.episodes;
  out["successes"] = s.successes;
  out["failure_rate"] = s.failure_rate();
  out["failure_std_error"] = s.failure_std_error();
  out["mean_steps"] = s.mean_steps();
  out["mean_steps_std_error"] = s.mean_steps_std_error();
  out["valid_rate"] = s.valid_rate();
  return out;
}

policy::PolicyKind policy_from_name(const std::string& name) {
  if (name == "naive_generator") return policy::PolicyKind::naive_generator;
  if (name == "verifier_selection")
    return policy::PolicyKind::verifier_selection;
  if (name == "oracle_sampler") return policy::PolicyKind::oracle_sampler;
  if (name == "oracle_verifier") return policy::PolicyKind::oracle_verifier;
  if (name == "history_conditioned_generator")
    return policy::PolicyKind::history_conditioned_generator;
  throw std::invalid_argument("unknown policy: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Best-of-n selection with verifiers: analytic forms, "
            "deterministic monte-carlo, and toy environments";

  m.def(
      "expected_reward_naive",
      [](double p_g) { return expected_reward_naive(DiscreteGenerator{p_g}); },
      py::arg("p_g"),
      "Expected reward of a single unverified sample (just p_g).");

  m.def(
      "expected_reward_with_verifier",
      [](double p_g, double p_v, int n) {
        return discrete_dict(expected_reward_with_verifier_independent(
            DiscreteGenerator{p_g}, p_v, n));
      },
      py::arg("p_g"), py::arg("p_v"), py::arg("n"),
      "Closed-form best-of-n reward with an accuracy-p_v verifier.");

  m.def(
      "expected_reward_with_verifier_dependent",
      [](double p_g, double p_v1, double p_v0, int n) {
        return discrete_dict(expected_reward_with_verifier_dependent(
            DiscreteGenerator{p_g}, p_v1, p_v0, n));
      },
      py::arg("p_g"), py::arg("p_v1"), py::arg("p_v0"), py::arg("n"),
      "Closed form with class-conditional verifier accuracies.");

  m.def("approx_expected_max_std_normal", &approx_expected_max_std_normal,
        py::arg("n"),
        "Extreme-value series for E[max of n std normals] (n >= 2).");
  m.def("exact_expected_max_std_normal", &exact_expected_max_std_normal,
        py::arg("n"), "Quadrature value of E[max of n std normals].");

  m.def(
      "delta_ver",
      [](double sigma_g, double sigma_v, int n, double mu_g) {
        const ContinuousResult r = delta_ver(sigma_g, sigma_v, n, mu_g);
        py::dict out;
        out["rho"] = r.rho;
        out["ez_n_approx"] = r.ez_n_approx;
        out["delta_ver"] = r.delta_ver;
        out["expected_with_verifier"] = r.expected_with_verifier;
        return out;
      },
      py::arg("sigma_g"), py::arg("sigma_v"), py::arg("n"),
      py::arg("mu_g") = 0.0,
      "Series-based best-of-n gain for normal rewards with noisy scores.");

  m.def(
      "run_discrete",
      [](double p_g, double p_v, int n, std::uint64_t trials,
         std::uint64_t seed) {
        mc::TrialPlan plan;
        plan.model = mc::DiscreteModel{DiscreteGenerator{p_g},
                                       IndependentVerifier{p_v}};
        plan.n = n;
        plan.trials = trials;
        plan.seed = seed;
        plan.measure = mc::Measure::expected_reward;
        return estimate_dict(mc::run(plan));
      },
      py::arg("p_g"), py::arg("p_v"), py::arg("n"), py::arg("trials"),
      py::arg("seed"),
      "Deterministic monte-carlo estimate of the discrete best-of-n "
      "reward.");

  m.def(
      "run_normal_improvement",
      [](double sigma_g, double sigma_v, int n, std::uint64_t trials,
         std::uint64_t seed, double mu_g) {
        mc::TrialPlan plan;
        plan.model = mc::ContinuousModel{NormalReward{mu_g, sigma_g},
                                         AdditiveNoiseVerifier{sigma_v}};
        plan.n = n;
        plan.trials = trials;
        plan.seed = seed;
        plan.measure = mc::Measure::improvement_over_first_sample;
        return estimate_dict(mc::run(plan));
      },
      py::arg("sigma_g"), py::arg("sigma_v"), py::arg("n"),
      py::arg("trials"), py::arg("seed"), py::arg("mu_g") = 0.0,
      "Monte-carlo improvement of best-of-n over a single draw.");

  m.def(
      "run_door",
      [](const std::string& policy, int n, std::uint64_t episodes,
         std::uint64_t seed, double quality_lo, double quality_hi,
         double open_threshold, int max_steps, double lam, double flip_p_v) {
        policy::DoorBatchPlan plan;
        plan.policy.kind = policy_from_name(policy);
        plan.policy.n = n;
        plan.policy.lambda = lam;
        plan.policy.flip_p_v = flip_p_v;
        plan.generator = policy::DoorGenerator{quality_lo, quality_hi};
        plan.open_threshold = open_threshold;
        plan.max_steps = max_steps;
        plan.episodes = episodes;
        plan.seed = seed;
        return stats_dict(policy::run_door_batch(plan));
      },
      py::arg("policy"), py::arg("n"), py::arg("episodes"), py::arg("seed"),
      py::arg("quality_lo") = 0.5, py::arg("quality_hi") = 1.0,
      py::arg("open_threshold") = 0.05, py::arg("max_steps") = 30,
      py::arg("lam") = 0.5, py::arg("flip_p_v") = 1.0,
      "Batch of door episodes under the named policy.");

  m.def(
      "run_rod",
      [](const std::string& policy, int n, std::uint64_t episodes,
         std::uint64_t seed, double epsilon, int max_steps,
         std::uint64_t com_grid, double lam) {
        policy::RodBatchPlan plan;
        plan.policy.kind = policy_from_name(policy);
        plan.policy.n = n;
        plan.policy.lambda = lam;
        plan.epsilon = epsilon;
        plan.max_steps = max_steps;
        plan.episodes = episodes;
        plan.seed = seed;
        return stats_dict(com_grid > 0 ? policy::run_rod_grid(plan, com_grid)
                                       : policy::run_rod_batch(plan));
      },
      py::arg("policy"), py::arg("n"), py::arg("episodes"), py::arg("seed"),
      py::arg("epsilon") = 0.05, py::arg("max_steps") = 5,
      py::arg("com_grid") = 0, py::arg("lam") = 0.5,
      "Batch of rod episodes; com_grid > 0 sweeps an exhaustive grid of "
      "centers instead of sampling them.");

  m.def(
      "theoretical_com_interval",
      [](const std::vector<std::pair<double, std::string>>& failures,
         double epsilon) {
        env::RodHistory history;
        for (const auto& [x, tilt] : failures) {
          env::RodEvent event;
          event.lift_point = x;
          event.outcome.success = false;
          if (tilt == "left")
            event.outcome.tilt = env::Tilt::left;
          else if (tilt == "right")
            event.outcome.tilt = env::Tilt::right;
          else
            throw std::invalid_argument("tilt must be 'left' or 'right'");
          history.push_back(event);
        }
        const env::ComInterval interval =
            env::theoretical_com_interval(history, epsilon);
        return py::make_tuple(interval.lo, interval.hi);
      },
      py::arg("failures"), py::arg("epsilon") = 0.05,
      "Interval of centers of mass consistent with (lift_point, tilt) "
      "failures.");
}
