#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "verigen/analytic.hpp"
#include "verigen/reward_models.hpp"

namespace verigen::mc {

// Worker count from VERIGEN_THREADS; 0 or unset means one worker per
// hardware thread. Every entry point below treats workers = 0 as "use this".
int default_workers();

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
};

struct DiscreteModel {
  DiscreteGenerator gen;
  DiscreteVerifier verifier;
};

struct ContinuousModel {
  ContinuousRewardModel reward;
  ContinuousVerifier verifier;
};

using Model = std::variant<DiscreteModel, ContinuousModel>;

enum class Measure { expected_reward, improvement_over_first_sample };

/*
 * One selection round per trial: draw n candidates, score them, keep the
 * argmax, record the measure. Trial i draws from the stream (seed, i), so
 * results are a pure function of the plan, independent of execution order.
 */
struct TrialPlan {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  int n = 1;
  Model model = DiscreteModel{};
  Measure measure = Measure::expected_reward;
};

void validate(const TrialPlan& plan);

Estimate run(const TrialPlan& plan, int workers = 0);

// Convenience wrappers that also check the model kind matches.
Estimate run_discrete(const TrialPlan& plan, int workers = 0);
Estimate run_continuous_improvement(const TrialPlan& plan, int workers = 0);

enum class Axis { n, sigma_g, sigma_v, p_v, p_g };

struct SweepPoint {
  double value = 0.0;
  std::optional<Estimate> estimate;  // empty when the value is out of domain
  std::optional<double> analytic;    // closed-form companion where one exists
  std::string error;                 // diagnostic for skipped points
};

// Throws std::invalid_argument when the axis has no meaning for the plan's
// model (for example sigma_v on a discrete model).
void check_axis_applies(const TrialPlan& base, Axis axis);

// Applies one axis value to the plan. Returns an empty string on success
// and a diagnostic (leaving the plan untouched) when the value is outside
// the axis domain.
std::string apply_axis_value(TrialPlan& plan, Axis axis, double value);

// Applies each value to a copy of the base plan and runs it. Out-of-domain
// values produce an error entry and the sweep continues; an axis that does
// not apply to the base model at all is a caller error and throws.
std::vector<SweepPoint> sweep(const TrialPlan& base, Axis axis,
                              const std::vector<double>& values,
                              int workers = 0);

// Closed form matching the plan's measure, when the model has one.
std::optional<double> analytic_companion(const TrialPlan& plan);

}  // namespace verigen::mc
