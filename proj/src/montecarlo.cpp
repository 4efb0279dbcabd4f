#include "verigen/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "verigen/parallel.hpp"
#include "verigen/rng.hpp"

namespace verigen::mc {

namespace {

struct Moments {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sumsq += x * x;
  }

  void merge(const Moments& other) {
    n += other.n;
    sum += other.sum;
    sumsq += other.sumsq;
  }
};

Estimate to_estimate(const Moments& m) {
  Estimate e;
  e.trials = m.n;
  if (m.n == 0) return e;
  e.mean = m.sum / double(m.n);
  if (m.n > 1) {
    double var = (m.sumsq - m.sum * m.sum / double(m.n)) / double(m.n - 1);
    e.std_error = std::sqrt(std::max(var, 0.0) / double(m.n));
  }
  return e;
}

int resolve_workers(int workers) {
  return workers > 0 ? workers : default_workers();
}

std::pair<double, double> verifier_accuracies(const DiscreteVerifier& v) {
  if (const auto* ind = std::get_if<IndependentVerifier>(&v))
    return {ind->p_v, ind->p_v};
  const auto& dep = std::get<DependentVerifier>(v);
  return {dep.p_v1, dep.p_v0};
}

double run_trial(const TrialPlan& plan, Rng& rng) {
  const int n = plan.n;
  thread_local std::vector<double> rewards;
  rewards.resize(n);

  double selected = 0.0;
  if (const auto* dm = std::get_if<DiscreteModel>(&plan.model)) {
    auto [p_v1, p_v0] = verifier_accuracies(dm->verifier);
    thread_local std::vector<double> labels;
    labels.resize(n);
    for (int i = 0; i < n; ++i)
      rewards[i] = rng.bernoulli(dm->gen.p_g) ? 1.0 : 0.0;
    for (int i = 0; i < n; ++i)
      labels[i] = (rewards[i] != 0.0 ? rng.bernoulli(p_v1)
                                     : rng.bernoulli(1.0 - p_v0))
                      ? 1.0
                      : 0.0;
    selected = rewards[select(labels, SelectionRule{n}, rng)];
  } else {
    const auto& cm = std::get<ContinuousModel>(plan.model);
    for (int i = 0; i < n; ++i)
      rewards[i] = sample_true_reward(cm.reward, rng);
    auto scores = score_candidates(rewards, cm.verifier, rng);
    selected = rewards[select(scores, SelectionRule{n}, rng)];
  }
  if (plan.measure == Measure::improvement_over_first_sample)
    return selected - rewards[0];
  return selected;
}

}  // namespace

void check_axis_applies(const TrialPlan& base, Axis axis) {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  switch (axis) {
    case Axis::n:
      return;
    case Axis::p_g:
      if (!std::holds_alternative<DiscreteModel>(base.model))
        fail("axis p_g applies only to discrete models");
      return;
    case Axis::p_v: {
      if (const auto* dm = std::get_if<DiscreteModel>(&base.model)) {
        if (!std::holds_alternative<IndependentVerifier>(dm->verifier))
          fail("axis p_v applies only to an independent-accuracy verifier");
        return;
      }
      const auto& cm = std::get<ContinuousModel>(base.model);
      if (!std::holds_alternative<PairwiseVerifier>(cm.verifier))
        fail("axis p_v applies only to a pairwise verifier here");
      return;
    }
    case Axis::sigma_g: {
      const auto* cm = std::get_if<ContinuousModel>(&base.model);
      if (!cm || std::holds_alternative<UniformReward>(cm->reward))
        fail("axis sigma_g needs a normal or gmm reward model");
      return;
    }
    case Axis::sigma_v: {
      const auto* cm = std::get_if<ContinuousModel>(&base.model);
      if (!cm || !std::holds_alternative<AdditiveNoiseVerifier>(cm->verifier))
        fail("axis sigma_v needs an additive-noise verifier");
      return;
    }
  }
}

// Returns an error string instead of mutating the plan when the value falls
// outside the axis domain.
std::string apply_axis_value(TrialPlan& plan, Axis axis, double value) {
  switch (axis) {
    case Axis::n: {
      if (!(value >= 1.0) || value != std::floor(value) || value > 1e9)
        return "n must be a positive integer";
      plan.n = static_cast<int>(value);
      return "";
    }
    case Axis::p_g: {
      if (!(value > 0.0 && value < 1.0))
        return "p_g must lie strictly in (0, 1)";
      std::get<DiscreteModel>(plan.model).gen.p_g = value;
      return "";
    }
    case Axis::p_v: {
      if (auto* dm = std::get_if<DiscreteModel>(&plan.model)) {
        if (!(value >= 0.0 && value <= 1.0)) return "p_v must lie in [0, 1]";
        std::get<IndependentVerifier>(dm->verifier).p_v = value;
        return "";
      }
      if (!(value >= 0.5 && value <= 1.0))
        return "pairwise p_v must lie in [0.5, 1]";
      auto& cm = std::get<ContinuousModel>(plan.model);
      std::get<PairwiseVerifier>(cm.verifier).p_v = value;
      return "";
    }
    case Axis::sigma_g: {
      if (!(value > 0.0)) return "sigma_g must be > 0";
      auto& cm = std::get<ContinuousModel>(plan.model);
      if (auto* nr = std::get_if<NormalReward>(&cm.reward))
        nr->sigma = value;
      else
        std::get<GmmReward>(cm.reward).sigma = value;
      return "";
    }
    case Axis::sigma_v: {
      if (!(value >= 0.0)) return "sigma_v must be >= 0";
      auto& cm = std::get<ContinuousModel>(plan.model);
      std::get<AdditiveNoiseVerifier>(cm.verifier).sigma_v = value;
      return "";
    }
  }
  return "unknown axis";
}

int default_workers() {
  if (const char* env = std::getenv("VERIGEN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<int>(std::min(v, 256L));
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void validate(const TrialPlan& plan) {
  if (plan.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (plan.n < 1) throw std::invalid_argument("n must be >= 1");
  if (const auto* dm = std::get_if<DiscreteModel>(&plan.model)) {
    verigen::validate(dm->gen);
    verigen::validate(dm->verifier);
  } else {
    const auto& cm = std::get<ContinuousModel>(plan.model);
    verigen::validate(cm.reward);
    verigen::validate(cm.verifier);
  }
}

Estimate run(const TrialPlan& plan, int workers) {
  validate(plan);
  Moments total = parallel_reduce<Moments>(
      plan.trials, resolve_workers(workers),
      [&plan](Moments& state, std::uint64_t trial) {
        Rng rng = Rng::for_stream(plan.seed, trial);
        state.add(run_trial(plan, rng));
      });
  return to_estimate(total);
}

Estimate run_discrete(const TrialPlan& plan, int workers) {
  if (!std::holds_alternative<DiscreteModel>(plan.model))
    throw std::invalid_argument("run_discrete needs a discrete model");
  return run(plan, workers);
}

Estimate run_continuous_improvement(const TrialPlan& plan, int workers) {
  if (!std::holds_alternative<ContinuousModel>(plan.model))
    throw std::invalid_argument(
        "run_continuous_improvement needs a continuous model");
  TrialPlan p = plan;
  p.measure = Measure::improvement_over_first_sample;
  return run(p, workers);
}

std::optional<double> analytic_companion(const TrialPlan& plan) {
  if (const auto* dm = std::get_if<DiscreteModel>(&plan.model)) {
    auto [p_v1, p_v0] = verifier_accuracies(dm->verifier);
    double value = expected_reward_with_verifier_dependent(dm->gen, p_v1, p_v0,
                                                           plan.n)
                       .expected_with_verifier;
    if (plan.measure == Measure::improvement_over_first_sample)
      return value - dm->gen.p_g;
    return value;
  }
  const auto& cm = std::get<ContinuousModel>(plan.model);
  const auto* nr = std::get_if<NormalReward>(&cm.reward);
  const auto* add = std::get_if<AdditiveNoiseVerifier>(&cm.verifier);
  if (!nr || !add) return std::nullopt;
  ContinuousResult r = delta_ver(nr->sigma, add->sigma_v, plan.n, nr->mu);
  if (plan.measure == Measure::improvement_over_first_sample)
    return r.delta_ver;
  return r.expected_with_verifier;
}

std::vector<SweepPoint> sweep(const TrialPlan& base, Axis axis,
                              const std::vector<double>& values,
                              int workers) {
  if (values.empty()) throw std::invalid_argument("sweep needs values");
  validate(base);
  check_axis_applies(base, axis);

  std::vector<SweepPoint> points;
  points.reserve(values.size());
  for (double value : values) {
    SweepPoint point;
    point.value = value;
    TrialPlan plan = base;
    point.error = apply_axis_value(plan, axis, value);
    if (point.error.empty()) {
      point.estimate = run(plan, workers);
      point.analytic = analytic_companion(plan);
    }
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace verigen::mc
