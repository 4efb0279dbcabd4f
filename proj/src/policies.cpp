#include "verigen/policies.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "verigen/montecarlo.hpp"
#include "verigen/parallel.hpp"
#include "verigen/reward_models.hpp"

namespace verigen::policy {

namespace {

// Primary tie band for real-valued verifier scores; overlap ratios that agree
// to 1e-9 are indistinguishable evidence, not a ranking.
constexpr double kScoreTieBand = 1e-9;
constexpr double kDistanceTieBand = 1e-12;

}  // namespace

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::naive_generator: return "naive_generator";
    case PolicyKind::verifier_selection: return "verifier_selection";
    case PolicyKind::oracle_sampler: return "oracle_sampler";
    case PolicyKind::oracle_verifier: return "oracle_verifier";
    case PolicyKind::history_conditioned_generator:
      return "history_conditioned_generator";
  }
  throw std::invalid_argument("unknown policy kind");
}

void validate(const PolicySpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("policy n must be >= 1");
  if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0))
    throw std::invalid_argument("policy lambda must lie in [0, 1]");
  if (!(spec.flip_p_v >= 0.0 && spec.flip_p_v <= 1.0))
    throw std::invalid_argument("policy flip_p_v must lie in [0, 1]");
}

void validate(const DoorGenerator& gen) {
  if (!(gen.quality_lo > 0.0 && gen.quality_lo <= gen.quality_hi &&
        gen.quality_hi <= 1.0))
    throw std::invalid_argument(
        "door generator quality bounds must satisfy 0 < lo <= hi <= 1");
}

std::vector<env::DoorAction> generate_door_proposals(int n,
                                                     const DoorGenerator& gen,
                                                     Rng& rng) {
  std::vector<env::DoorAction> batch(static_cast<std::size_t>(n));
  for (auto& a : batch) {
    a.mode = static_cast<env::DoorMode>(
        rng.uniform_int(static_cast<std::uint64_t>(env::kDoorModeCount)));
    a.quality = gen.quality_lo == gen.quality_hi
                    ? gen.quality_lo
                    : rng.uniform(gen.quality_lo, gen.quality_hi);
  }
  return batch;
}

std::vector<double> generate_rod_proposals(int n, Rng& rng) {
  std::vector<double> batch(static_cast<std::size_t>(n));
  for (auto& x : batch) x = rng.uniform();
  return batch;
}

DoorPosterior bayes_door_posterior(const env::DoorHistory& history) {
  std::array<double, env::kDoorModeCount> weight;
  weight.fill(1.0);
  int succeeded = -1;
  for (const auto& event : history) {
    const int m = static_cast<int>(event.action.mode);
    if (event.outcome.opened_amount > 0.0) {
      if (succeeded >= 0 && succeeded != m)
        throw std::runtime_error(
            "door history inconsistent: two modes opened the door");
      succeeded = m;
    } else {
      weight[static_cast<std::size_t>(m)] = 0.0;
    }
  }
  if (succeeded >= 0) {
    if (weight[static_cast<std::size_t>(succeeded)] == 0.0)
      throw std::runtime_error(
          "door history inconsistent: a mode both opened and failed");
    weight.fill(0.0);
    weight[static_cast<std::size_t>(succeeded)] = 1.0;
  }
  double total = 0.0;
  for (double w : weight) total += w;
  if (total == 0.0)
    throw std::runtime_error("door history inconsistent: every mode failed");
  DoorPosterior post;
  for (std::size_t m = 0; m < weight.size(); ++m) post.p[m] = weight[m] / total;
  return post;
}

env::ComInterval bayes_rod_posterior(const env::RodHistory& history,
                                     double epsilon) {
  return env::theoretical_com_interval(history, epsilon);
}

double door_verifier_score(const env::DoorAction& action,
                           const DoorPosterior& posterior) {
  return posterior.p[static_cast<std::size_t>(action.mode)] * action.quality;
}

double rod_verifier_score(double lift_point, const env::ComInterval& interval,
                          double epsilon) {
  const double width = interval.width();
  if (width <= 0.0)
    return std::abs(lift_point - interval.lo) <= epsilon ? 1.0 : 0.0;
  const double overlap = std::min(lift_point + epsilon, interval.hi) -
                         std::max(lift_point - epsilon, interval.lo);
  return overlap > 0.0 ? overlap / width : 0.0;
}

double expected_abs_distance(double x, const env::ComInterval& interval) {
  const double lo = interval.lo;
  const double hi = interval.hi;
  const double width = hi - lo;
  if (width <= 0.0) return std::abs(x - lo);
  const double mid = 0.5 * (lo + hi);
  if (x <= lo) return mid - x;
  if (x >= hi) return x - mid;
  return ((x - lo) * (x - lo) + (hi - x) * (hi - x)) / (2.0 * width);
}

namespace {

int sample_categorical(const std::array<double, env::kDoorModeCount>& p,
                       Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t m = 0; m + 1 < p.size(); ++m) {
    acc += p[m];
    if (u < acc) return static_cast<int>(m);
  }
  return static_cast<int>(p.size()) - 1;
}

// Binary consistent-with-history labels, each kept with probability p_v.
template <typename Pred>
std::vector<double> noisy_labels(std::size_t count, double p_v, Pred&& good,
                                 Rng& rng) {
  std::vector<double> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool truth = good(i);
    labels[i] = rng.bernoulli(p_v) ? (truth ? 1.0 : 0.0) : (truth ? 0.0 : 1.0);
  }
  return labels;
}

std::size_t select_door_candidate(const std::vector<env::DoorAction>& batch,
                                  const PolicySpec& spec,
                                  const DoorPosterior& posterior, Rng& rng) {
  const auto n = batch.size();
  std::vector<double> scores;
  if (spec.flip_p_v < 1.0) {
    scores = noisy_labels(
        n, spec.flip_p_v,
        [&](std::size_t i) {
          return posterior.p[static_cast<std::size_t>(batch[i].mode)] > 0.0;
        },
        rng);
  } else {
    scores.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      scores[i] = door_verifier_score(batch[i], posterior);
  }
  return verigen::select(scores, {static_cast<int>(n)}, rng);
}

// Overlap-ratio argmax with a tolerance band, broken toward the candidate
// whose expected distance to the com is smallest, then uniformly.
std::size_t select_rod_candidate(const std::vector<double>& batch,
                                 const PolicySpec& spec,
                                 const env::ComInterval& interval,
                                 double epsilon, Rng& rng) {
  const auto n = batch.size();
  if (spec.flip_p_v < 1.0) {
    const auto labels = noisy_labels(
        n, spec.flip_p_v,
        [&](std::size_t i) {
          return rod_verifier_score(batch[i], interval, epsilon) > 0.0;
        },
        rng);
    return verigen::select(labels, {static_cast<int>(n)}, rng);
  }
  std::vector<double> scores(n);
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = rod_verifier_score(batch[i], interval, epsilon);
    best = std::max(best, scores[i]);
  }
  thread_local std::vector<std::size_t> ties;
  ties.clear();
  for (std::size_t i = 0; i < n; ++i)
    if (scores[i] >= best - kScoreTieBand) ties.push_back(i);
  if (ties.size() == 1) return ties.front();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i : ties)
    best_dist = std::min(best_dist, expected_abs_distance(batch[i], interval));
  thread_local std::vector<std::size_t> finalists;
  finalists.clear();
  for (std::size_t i : ties)
    if (expected_abs_distance(batch[i], interval) <=
        best_dist + kDistanceTieBand)
      finalists.push_back(i);
  return finalists[rng.uniform_int(finalists.size())];
}

}  // namespace

env::DoorAction door_act(const PolicySpec& spec, const env::DoorEnv& env,
                         const env::DoorHistory& history,
                         const DoorGenerator& gen, Rng& rng) {
  switch (spec.kind) {
    case PolicyKind::naive_generator:
      return generate_door_proposals(1, gen, rng)[0];
    case PolicyKind::verifier_selection: {
      auto batch = generate_door_proposals(spec.n, gen, rng);
      const auto posterior = bayes_door_posterior(history);
      return batch[select_door_candidate(batch, spec, posterior, rng)];
    }
    case PolicyKind::oracle_sampler: {
      auto batch = generate_door_proposals(spec.n, gen, rng);
      batch.push_back({env.hidden_mode, 1.0});
      const auto posterior = bayes_door_posterior(history);
      return batch[select_door_candidate(batch, spec, posterior, rng)];
    }
    case PolicyKind::oracle_verifier: {
      const auto batch = generate_door_proposals(spec.n, gen, rng);
      // Wrong-mode candidates trail every correct-mode one; within a mode
      // class, higher quality wins.
      std::vector<double> scores(batch.size());
      for (std::size_t i = 0; i < batch.size(); ++i)
        scores[i] = (batch[i].mode == env.hidden_mode ? 2.0 : 0.0) +
                    batch[i].quality;
      return batch[verigen::select(scores, {spec.n}, rng)];
    }
    case PolicyKind::history_conditioned_generator: {
      const auto posterior = bayes_door_posterior(history);
      env::DoorAction a;
      const bool use_posterior = rng.bernoulli(spec.lambda);
      const int mode =
          use_posterior
              ? sample_categorical(posterior.p, rng)
              : static_cast<int>(rng.uniform_int(
                    static_cast<std::uint64_t>(env::kDoorModeCount)));
      a.mode = static_cast<env::DoorMode>(mode);
      a.quality = gen.quality_lo == gen.quality_hi
                      ? gen.quality_lo
                      : rng.uniform(gen.quality_lo, gen.quality_hi);
      return a;
    }
  }
  throw std::invalid_argument("unknown policy kind");
}

double rod_act(const PolicySpec& spec, const env::RodEnv& env,
               const env::RodHistory& history, Rng& rng) {
  switch (spec.kind) {
    case PolicyKind::naive_generator:
      return rng.uniform();
    case PolicyKind::verifier_selection: {
      const auto batch = generate_rod_proposals(spec.n, rng);
      const auto interval = bayes_rod_posterior(history, env.epsilon);
      return batch[select_rod_candidate(batch, spec, interval, env.epsilon,
                                        rng)];
    }
    case PolicyKind::oracle_sampler: {
      auto batch = generate_rod_proposals(spec.n, rng);
      batch.push_back(env.hidden_com);
      const auto interval = bayes_rod_posterior(history, env.epsilon);
      return batch[select_rod_candidate(batch, spec, interval, env.epsilon,
                                        rng)];
    }
    case PolicyKind::oracle_verifier: {
      const auto batch = generate_rod_proposals(spec.n, rng);
      std::vector<double> scores(batch.size());
      for (std::size_t i = 0; i < batch.size(); ++i)
        scores[i] = -std::abs(batch[i] - env.hidden_com);
      return batch[verigen::select(scores, {spec.n}, rng)];
    }
    case PolicyKind::history_conditioned_generator: {
      const auto interval = bayes_rod_posterior(history, env.epsilon);
      return rng.bernoulli(spec.lambda) ? rng.uniform(interval.lo, interval.hi)
                                        : rng.uniform();
    }
  }
  throw std::invalid_argument("unknown policy kind");
}

namespace {

bool door_mode_consistent(const env::DoorHistory& history, env::DoorMode mode) {
  for (const auto& event : history)
    if (event.action.mode == mode && event.outcome.opened_amount == 0.0)
      return false;
  return true;
}

}  // namespace

EpisodeResult run_door_episode(const PolicySpec& spec,
                               const DoorGenerator& gen, env::DoorEnv env,
                               Rng& rng, std::vector<DoorTraceStep>* trace) {
  validate(spec);
  validate(gen);
  env::DoorHistory history;
  EpisodeResult result;
  while (!env.done()) {
    const auto action = door_act(spec, env, history, gen, rng);
    ++result.total_selections;
    result.valid_selections += door_mode_consistent(history, action.mode);
    auto [next, outcome] = env::door_step(env, action);
    env = next;
    history.push_back({action, outcome});
    if (trace)
      trace->push_back({env.steps_taken, action, outcome, env.open_fraction});
  }
  result.success = env.succeeded();
  result.steps = env.steps_taken;
  return result;
}

EpisodeResult run_rod_episode(const PolicySpec& spec, env::RodEnv env,
                              Rng& rng, std::vector<RodTraceStep>* trace) {
  validate(spec);
  env::RodHistory history;
  EpisodeResult result;
  while (!env.done()) {
    const auto interval = env::theoretical_com_interval(history, env.epsilon);
    const double lift = rod_act(spec, env, history, rng);
    ++result.total_selections;
    result.valid_selections += lift >= interval.lo && lift <= interval.hi;
    auto [next, outcome] = env::rod_step(env, lift);
    env = next;
    history.push_back({lift, outcome});
    if (trace)
      trace->push_back(
          {env.steps_taken, lift, outcome,
           env::theoretical_com_interval(history, env.epsilon)});
  }
  result.success = env.lifted;
  result.steps = env.steps_taken;
  return result;
}

void BatchStats::add(const EpisodeResult& r) {
  ++episodes;
  if (r.success) {
    ++successes;
    const double s = static_cast<double>(r.steps);
    steps_sum += s;
    steps_sumsq += s * s;
  }
  valid_selections += r.valid_selections;
  total_selections += r.total_selections;
}

void BatchStats::merge(const BatchStats& other) {
  episodes += other.episodes;
  successes += other.successes;
  steps_sum += other.steps_sum;
  steps_sumsq += other.steps_sumsq;
  valid_selections += other.valid_selections;
  total_selections += other.total_selections;
}

double BatchStats::failure_rate() const {
  if (episodes == 0) return 0.0;
  return 1.0 - static_cast<double>(successes) / static_cast<double>(episodes);
}

double BatchStats::failure_std_error() const {
  if (episodes < 2) return 0.0;
  const double p = failure_rate();
  const double n = static_cast<double>(episodes);
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / (n - 1.0));
}

double BatchStats::mean_steps() const {
  if (successes == 0) return std::numeric_limits<double>::quiet_NaN();
  return steps_sum / static_cast<double>(successes);
}

double BatchStats::mean_steps_std_error() const {
  if (successes < 2) return 0.0;
  const double n = static_cast<double>(successes);
  const double var =
      std::max(steps_sumsq - steps_sum * steps_sum / n, 0.0) / (n - 1.0);
  return std::sqrt(var / n);
}

double BatchStats::valid_rate() const {
  if (total_selections == 0) return 1.0;
  return static_cast<double>(valid_selections) /
         static_cast<double>(total_selections);
}

namespace {

void validate_common(const PolicySpec& policy, std::uint64_t episodes,
                     int max_steps) {
  validate(policy);
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

}  // namespace

namespace {

void validate_door_plan(const DoorBatchPlan& plan, std::uint64_t episodes) {
  validate_common(plan.policy, episodes, plan.max_steps);
  validate(plan.generator);
  if (!(plan.open_threshold > 0.0 && plan.open_threshold <= 1.0))
    throw std::invalid_argument("open_threshold must lie in (0, 1]");
}

void validate_rod_plan(const RodBatchPlan& plan, std::uint64_t episodes) {
  validate_common(plan.policy, episodes, plan.max_steps);
  if (!(plan.epsilon > 0.0 && plan.epsilon < 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 0.5)");
}

env::DoorEnv door_episode_env(const DoorBatchPlan& plan, Rng& rng) {
  env::DoorEnv env;
  env.hidden_mode = static_cast<env::DoorMode>(
      rng.uniform_int(static_cast<std::uint64_t>(env::kDoorModeCount)));
  env.open_threshold = plan.open_threshold;
  env.max_steps = plan.max_steps;
  return env;
}

env::RodEnv rod_episode_env(const RodBatchPlan& plan, std::uint64_t episodes,
                            bool grid, std::uint64_t i, Rng& rng) {
  env::RodEnv env;
  env.hidden_com =
      grid ? (episodes == 1 ? 0.5
                            : static_cast<double>(i) /
                                  static_cast<double>(episodes - 1))
           : rng.uniform();
  env.epsilon = plan.epsilon;
  env.max_steps = plan.max_steps;
  return env;
}

BatchStats run_rod_common(const RodBatchPlan& plan, std::uint64_t episodes,
                          bool grid, int workers) {
  validate_rod_plan(plan, episodes);
  if (workers == 0) workers = mc::default_workers();
  return mc::parallel_reduce<BatchStats>(
      episodes, workers,
      [&plan, episodes, grid](BatchStats& stats, std::uint64_t i) {
        Rng rng = Rng::for_stream(plan.seed, i);
        env::RodEnv env = rod_episode_env(plan, episodes, grid, i, rng);
        stats.add(run_rod_episode(plan.policy, env, rng));
      });
}

}  // namespace

BatchStats run_door_batch(const DoorBatchPlan& plan, int workers) {
  validate_door_plan(plan, plan.episodes);
  if (workers == 0) workers = mc::default_workers();
  return mc::parallel_reduce<BatchStats>(
      plan.episodes, workers, [&plan](BatchStats& stats, std::uint64_t i) {
        Rng rng = Rng::for_stream(plan.seed, i);
        env::DoorEnv env = door_episode_env(plan, rng);
        stats.add(run_door_episode(plan.policy, plan.generator, env, rng));
      });
}

BatchStats run_rod_batch(const RodBatchPlan& plan, int workers) {
  return run_rod_common(plan, plan.episodes, false, workers);
}

BatchStats run_rod_grid(const RodBatchPlan& plan, std::uint64_t points,
                        int workers) {
  return run_rod_common(plan, points, true, workers);
}

EpisodeResult trace_door_episode(const DoorBatchPlan& plan,
                                 std::uint64_t index,
                                 std::vector<DoorTraceStep>& trace) {
  trace.clear();
  validate_door_plan(plan, plan.episodes);
  Rng rng = Rng::for_stream(plan.seed, index);
  env::DoorEnv env = door_episode_env(plan, rng);
  return run_door_episode(plan.policy, plan.generator, env, rng, &trace);
}

EpisodeResult trace_rod_episode(const RodBatchPlan& plan, std::uint64_t index,
                                std::vector<RodTraceStep>& trace) {
  trace.clear();
  validate_rod_plan(plan, plan.episodes);
  Rng rng = Rng::for_stream(plan.seed, index);
  env::RodEnv env = rod_episode_env(plan, plan.episodes, false, index, rng);
  return run_rod_episode(plan.policy, env, rng, &trace);
}

EpisodeResult trace_rod_grid_episode(const RodBatchPlan& plan,
                                     std::uint64_t points, std::uint64_t index,
                                     std::vector<RodTraceStep>& trace) {
  trace.clear();
  validate_rod_plan(plan, points);
  Rng rng = Rng::for_stream(plan.seed, index);
  env::RodEnv env = rod_episode_env(plan, points, true, index, rng);
  return run_rod_episode(plan.policy, env, rng, &trace);
}

}  // namespace verigen::policy
