#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "verigen/envs.hpp"
#include "verigen/rng.hpp"

namespace verigen::policy {

enum class PolicyKind {
  naive_generator,       // single unconditional proposal
  verifier_selection,    // best of n proposals under the Bayes verifier
  oracle_sampler,        // ground-truth action appended to the batch
  oracle_verifier,       // candidate closest to the ground-truth action
  history_conditioned_generator,  // single draw from a posterior mixture
};

const char* to_string(PolicyKind kind);

struct PolicySpec {
  PolicyKind kind = PolicyKind::naive_generator;
  int n = 1;            // proposal count for the selection policies
  double lambda = 0.5;  // posterior weight of history_conditioned_generator
  // Verifier label accuracy for verifier_selection: 1 keeps the exact Bayes
  // scores; below 1 the scores collapse to binary consistent-with-history
  // labels, each flipped with probability 1 - flip_p_v. Connects the
  // environments back to the discrete selection theory.
  double flip_p_v = 1.0;
};

void validate(const PolicySpec& spec);

// Unconditional door proposals: mode uniform over the four, quality uniform
// in [quality_lo, quality_hi].
struct DoorGenerator {
  double quality_lo = 0.5;
  double quality_hi = 1.0;
};

void validate(const DoorGenerator& gen);

std::vector<env::DoorAction> generate_door_proposals(int n,
                                                     const DoorGenerator& gen,
                                                     Rng& rng);

// Unconditional rod proposals: lift points uniform in [0, 1].
std::vector<double> generate_rod_proposals(int n, Rng& rng);

// Uniform prior over the four modes, zeroed by failures; a success pins the
// mode outright. Throws when the history rules out every mode.
struct DoorPosterior {
  std::array<double, env::kDoorModeCount> p{};
};

DoorPosterior bayes_door_posterior(const env::DoorHistory& history);

// The rod posterior is uniform over the theoretical com interval.
env::ComInterval bayes_rod_posterior(const env::RodHistory& history,
                                     double epsilon);

// Expected opened amount of the action under the posterior.
double door_verifier_score(const env::DoorAction& action,
                           const DoorPosterior& posterior);

// Posterior probability that the lift succeeds.
double rod_verifier_score(double lift_point, const env::ComInterval& interval,
                          double epsilon);

// E|x - com| for com uniform on the interval; the tie-break key that pulls
// equally promising lift points toward the interval midpoint.
double expected_abs_distance(double x, const env::ComInterval& interval);

env::DoorAction door_act(const PolicySpec& spec, const env::DoorEnv& env,
                         const env::DoorHistory& history,
                         const DoorGenerator& gen, Rng& rng);

double rod_act(const PolicySpec& spec, const env::RodEnv& env,
               const env::RodHistory& history, Rng& rng);

struct EpisodeResult {
  bool success = false;
  int steps = 0;
  // selections whose action was consistent with the history so far
  std::uint64_t valid_selections = 0;
  std::uint64_t total_selections = 0;
};

struct DoorTraceStep {
  int step = 0;
  env::DoorAction action;
  env::DoorOutcome outcome;
  double open_fraction = 0.0;
};

struct RodTraceStep {
  int step = 0;
  double lift_point = 0.0;
  env::RodOutcome outcome;
  env::ComInterval interval;  // after the step
};

EpisodeResult run_door_episode(const PolicySpec& spec,
                               const DoorGenerator& gen, env::DoorEnv env,
                               Rng& rng,
                               std::vector<DoorTraceStep>* trace = nullptr);

EpisodeResult run_rod_episode(const PolicySpec& spec, env::RodEnv env,
                              Rng& rng,
                              std::vector<RodTraceStep>* trace = nullptr);

struct BatchStats {
  std::uint64_t episodes = 0;
  std::uint64_t successes = 0;
  double steps_sum = 0.0;    // successful episodes only
  double steps_sumsq = 0.0;
  std::uint64_t valid_selections = 0;
  std::uint64_t total_selections = 0;

  void add(const EpisodeResult& r);
  void merge(const BatchStats& other);

  double failure_rate() const;
  double failure_std_error() const;
  double mean_steps() const;  // over successful episodes
  double mean_steps_std_error() const;
  double valid_rate() const;
};

// Episode i draws everything, the hidden mode included, from the stream
// (seed, i); results are bitwise identical for any worker count.
struct DoorBatchPlan {
  PolicySpec policy;
  DoorGenerator generator;
  double open_threshold = 0.05;
  int max_steps = 30;
  std::uint64_t episodes = 10000;
  std::uint64_t seed = 0;
};

BatchStats run_door_batch(const DoorBatchPlan& plan, int workers = 0);

struct RodBatchPlan {
  PolicySpec policy;
  double epsilon = 0.05;
  int max_steps = 5;
  std::uint64_t episodes = 10000;
  std::uint64_t seed = 0;
};

BatchStats run_rod_batch(const RodBatchPlan& plan, int workers = 0);

// Exhaustive sweep over a fixed com grid: episode i gets com = i/(points-1)
// instead of a random draw. plan.episodes is ignored.
BatchStats run_rod_grid(const RodBatchPlan& plan, std::uint64_t points,
                        int workers = 0);

// Replays one episode of a batch with a trace attached; the trajectory is
// bit-identical to what the batch run produced for that index. The trace
// vector is cleared first.
EpisodeResult trace_door_episode(const DoorBatchPlan& plan,
                                 std::uint64_t index,
                                 std::vector<DoorTraceStep>& trace);
EpisodeResult trace_rod_episode(const RodBatchPlan& plan, std::uint64_t index,
                                std::vector<RodTraceStep>& trace);
EpisodeResult trace_rod_grid_episode(const RodBatchPlan& plan,
                                     std::uint64_t points, std::uint64_t index,
                                     std::vector<RodTraceStep>& trace);

}  // namespace verigen::policy
