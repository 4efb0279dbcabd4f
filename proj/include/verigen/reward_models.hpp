#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "verigen/rng.hpp"

namespace verigen {

// Generator that draws reward-1 actions with probability p_g.
// p_g must lie strictly inside (0, 1): a generator that always succeeds or
// always fails makes the selection problem degenerate.
struct DiscreteGenerator {
  double p_g = 0.5;
};

// Verifier that labels each action correctly with a single accuracy p_v,
// regardless of the action's true reward.
struct IndependentVerifier {
  double p_v = 0.9;
};

// Verifier whose accuracy depends on the true reward: p_v1 on reward-1
// actions, p_v0 on reward-0 actions. dependent(p, p) must behave exactly
// like independent(p).
struct DependentVerifier {
  double p_v1 = 0.9;
  double p_v0 = 0.9;
};

using DiscreteVerifier = std::variant<IndependentVerifier, DependentVerifier>;

struct NormalReward {
  double mu = 0.0;
  double sigma = 1.0;  // > 0
};

// Symmetric two-component mixture, equal weights. Defaults keep the overall
// mean at zero.
struct GmmReward {
  double mean_a = -0.5;
  double mean_b = 0.5;
  double sigma = 1.0;  // per-component, > 0
};

struct UniformReward {
  double lo = 0.0;
  double hi = 1.0;  // lo < hi
};

using ContinuousRewardModel = std::variant<NormalReward, GmmReward, UniformReward>;

// Score = true reward + independent zero-mean Gaussian noise.
struct AdditiveNoiseVerifier {
  double sigma_v = 0.5;  // >= 0
};

// Scores carry no absolute meaning; only the induced ranking matters. For a
// uniformly drawn pair of candidates with distinct rewards, the probability
// the scores order them correctly is p_v. See calibrate_pairwise_alpha.
struct PairwiseVerifier {
  double p_v = 0.8;  // in [0.5, 1]
};

using ContinuousVerifier = std::variant<AdditiveNoiseVerifier, PairwiseVerifier>;

// Pick-the-max over a batch of n scores; ties resolved uniformly at random.
struct SelectionRule {
  int n = 1;
};

void validate(const DiscreteGenerator& gen);
void validate(const DiscreteVerifier& verifier);
void validate(const ContinuousRewardModel& model);
void validate(const ContinuousVerifier& verifier);

double sample_true_reward(const ContinuousRewardModel& model, Rng& rng);

std::vector<double> score_candidates(const std::vector<double>& true_rewards,
                                     const ContinuousVerifier& verifier,
                                     Rng& rng);

std::size_t select(const std::vector<double>& scores, const SelectionRule& rule,
                   Rng& rng);

// Expected fraction of correctly ordered candidate pairs when scores are
// alpha * rank + unit Gaussian noise, over batches of size n.
double pairwise_accuracy(double alpha, int n);

// Signal strength alpha whose expected pairwise accuracy equals p_v for
// batches of size n. alpha = 0 gives exactly 0.5; p_v = 1 is handled by the
// caller using noiseless ranks.
double calibrate_pairwise_alpha(double p_v, int n);

}  // namespace verigen
