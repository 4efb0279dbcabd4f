#include "verigen/reward_models.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "verigen/normal.hpp"

namespace verigen {

namespace {

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

// ranks[i] = position of candidate i in the ascending reward order,
// so the best candidate carries rank n-1
std::vector<int> ascending_ranks(const std::vector<double>& rewards) {
  std::vector<int> order(rewards.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rewards[a] < rewards[b]; });
  std::vector<int> ranks(rewards.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    ranks[order[pos]] = static_cast<int>(pos);
  return ranks;
}

}  // namespace

void validate(const DiscreteGenerator& gen) {
  if (!(gen.p_g > 0.0 && gen.p_g < 1.0))
    throw std::invalid_argument("p_g must lie strictly in (0, 1)");
}

void validate(const DiscreteVerifier& verifier) {
  if (const auto* ind = std::get_if<IndependentVerifier>(&verifier)) {
    if (!in_unit_interval(ind->p_v))
      throw std::invalid_argument("p_v must lie in [0, 1]");
  } else {
    const auto& dep = std::get<DependentVerifier>(verifier);
    if (!in_unit_interval(dep.p_v1) || !in_unit_interval(dep.p_v0))
      throw std::invalid_argument("p_v1 and p_v0 must lie in [0, 1]");
  }
}

void validate(const ContinuousRewardModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalReward>) {
          if (!(m.sigma > 0.0))
            throw std::invalid_argument("normal reward sigma must be > 0");
        } else if constexpr (std::is_same_v<T, GmmReward>) {
          if (!(m.sigma > 0.0))
            throw std::invalid_argument("gmm reward sigma must be > 0");
        } else {
          if (!(m.lo < m.hi))
            throw std::invalid_argument("uniform reward needs lo < hi");
        }
      },
      model);
}

void validate(const ContinuousVerifier& verifier) {
  if (const auto* add = std::get_if<AdditiveNoiseVerifier>(&verifier)) {
    if (!(add->sigma_v >= 0.0))
      throw std::invalid_argument("sigma_v must be >= 0");
  } else {
    const auto& pw = std::get<PairwiseVerifier>(verifier);
    if (!(pw.p_v >= 0.5 && pw.p_v <= 1.0))
      throw std::invalid_argument("pairwise p_v must lie in [0.5, 1]");
  }
}

double sample_true_reward(const ContinuousRewardModel& model, Rng& rng) {
  validate(model);
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, NormalReward>) {
          return m.mu + m.sigma * rng.normal();
        } else if constexpr (std::is_same_v<T, GmmReward>) {
          double mean = rng.bernoulli(0.5) ? m.mean_a : m.mean_b;
          return mean + m.sigma * rng.normal();
        } else {
          return rng.uniform(m.lo, m.hi);
        }
      },
      model);
}

std::vector<double> score_candidates(const std::vector<double>& true_rewards,
                                     const ContinuousVerifier& verifier,
                                     Rng& rng) {
  if (true_rewards.empty()) throw std::invalid_argument("empty candidate batch");
  validate(verifier);

  std::vector<double> scores(true_rewards.size());
  if (const auto* add = std::get_if<AdditiveNoiseVerifier>(&verifier)) {
    for (std::size_t i = 0; i < true_rewards.size(); ++i)
      scores[i] = true_rewards[i] + add->sigma_v * rng.normal();
    return scores;
  }

  const auto& pw = std::get<PairwiseVerifier>(verifier);
  std::vector<int> ranks = ascending_ranks(true_rewards);
  if (pw.p_v == 1.0) {
    // noiseless ranks reproduce the true ordering exactly
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = ranks[i];
    return scores;
  }
  double alpha =
      calibrate_pairwise_alpha(pw.p_v, static_cast<int>(true_rewards.size()));
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i] = alpha * ranks[i] + rng.normal();
  return scores;
}

std::size_t select(const std::vector<double>& scores, const SelectionRule& rule,
                   Rng& rng) {
  if (rule.n < 1) throw std::invalid_argument("selection rule needs n >= 1");
  if (scores.size() != static_cast<std::size_t>(rule.n))
    throw std::invalid_argument("score count does not match selection rule");

  double best = scores[0];
  for (double s : scores) best = std::max(best, s);
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (scores[i] == best) ties.push_back(i);
  if (ties.size() == 1) return ties[0];
  return ties[rng.uniform_int(ties.size())];
}

double pairwise_accuracy(double alpha, int n) {
  if (n < 2) return 1.0;
  // Score difference across a pair with rank gap d is N(alpha*d, 2), so the
  // pair is ordered correctly with probability Phi(alpha*d/sqrt(2)); there
  // are n-d pairs at gap d.
  double weighted = 0.0;
  for (int d = 1; d < n; ++d)
    weighted += (n - d) * std_normal_cdf(alpha * d / kSqrt2);
  return weighted / (0.5 * n * (n - 1));
}

double calibrate_pairwise_alpha(double p_v, int n) {
  if (!(p_v >= 0.5 && p_v <= 1.0))
    throw std::invalid_argument("pairwise p_v must lie in [0.5, 1]");
  if (n < 2 || p_v == 0.5) return 0.0;

  thread_local std::map<std::pair<double, int>, double> memo;
  auto key = std::make_pair(p_v, n);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  double lo = 0.0, hi = 1.0;
  while (pairwise_accuracy(hi, n) < p_v && hi < 1e9) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    (pairwise_accuracy(mid, n) < p_v ? lo : hi) = mid;
  }
  double alpha = 0.5 * (lo + hi);
  memo.emplace(key, alpha);
  return alpha;
}

}  // namespace verigen
