#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "verigen/analytic.hpp"

using namespace verigen;

TEST_SUITE("analytic") {

TEST_CASE("naive expected reward is the generation probability") {
  CHECK(expected_reward_naive(DiscreteGenerator{0.9}) == 0.9);
  CHECK(expected_reward_naive(DiscreteGenerator{0.5}) == 0.5);
  CHECK(expected_reward_naive(DiscreteGenerator{0.2}) == 0.2);
  CHECK_THROWS_AS(expected_reward_naive(DiscreteGenerator{0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(expected_reward_naive(DiscreteGenerator{1.0}),
                  std::invalid_argument);
}

TEST_CASE("best-of-2 with a strong verifier") {
  auto r = expected_reward_with_verifier_independent(DiscreteGenerator{0.9},
                                                     0.9, 2);
  CHECK(r.expected_naive == 0.9);
  CHECK(std::abs(r.q - 0.82) < 1e-15);
  CHECK(std::abs(r.expected_with_verifier - 0.972) < 1e-12);
}

TEST_CASE("a chance-level verifier adds nothing") {
  auto r = expected_reward_with_verifier_independent(DiscreteGenerator{0.3},
                                                     0.5, 10);
  CHECK(std::abs(r.expected_with_verifier - 0.3) < 1e-12);
}

TEST_CASE("biased generator recovered by a strong verifier") {
  // frozen from an independent evaluation of the closed form
  auto r = expected_reward_with_verifier_independent(DiscreteGenerator{0.2},
                                                     0.9, 10);
  CHECK(std::abs(r.expected_with_verifier - 0.659549336233807) < 1e-12);
}

TEST_CASE("dependent accuracy reduces to the independent case") {
  for (double p_g : {0.1, 0.5, 0.9})
    for (double p_v : {0.0, 0.3, 0.5, 0.9, 1.0})
      for (int n : {1, 2, 7, 50}) {
        auto a = expected_reward_with_verifier_independent(
            DiscreteGenerator{p_g}, p_v, n);
        auto b = expected_reward_with_verifier_dependent(
            DiscreteGenerator{p_g}, p_v, p_v, n);
        CHECK(a.expected_with_verifier == b.expected_with_verifier);
        CHECK(a.q == b.q);
      }
}

TEST_CASE("dependent-case value at a hand-checked point") {
  auto r = expected_reward_with_verifier_dependent(DiscreteGenerator{0.5}, 0.8,
                                                   0.7, 3);
  // exact rational value 0.68125
  CHECK(std::abs(r.expected_with_verifier - 0.68125) < 1e-12);
}

TEST_CASE("accuracies summing to one are uninformative") {
  auto r = expected_reward_with_verifier_dependent(DiscreteGenerator{0.5}, 0.6,
                                                   0.4, 5);
  CHECK(std::abs(r.expected_with_verifier - 0.5) < 1e-12);
}

TEST_CASE("selection always helps iff the verifier beats chance") {
  for (double p_g = 0.1; p_g < 0.95; p_g += 0.2)
    for (double p_v : {0.1, 0.3, 0.45, 0.55, 0.7, 0.9})
      for (int n : {2, 3, 5, 10, 50}) {
        double v = expected_reward_with_verifier_independent(
                       DiscreteGenerator{p_g}, p_v, n)
                       .expected_with_verifier;
        if (p_v > 0.5) CHECK(v > p_g);
        if (p_v < 0.5) CHECK(v < p_g);
      }
}

TEST_CASE("trichotomy follows the sign of p_v1 + p_v0 - 1") {
  for (double p_g : {0.2, 0.5, 0.8})
    for (int n : {2, 5, 20}) {
      CHECK(expected_reward_with_verifier_dependent(DiscreteGenerator{p_g},
                                                    0.9, 0.3, n)
                .expected_with_verifier > p_g);
      CHECK(expected_reward_with_verifier_dependent(DiscreteGenerator{p_g},
                                                    0.2, 0.6, n)
                .expected_with_verifier < p_g);
      CHECK(std::abs(expected_reward_with_verifier_dependent(
                         DiscreteGenerator{p_g}, 0.25, 0.75, n)
                         .expected_with_verifier -
                     p_g) < 1e-12);
    }
}

TEST_CASE("expected reward is nondecreasing in the candidate count") {
  for (double p_g : {0.2, 0.5, 0.9})
    for (double p_v : {0.6, 0.8, 0.95}) {
      double prev = 0.0;
      for (int n = 1; n <= 100; ++n) {
        double v = expected_reward_with_verifier_independent(
                       DiscreteGenerator{p_g}, p_v, n)
                       .expected_with_verifier;
        CHECK(v >= prev - 1e-15);
        prev = v;
      }
    }
}

TEST_CASE("a single candidate reduces to naive sampling") {
  for (double p_g : {0.05, 0.3, 0.95})
    for (double p_v : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      auto r = expected_reward_with_verifier_independent(
          DiscreteGenerator{p_g}, p_v, 1);
      CHECK(std::abs(r.expected_with_verifier - p_g) < 1e-12);
    }
}

TEST_CASE("label-rate edge cases fall back to a uniform pick") {
  // every label negative, or every label positive: no information
  auto none = expected_reward_with_verifier_dependent(DiscreteGenerator{0.5},
                                                      0.0, 1.0, 7);
  CHECK(none.q == 0.0);
  CHECK(std::abs(none.expected_with_verifier - 0.5) < 1e-12);
  auto all = expected_reward_with_verifier_dependent(DiscreteGenerator{0.5},
                                                     1.0, 0.0, 7);
  CHECK(all.q == 1.0);
  CHECK(std::abs(all.expected_with_verifier - 0.5) < 1e-12);
}

TEST_CASE("series value for the expected maximum") {
  // frozen from an independent evaluation of the series
  CHECK(std::abs(approx_expected_max_std_normal(2) - 0.7484685419) < 1e-8);
  CHECK(std::abs(approx_expected_max_std_normal(50) - 2.3072495600) < 1e-8);
  CHECK_THROWS_AS(approx_expected_max_std_normal(1), std::invalid_argument);
}

TEST_CASE("series value grows with the candidate count") {
  double prev = 0.0;
  for (int n : {2, 3, 5, 10, 20, 50, 100, 1000, 10000}) {
    double v = approx_expected_max_std_normal(n);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("quadrature oracle against closed forms and frozen values") {
  CHECK(exact_expected_max_std_normal(1) == 0.0);
  // E[max of 2] = 1/sqrt(pi) exactly
  CHECK(std::abs(exact_expected_max_std_normal(2) - 0.5641895835477563) <
        1e-9);
  struct Frozen {
    int n;
    double value;  // scipy quadrature at tolerance 1e-10, frozen
  };
  for (const auto& f :
       {Frozen{3, 0.8462843753}, Frozen{5, 1.1629644736},
        Frozen{10, 1.5387527308}, Frozen{20, 1.8674750598},
        Frozen{30, 2.0427608442}, Frozen{45, 2.2077195640},
        Frozen{50, 2.2490736294}, Frozen{100, 2.5075936364},
        Frozen{500, 3.0366993459}, Frozen{1000, 3.2414357691}}) {
    CHECK(std::abs(exact_expected_max_std_normal(f.n) - f.value) < 1e-8);
  }
}

TEST_CASE("series error against the quadrature oracle") {
  // The absolute error of the series decays slowly: about 0.092 at n = 10
  // and 0.075 at n = 20, crossing 0.06 near n = 45.
  CHECK(std::abs(approx_expected_max_std_normal(10) -
                 exact_expected_max_std_normal(10) - 0.0921) < 5e-4);
  for (int n : {45, 50, 100, 200, 500, 1000}) {
    double gap = approx_expected_max_std_normal(n) -
                 exact_expected_max_std_normal(n);
    CHECK(gap > 0.0);
    CHECK(gap <= 0.06);
  }
}

TEST_CASE("selection gain for a normal generator under score noise") {
  auto r = delta_ver(1.0, 0.5, 50);
  CHECK(std::abs(r.rho - 0.8944271909999159) < 1e-12);
  CHECK(std::abs(r.ez_n_approx - 2.3072495600) < 1e-8);
  CHECK(std::abs(r.delta_ver - 2.0636667428) < 1e-8);
  CHECK(r.expected_with_verifier == r.delta_ver);  // mu_g defaults to 0

  auto shifted = delta_ver(1.0, 0.5, 50, 0.3);
  CHECK(std::abs(shifted.expected_with_verifier - (0.3 + shifted.delta_ver)) <
        1e-15);
}

TEST_CASE("noiseless scores recover the pure order statistic") {
  auto r = delta_ver(1.0, 0.0, 20);
  CHECK(r.rho == 1.0);
  CHECK(r.delta_ver == r.ez_n_approx);
}

TEST_CASE("selection gain vanishes with the reward spread") {
  auto r = delta_ver(1e-6, 0.5, 50);
  CHECK(r.delta_ver < 1e-9);
}

TEST_CASE("one candidate yields zero gain") {
  auto r = delta_ver(1.0, 0.5, 1);
  CHECK(r.ez_n_approx == 0.0);
  CHECK(r.delta_ver == 0.0);
}

TEST_CASE("selection gain is monotone in count and in score noise") {
  double prev = 0.0;
  for (int n = 1; n <= 100; ++n) {
    double d = delta_ver(1.0, 0.5, n).delta_ver;
    CHECK(d >= prev);
    prev = d;
  }
  prev = delta_ver(1.0, 0.0, 20).delta_ver;
  for (double sv : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    double d = delta_ver(1.0, sv, 20).delta_ver;
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("gain domain errors") {
  CHECK_THROWS_AS(delta_ver(0.0, 0.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(delta_ver(1.0, -0.1, 10), std::invalid_argument);
  CHECK_THROWS_AS(delta_ver(1.0, 0.5, 0), std::invalid_argument);
}

}  // TEST_SUITE
