#include <doctest.h>

#include <cmath>
#include <string>

#include "verigen/experiment.hpp"

using namespace verigen;
using exp::ConfigError;
using exp::ExperimentKind;
using exp::Overrides;
using exp::OutputFormat;

namespace {

exp::ExperimentConfig parse(const std::string& text,
                            const Overrides& overrides = {}) {
  return exp::parse_config_text(text, overrides);
}

constexpr const char* kAnalyticPoint = R"({
  "experiment": "analytic",
  "seed": 1,
  "model": {"kind": "discrete", "p_g": 0.9,
            "verifier": {"kind": "independent", "p_v": 0.9}},
  "n": 2
})";

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("defaults fill in and flags override the file") {
  const auto config = parse(kAnalyticPoint);
  CHECK(config.kind == ExperimentKind::analytic);
  CHECK(config.seed == 1);
  CHECK(config.format == OutputFormat::csv);
  CHECK(config.out.empty());
  CHECK(config.plan.n == 2);
  CHECK(config.plan.measure == mc::Measure::expected_reward);

  Overrides overrides;
  overrides.seed = 99;
  overrides.out = std::string("rows.csv");
  overrides.format = std::string("jsonl");
  const auto overridden = parse(kAnalyticPoint, overrides);
  CHECK(overridden.seed == 99);
  CHECK(overridden.out == "rows.csv");
  CHECK(overridden.format == OutputFormat::jsonl);
}

TEST_CASE("config errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse(R"({"experiment": "analytic",
                               "model": {"kind": "discrete"}})"),
                       doctest::Contains("seed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse(R"({"experiment": "analytic", "seed": 1,
                               "model": {"kind": "discrete", "bogus": 3}})"),
                       doctest::Contains("model.bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse(R"({"experiment": "mystery", "seed": 1})"),
                       doctest::Contains("experiment"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"experiment": "analytic", "seed": 1, "trials": 5,
              "model": {"kind": "discrete"}})"),
      doctest::Contains("trials"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"experiment": "sweep", "seed": 1,
              "model": {"kind": "discrete"}})"),
      doctest::Contains("axis"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"experiment": "analytic", "seed": 1,
              "model": {"kind": "discrete", "p_g": 1.5}})"),
      doctest::Contains("p_g"), ConfigError);
  CHECK_THROWS_AS(parse("not json at all"), ConfigError);

  Overrides trials_override;
  trials_override.trials = 100;
  CHECK_THROWS_WITH_AS(parse(kAnalyticPoint, trials_override),
                       doctest::Contains("analytic"), ConfigError);
}

TEST_CASE("axis validation happens at parse time") {
  CHECK_THROWS_WITH_AS(
      parse(R"({"experiment": "analytic", "seed": 1,
              "model": {"kind": "discrete"},
              "axis": {"name": "sigma_v", "values": [0.1]}})"),
      doctest::Contains("axis"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse(R"({"experiment": "analytic", "seed": 1,
              "model": {"kind": "discrete"},
              "axis": {"name": "n", "values": []}})"),
      doctest::Contains("values"), ConfigError);
}

TEST_CASE("analytic point reproduces the two-sample discrete value") {
  const auto out = exp::run_experiment(parse(kAnalyticPoint));
  REQUIRE(out.rows.size() == 1);
  const auto& row = out.rows[0];
  CHECK(row.experiment == "analytic");
  CHECK(row.metric == "expected_reward");
  CHECK(row.params ==
        "model=discrete;n=2;p_g=0.90000000000000002;"
        "p_v=0.90000000000000002");
  CHECK(row.value == doctest::Approx(0.972).epsilon(1e-12));
  CHECK(row.std_error == 0.0);
  CHECK(row.trials == 0);
}

TEST_CASE("analytic axis emits one row per admissible value") {
  std::string config_text = R"({
    "experiment": "analytic",
    "seed": 1,
    "model": {"kind": "discrete", "p_g": 0.9,
              "verifier": {"kind": "independent", "p_v": 0.9}},
    "axis": {"name": "n", "values": [)";
  for (int n = 1; n <= 50; ++n) {
    config_text += std::to_string(n);
    config_text += (n < 50) ? "," : "]}}";
  }
  const auto out = exp::run_experiment(parse(config_text));
  REQUIRE(out.rows.size() == 50);
  CHECK(out.diagnostics.empty());
  CHECK(out.rows[1].value == doctest::Approx(0.972).epsilon(1e-12));
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    CHECK(out.rows[i].value >= out.rows[i - 1].value);
}

TEST_CASE("analytic refuses models without a closed form") {
  CHECK_THROWS_WITH_AS(
      exp::run_experiment(parse(R"({"experiment": "analytic", "seed": 1,
        "model": {"kind": "uniform",
                  "verifier": {"kind": "pairwise", "p_v": 0.8}},
        "n": 5})")),
      doctest::Contains("closed form"), ConfigError);
}

TEST_CASE("simulate is deterministic and agrees with the closed form") {
  const std::string config_text = R"({
    "experiment": "simulate",
    "seed": 2024,
    "trials": 40000,
    "model": {"kind": "discrete", "p_g": 0.9,
              "verifier": {"kind": "independent", "p_v": 0.9}},
    "n": 2
  })";
  const auto first = exp::run_experiment(parse(config_text));
  const auto second = exp::run_experiment(parse(config_text));
  CHECK(exp::render_rows(first.rows, OutputFormat::csv) ==
        exp::render_rows(second.rows, OutputFormat::csv));
  REQUIRE(first.rows.size() == 1);
  const auto& row = first.rows[0];
  CHECK(row.experiment == "simulate");
  CHECK(row.trials == 40000);
  CHECK(row.std_error > 0.0);
  CHECK(std::abs(row.value - 0.972) <= 3.0 * row.std_error + 1e-9);
}

TEST_CASE("sweep pairs estimates with analytic companions and skips bad "
          "points") {
  const auto out = exp::run_experiment(parse(R"({
    "experiment": "sweep",
    "seed": 7,
    "trials": 20000,
    "model": {"kind": "discrete", "p_g": 0.8,
              "verifier": {"kind": "independent", "p_v": 0.7}},
    "n": 4,
    "axis": {"name": "p_v", "values": [0.4, 0.9, 1.5]}
  })"));
  REQUIRE(out.rows.size() == 4);
  REQUIRE(out.diagnostics.size() == 1);
  CHECK(out.diagnostics[0].find("p_v=1.5") != std::string::npos);
  for (std::size_t i = 0; i < 4; i += 2) {
    const auto& mc_row = out.rows[i];
    const auto& companion = out.rows[i + 1];
    CHECK(mc_row.experiment == "sweep");
    CHECK(companion.experiment == "analytic");
    CHECK(mc_row.params == companion.params);
    CHECK(std::abs(mc_row.value - companion.value) <=
          3.0 * mc_row.std_error + 1e-9);
  }
  CHECK(out.rows[0].params.find("p_v=0.4") != std::string::npos);
}

TEST_CASE("bandit runs emit failure and steps rows plus traces") {
  const auto out = exp::run_experiment(parse(R"({
    "experiment": "bandit",
    "seed": 11,
    "episodes": 4000,
    "env": {"kind": "door", "quality_lo": 1.0, "quality_hi": 1.0},
    "policy": {"kind": "verifier_selection", "n": 30},
    "trace_episodes": 2,
    "trace_out": "unused.jsonl"
  })"));
  REQUIRE(out.rows.size() == 2);
  const auto& failure = out.rows[0];
  const auto& steps = out.rows[1];
  CHECK(failure.metric == "failure_rate");
  CHECK(failure.value == 0.0);
  CHECK(failure.trials == 4000);
  CHECK(steps.metric == "mean_steps_to_open");
  CHECK(steps.value == doctest::Approx(2.5).epsilon(0.03));
  CHECK(steps.params ==
        "env=door;max_steps=30;n=30;open_threshold=0.050000000000000003;"
        "policy=verifier_selection;quality_hi=1;quality_lo=1");

  REQUIRE(!out.trace_jsonl.empty());
  CHECK(out.trace_jsonl.rfind("{\"episode\":0,\"step\":1,", 0) == 0);
  CHECK(out.trace_jsonl.find("\"episode\":2") == std::string::npos);
  CHECK(out.trace_jsonl.find("\"open_fraction\":") != std::string::npos);
  CHECK(out.trace_jsonl.back() == '\n');
}

TEST_CASE("rod bandit traces carry the interval after each step") {
  const auto out = exp::run_experiment(parse(R"({
    "experiment": "bandit",
    "seed": 12,
    "episodes": 500,
    "env": {"kind": "rod"},
    "policy": {"kind": "naive_generator"},
    "trace_episodes": 1,
    "trace_out": "unused.jsonl"
  })"));
  REQUIRE(out.rows.size() >= 1);
  CHECK(out.rows[0].metric == "failure_rate");
  CHECK(out.rows[0].params ==
        "env=rod;epsilon=0.050000000000000003;max_steps=5;n=1;"
        "policy=naive_generator");
  REQUIRE(!out.trace_jsonl.empty());
  CHECK(out.trace_jsonl.find("\"interval\":[") != std::string::npos);
  CHECK(out.trace_jsonl.find("\"lift_point\":") != std::string::npos);
}

TEST_CASE("bandit episodes honor the trials override") {
  Overrides overrides;
  overrides.trials = 250;
  const auto config = parse(R"({
    "experiment": "bandit",
    "seed": 3,
    "episodes": 4000,
    "env": {"kind": "rod"},
    "policy": {"kind": "naive_generator"}
  })",
                            overrides);
  CHECK(config.trials == 250);
  const auto out = exp::run_experiment(config);
  CHECK(out.rows[0].trials == 250);
}

TEST_CASE("render_rows sorts before writing either format") {
  metrics::MetricsRow a;
  a.experiment = "sweep";
  a.params = "n=10";
  a.metric = "expected_reward";
  metrics::MetricsRow b = a;
  b.params = "n=2";
  const std::string csv = exp::render_rows({a, b}, OutputFormat::csv);
  const auto n2 = csv.find("n=2");
  const auto n10 = csv.find("n=10");
  REQUIRE(n2 != std::string::npos);
  REQUIRE(n10 != std::string::npos);
  CHECK(n2 < n10);
  const std::string jsonl = exp::render_rows({a, b}, OutputFormat::jsonl);
  CHECK(jsonl.rfind("{\"experiment\":\"sweep\"", 0) == 0);
}

TEST_SUITE_END();
