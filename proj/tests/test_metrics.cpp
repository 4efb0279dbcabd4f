#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "verigen/metrics.hpp"

using namespace verigen::metrics;

namespace {

MetricsRow make_row(std::string experiment, std::string params,
                    std::string metric, double value, double se,
                    std::uint64_t trials) {
  MetricsRow row;
  row.experiment = std::move(experiment);
  row.params = std::move(params);
  row.metric = std::move(metric);
  row.value = value;
  row.std_error = se;
  row.trials = trials;
  return row;
}

void check_rows_equal(const std::vector<MetricsRow>& a,
                      const std::vector<MetricsRow>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].experiment == b[i].experiment);
    CHECK(a[i].params == b[i].params);
    CHECK(a[i].metric == b[i].metric);
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].std_error == b[i].std_error);
    CHECK(a[i].trials == b[i].trials);
  }
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("format_double round-trips doubles exactly") {
  const double samples[] = {0.0,   1.0,    0.1,      0.9,        0.972,
                            -2.5e-7, 1e300, 1.0 / 3.0, 6.02214076e23};
  for (const double x : samples) {
    const std::string text = format_double(x);
    CHECK(std::strtod(text.c_str(), nullptr) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("param lists canonicalize to sorted key=value") {
  ParamList p;
  p.add("p_v", 0.9);
  p.add("model", std::string("discrete"));
  p.add("n", static_cast<std::int64_t>(2));
  p.add("p_g", 0.9);
  const std::string canon = p.canonical();
  CHECK(canon ==
        "model=discrete;n=2;p_g=0.90000000000000002;"
        "p_v=0.90000000000000002");
}

TEST_CASE("row ordering compares embedded numbers numerically") {
  std::vector<MetricsRow> rows;
  rows.push_back(make_row("sweep", "model=discrete;n=10", "expected_reward",
                          0.2, 0.01, 100));
  rows.push_back(make_row("analytic", "model=discrete;n=10",
                          "expected_reward", 0.2, 0.0, 0));
  rows.push_back(make_row("sweep", "model=discrete;n=2", "expected_reward",
                          0.1, 0.01, 100));
  rows.push_back(make_row("sweep", "model=discrete;n=2", "failure_rate", 0.3,
                          0.01, 100));
  sort_rows(rows);
  CHECK(rows[0].experiment == "analytic");
  CHECK(rows[1].params == "model=discrete;n=2");
  CHECK(rows[1].metric == "expected_reward");
  CHECK(rows[2].metric == "failure_rate");
  CHECK(rows[3].params == "model=discrete;n=10");
}

TEST_CASE("csv header and row layout are pinned") {
  CHECK(std::string(kCsvHeader) ==
        "experiment,params,metric,value,std_error,trials");
  std::vector<MetricsRow> rows{make_row("analytic", "model=discrete;n=2",
                                        "expected_reward", 0.972, 0.0, 0)};
  CHECK(to_csv(rows) ==
        "experiment,params,metric,value,std_error,trials\n"
        "analytic,model=discrete;n=2,expected_reward,"
        "0.97199999999999998,0,0\n");
}

TEST_CASE("jsonl uses a fixed key order") {
  std::vector<MetricsRow> rows{make_row("bandit", "env=door;n=30",
                                        "failure_rate", 0.0, 0.0, 10000)};
  CHECK(to_jsonl(rows) ==
        "{\"experiment\":\"bandit\",\"params\":\"env=door;n=30\","
        "\"metric\":\"failure_rate\",\"value\":0,\"std_error\":0,"
        "\"trials\":10000}\n");
}

TEST_CASE("csv and jsonl round-trip through the parser") {
  std::vector<MetricsRow> rows;
  rows.push_back(make_row("sweep", "model=normal;n=7;sigma_v=0.5",
                          "improvement", 0.123456789012345678, 0.001, 250000));
  rows.push_back(make_row("analytic", "model=normal;n=7;sigma_v=0.5",
                          "improvement", 0.125, 0.0, 0));
  sort_rows(rows);
  check_rows_equal(parse_metrics_text(to_csv(rows)), rows);
  check_rows_equal(parse_metrics_text(to_jsonl(rows)), rows);
}

TEST_CASE("malformed input is rejected with a line diagnostic") {
  CHECK_THROWS_WITH_AS(parse_metrics_text("bogus,header\nrow\n"),
                       doctest::Contains("header"), std::runtime_error);
  const std::string short_row =
      std::string(kCsvHeader) + "\nanalytic,n=1,expected_reward,0.5\n";
  CHECK_THROWS_WITH_AS(parse_metrics_text(short_row),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_metrics_text("{\"experiment\":\"analytic\"}\n"),
      doctest::Contains("line 1"), std::runtime_error);
  const std::string bad_value =
      std::string(kCsvHeader) + "\nanalytic,n=1,expected_reward,oops,0,0\n";
  CHECK_THROWS_AS(parse_metrics_text(bad_value), std::runtime_error);
}

TEST_CASE("comparing a file against itself yields zero deltas") {
  std::vector<MetricsRow> rows;
  rows.push_back(make_row("bandit", "env=door;policy=naive_generator",
                          "failure_rate", 0.02, 0.0014, 10000));
  rows.push_back(make_row("bandit", "env=door;policy=naive_generator",
                          "mean_steps_to_open", 4.01, 0.02, 10000));
  const auto compared = compare_rows(rows, rows);
  REQUIRE(compared.size() == 2);
  for (const auto& row : compared) {
    CHECK(row.delta == 0.0);
    CHECK(row.value_a == row.value_b);
    CHECK(row.combined_se > 0.0);
    CHECK(!row.significant);
  }
}

TEST_CASE("comparison pairs rows by metric and flags large deltas") {
  std::vector<MetricsRow> a{make_row("bandit", "policy=naive_generator",
                                     "mean_steps_to_open", 4.0, 0.02, 10000)};
  std::vector<MetricsRow> b{make_row("bandit", "policy=verifier_selection",
                                     "mean_steps_to_open", 2.5, 0.015, 10000)};
  const auto compared = compare_rows(a, b);
  REQUIRE(compared.size() == 1);
  CHECK(compared[0].metric == "mean_steps_to_open");
  CHECK(compared[0].params_a == "policy=naive_generator");
  CHECK(compared[0].params_b == "policy=verifier_selection");
  CHECK(compared[0].delta == doctest::Approx(-1.5));
  CHECK(compared[0].significant);

  const std::string csv = comparison_to_csv(compared);
  CHECK(csv.rfind("metric,params_a,params_b,value_a,value_b,delta,"
                  "combined_se,significant\n",
                  0) == 0);
  CHECK(csv.find(",yes\n") != std::string::npos);
}

TEST_CASE("comparison rejects mismatched metric sets") {
  std::vector<MetricsRow> a{
      make_row("bandit", "x=1", "failure_rate", 0.1, 0.01, 100)};
  std::vector<MetricsRow> b{
      make_row("bandit", "x=1", "mean_steps_to_open", 2.0, 0.01, 100)};
  CHECK_THROWS_AS(compare_rows(a, b), std::runtime_error);
}

TEST_SUITE_END();
