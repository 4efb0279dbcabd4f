#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "verigen/metrics.hpp"
#include "verigen/montecarlo.hpp"
#include "verigen/policies.hpp"

namespace verigen::exp {

// Configuration problems: unparseable file, unknown or missing keys,
// out-of-domain parameters. The CLI maps this to exit code 2; every other
// exception is a runtime failure and maps to exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { analytic, simulate, bandit, sweep };
enum class OutputFormat { csv, jsonl };

const char* to_string(ExperimentKind kind);

// Command-line flags that win over config-file fields.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

struct AxisSpec {
  mc::Axis axis = mc::Axis::n;
  std::string name;             // key substituted into the row params
  std::vector<double> values;
};

struct BanditSetup {
  bool is_door = true;
  policy::PolicySpec policy;
  policy::DoorGenerator generator;  // door only
  double open_threshold = 0.05;     // door only
  double epsilon = 0.05;            // rod only
  int max_steps = 0;                // 0 keeps the environment default
  std::uint64_t com_grid = 0;       // rod only: > 0 runs the exhaustive grid
  std::uint64_t trace_episodes = 0;
  std::string trace_out;            // required when trace_episodes > 0
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::analytic;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;  // episodes for bandit runs
  std::string out;               // empty writes to stdout
  OutputFormat format = OutputFormat::csv;

  // analytic / simulate / sweep
  mc::TrialPlan plan;
  std::optional<AxisSpec> axis;  // required for sweep, optional for analytic

  // bandit
  BanditSetup bandit;
};

// Strict parser: every key must be recognized, seed is mandatory, all
// parameters are validated up front. Throws ConfigError with the offending
// field in the message.
ExperimentConfig parse_config_text(const std::string& text,
                                   const Overrides& overrides);
ExperimentConfig load_config_file(const std::string& path,
                                  const Overrides& overrides);

struct RunOutput {
  std::vector<metrics::MetricsRow> rows;
  std::vector<std::string> diagnostics;  // skipped sweep points and the like
  std::string trace_jsonl;               // bandit episode traces, if requested
};

// Pure given the config: identical configs produce identical rows. Throws
// ConfigError for problems only detectable at run time (an axis that does
// not apply to the model, a closed form that does not exist).
RunOutput run_experiment(const ExperimentConfig& config);

// Canonical ordering plus serialization in the requested format.
std::string render_rows(std::vector<metrics::MetricsRow> rows,
                        OutputFormat format);

}  // namespace verigen::exp
