#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace verigen::metrics {

// One result line of an experiment run. params is the canonical
// "key=value;key=value" string, keys sorted; analytic rows carry
// std_error = 0 and trials = 0.
struct MetricsRow {
  std::string experiment;
  std::string params;
  std::string metric;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

inline constexpr const char* kCsvHeader =
    "experiment,params,metric,value,std_error,trials";

// 17 significant digits: round-trip exact for 64-bit floats.
std::string format_double(double v);

// Canonical params assembly: entries as given, sorted by key, joined with
// ';'. Values must already be serialized.
struct ParamList {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(std::string key, std::string value);
  void add(std::string key, double value);           // 17 significant digits
  void add(std::string key, std::int64_t value);
  std::string canonical() const;
};

// Ordering used before writing: experiment, then params with embedded
// numbers compared numerically (so n=2 precedes n=10), then metric.
bool row_less(const MetricsRow& a, const MetricsRow& b);
void sort_rows(std::vector<MetricsRow>& rows);

std::string to_csv(const std::vector<MetricsRow>& rows);
std::string to_jsonl(const std::vector<MetricsRow>& rows);

// Reads either format back; the format is sniffed from the first line.
// Throws std::runtime_error with a line diagnostic on malformed input.
std::vector<MetricsRow> parse_metrics_text(const std::string& text);
std::vector<MetricsRow> read_metrics_file(const std::string& path);

struct ComparedRow {
  std::string metric;
  std::string params_a;
  std::string params_b;
  double value_a = 0.0;
  double value_b = 0.0;
  double delta = 0.0;        // value_b - value_a
  double combined_se = 0.0;  // hypot of the two standard errors
  bool significant = false;  // |delta| > 3 combined_se (and combined_se > 0)
};

// Aligns two runs metric by metric, in canonical row order. Requires the
// same multiset of metric names on both sides; throws std::runtime_error
// on a schema mismatch.
std::vector<ComparedRow> compare_rows(std::vector<MetricsRow> a,
                                      std::vector<MetricsRow> b);

std::string comparison_to_csv(const std::vector<ComparedRow>& rows);

}  // namespace verigen::metrics
