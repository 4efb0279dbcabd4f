#include "verigen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <json.hpp>

namespace verigen::metrics {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ParamList::add(std::string key, std::string value) {
  entries.emplace_back(std::move(key), std::move(value));
}

void ParamList::add(std::string key, double value) {
  entries.emplace_back(std::move(key), format_double(value));
}

void ParamList::add(std::string key, std::int64_t value) {
  entries.emplace_back(std::move(key), std::to_string(value));
}

std::string ParamList::canonical() const {
  auto sorted = entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [key, value] : sorted) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_full_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const std::string owned(text);
  char* end = nullptr;
  out = std::strtod(owned.c_str(), &end);
  return end == owned.c_str() + owned.size();
}

// keys lexicographic, values numeric whenever both sides parse as numbers
int compare_params(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  const auto pa = split(a, ';');
  const auto pb = split(b, ';');
  const std::size_t common = std::min(pa.size(), pb.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto ea = pa[i];
    const auto eb = pb[i];
    const auto ka = ea.substr(0, ea.find('='));
    const auto kb = eb.substr(0, eb.find('='));
    if (ka != kb) return ka < kb ? -1 : 1;
    const auto va = ea.size() > ka.size() ? ea.substr(ka.size() + 1)
                                          : std::string_view{};
    const auto vb = eb.size() > kb.size() ? eb.substr(kb.size() + 1)
                                          : std::string_view{};
    double da = 0.0;
    double db = 0.0;
    if (parse_full_double(va, da) && parse_full_double(vb, db)) {
      if (da < db) return -1;
      if (da > db) return 1;
    }
    if (va != vb) return va < vb ? -1 : 1;
  }
  if (pa.size() != pb.size()) return pa.size() < pb.size() ? -1 : 1;
  return 0;
}

}  // namespace

bool row_less(const MetricsRow& a, const MetricsRow& b) {
  if (a.experiment != b.experiment) return a.experiment < b.experiment;
  if (const int c = compare_params(a.params, b.params); c != 0) return c < 0;
  return a.metric < b.metric;
}

void sort_rows(std::vector<MetricsRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), row_less);
}

std::string to_csv(const std::vector<MetricsRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += row.experiment;
    out += ',';
    out += row.params;
    out += ',';
    out += row.metric;
    out += ',';
    out += format_double(row.value);
    out += ',';
    out += format_double(row.std_error);
    out += ',';
    out += std::to_string(row.trials);
    out += '\n';
  }
  return out;
}

namespace {

std::string json_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_jsonl(const std::vector<MetricsRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += "{\"experiment\":\"";
    out += json_escape(row.experiment);
    out += "\",\"params\":\"";
    out += json_escape(row.params);
    out += "\",\"metric\":\"";
    out += json_escape(row.metric);
    out += "\",\"value\":";
    out += format_double(row.value);
    out += ",\"std_error\":";
    out += format_double(row.std_error);
    out += ",\"trials\":";
    out += std::to_string(row.trials);
    out += "}\n";
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

MetricsRow parse_csv_row(std::string_view line, std::size_t line_no) {
  const auto fields = split(line, ',');
  if (fields.size() != 6)
    parse_fail(line_no, "expected 6 comma-separated fields, got " +
                            std::to_string(fields.size()));
  MetricsRow row;
  row.experiment = std::string(fields[0]);
  row.params = std::string(fields[1]);
  row.metric = std::string(fields[2]);
  if (!parse_full_double(fields[3], row.value))
    parse_fail(line_no, "value is not a number");
  if (!parse_full_double(fields[4], row.std_error))
    parse_fail(line_no, "std_error is not a number");
  const std::string trials(fields[5]);
  char* end = nullptr;
  row.trials = std::strtoull(trials.c_str(), &end, 10);
  if (trials.empty() || end != trials.c_str() + trials.size())
    parse_fail(line_no, "trials is not a count");
  return row;
}

MetricsRow parse_jsonl_row(const std::string& line, std::size_t line_no) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(line_no, e.what());
  }
  if (!parsed.is_object()) parse_fail(line_no, "expected a JSON object");
  static const char* const kKeys[] = {"experiment", "params", "metric",
                                      "value",      "std_error", "trials"};
  for (const char* key : kKeys)
    if (!parsed.contains(key))
      parse_fail(line_no, std::string("missing key \"") + key + "\"");
  if (parsed.size() != 6) parse_fail(line_no, "unexpected extra keys");
  MetricsRow row;
  try {
    row.experiment = parsed.at("experiment").get<std::string>();
    row.params = parsed.at("params").get<std::string>();
    row.metric = parsed.at("metric").get<std::string>();
    row.value = parsed.at("value").get<double>();
    row.std_error = parsed.at("std_error").get<double>();
    row.trials = parsed.at("trials").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(line_no, e.what());
  }
  return row;
}

}  // namespace

std::vector<MetricsRow> parse_metrics_text(const std::string& text) {
  std::vector<MetricsRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool jsonl = false;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!saw_header && !jsonl) {
      if (line.front() == '{') {
        jsonl = true;
      } else {
        if (line != kCsvHeader)
          parse_fail(line_no, std::string("expected header \"") + kCsvHeader +
                                  "\"");
        saw_header = true;
        continue;
      }
    }
    rows.push_back(jsonl ? parse_jsonl_row(line, line_no)
                         : parse_csv_row(line, line_no));
  }
  if (!jsonl && !saw_header) parse_fail(1, "empty metrics file");
  return rows;
}

std::vector<MetricsRow> read_metrics_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_metrics_text(buf.str());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::vector<ComparedRow> compare_rows(std::vector<MetricsRow> a,
                                      std::vector<MetricsRow> b) {
  sort_rows(a);
  sort_rows(b);
  auto metric_names = [](const std::vector<MetricsRow>& rows) {
    std::vector<std::string> names;
    names.reserve(rows.size());
    for (const auto& row : rows) names.push_back(row.metric);
    std::sort(names.begin(), names.end());
    return names;
  };
  if (metric_names(a) != metric_names(b))
    throw std::runtime_error(
        "metric schemas differ: the files do not report the same metrics");

  // stable pairing: i-th occurrence of each metric on one side matches the
  // i-th occurrence on the other
  std::vector<ComparedRow> out;
  out.reserve(a.size());
  auto by_metric = [](const std::vector<MetricsRow>& rows) {
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&rows](std::size_t x, std::size_t y) {
                       return rows[x].metric < rows[y].metric;
                     });
    return order;
  };
  const auto oa = by_metric(a);
  const auto ob = by_metric(b);
  for (std::size_t i = 0; i < oa.size(); ++i) {
    const auto& ra = a[oa[i]];
    const auto& rb = b[ob[i]];
    ComparedRow row;
    row.metric = ra.metric;
    row.params_a = ra.params;
    row.params_b = rb.params;
    row.value_a = ra.value;
    row.value_b = rb.value;
    row.delta = rb.value - ra.value;
    row.combined_se = std::hypot(ra.std_error, rb.std_error);
    row.significant =
        row.combined_se > 0.0 && std::abs(row.delta) > 3.0 * row.combined_se;
    out.push_back(std::move(row));
  }
  return out;
}

std::string comparison_to_csv(const std::vector<ComparedRow>& rows) {
  std::string out(
      "metric,params_a,params_b,value_a,value_b,delta,combined_se,"
      "significant");
  out += '\n';
  for (const auto& row : rows) {
    out += row.metric;
    out += ',';
    out += row.params_a;
    out += ',';
    out += row.params_b;
    out += ',';
    out += format_double(row.value_a);
    out += ',';
    out += format_double(row.value_b);
    out += ',';
    out += format_double(row.delta);
    out += ',';
    out += format_double(row.combined_se);
    out += ',';
    out += row.significant ? "yes" : "no";
    out += '\n';
  }
  return out;
}

}  // namespace verigen::metrics
