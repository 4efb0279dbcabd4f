// Command-line front end: every run is driven by a JSON config plus a few
// override flags, writes data rows to stdout or --out, and keeps logs on
// stderr so output streams stay machine-readable.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "verigen/experiment.hpp"
#include "verigen/metrics.hpp"

namespace {

struct RunCommand {
  CLI::App* sub = nullptr;
  verigen::exp::ExperimentKind kind = verigen::exp::ExperimentKind::analytic;
  std::string config_path;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string out;
  std::string format;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* format_opt = nullptr;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

int run_experiment_command(const RunCommand& cmd) {
  verigen::exp::Overrides overrides;
  if (cmd.seed_opt->count() > 0) overrides.seed = cmd.seed;
  if (cmd.trials_opt->count() > 0) overrides.trials = cmd.trials;
  if (cmd.out_opt->count() > 0) overrides.out = cmd.out;
  if (cmd.format_opt->count() > 0) overrides.format = cmd.format;

  const verigen::exp::ExperimentConfig config =
      verigen::exp::load_config_file(cmd.config_path, overrides);
  if (config.kind != cmd.kind) {
    throw verigen::exp::ConfigError(
        cmd.config_path + ": config declares experiment \"" +
        std::string(verigen::exp::to_string(config.kind)) + "\" but the " +
        verigen::exp::to_string(cmd.kind) + " subcommand was invoked");
  }

  verigen::exp::RunOutput output = verigen::exp::run_experiment(config);
  for (const std::string& note : output.diagnostics)
    std::cerr << "note: " << note << "\n";

  const std::size_t row_count = output.rows.size();
  const std::string text =
      verigen::exp::render_rows(std::move(output.rows), config.format);
  if (config.out.empty())
    std::cout << text;
  else
    write_file(config.out, text);

  if (config.kind == verigen::exp::ExperimentKind::bandit &&
      config.bandit.trace_episodes > 0) {
    write_file(config.bandit.trace_out, output.trace_jsonl);
    std::cerr << "wrote episode traces to " << config.bandit.trace_out
              << "\n";
  }

  std::cerr << "wrote " << row_count << " rows to "
            << (config.out.empty() ? std::string("stdout") : config.out)
            << "\n";
  return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b,
                const std::string& out, bool out_set) {
  const auto rows_a = verigen::metrics::read_metrics_file(path_a);
  const auto rows_b = verigen::metrics::read_metrics_file(path_b);
  const auto compared = verigen::metrics::compare_rows(rows_a, rows_b);
  const std::string text = verigen::metrics::comparison_to_csv(compared);
  if (out_set)
    write_file(out, text);
  else
    std::cout << text;
  std::cerr << "compared " << compared.size() << " metric rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verigen: analytic and simulated best-of-n selection experiments"};
  app.require_subcommand(1);

  const std::vector<std::pair<const char*, const char*>> run_specs = {
      {"analytic", "Closed-form values for one point or along an axis"},
      {"simulate", "Monte-Carlo estimate for a single parameter point"},
      {"bandit", "Episodic door and rod environment batches"},
      {"sweep", "Monte-Carlo estimates along an axis, with closed-form "
                "companion rows where one exists"},
  };
  std::vector<RunCommand> commands(run_specs.size());
  for (std::size_t i = 0; i < run_specs.size(); ++i) {
    RunCommand& cmd = commands[i];
    cmd.kind = static_cast<verigen::exp::ExperimentKind>(i);
    cmd.sub = app.add_subcommand(run_specs[i].first, run_specs[i].second);
    cmd.sub->add_option("-c,--config", cmd.config_path, "JSON config file")
        ->required();
    cmd.seed_opt =
        cmd.sub->add_option("--seed", cmd.seed, "Override the config seed");
    cmd.trials_opt = cmd.sub->add_option(
        "--trials", cmd.trials, "Override trial (or episode) count");
    cmd.out_opt = cmd.sub->add_option("--out", cmd.out,
                                      "Write rows to this file");
    cmd.format_opt = cmd.sub->add_option("--format", cmd.format,
                                         "Output format: csv or jsonl");
  }

  std::string compare_a;
  std::string compare_b;
  std::string compare_out;
  CLI::App* compare_sub = app.add_subcommand(
      "compare", "Align two metrics files and report per-row deltas");
  compare_sub->add_option("file_a", compare_a, "Baseline metrics file")
      ->required();
  compare_sub->add_option("file_b", compare_b, "Candidate metrics file")
      ->required();
  CLI::Option* compare_out_opt =
      compare_sub->add_option("--out", compare_out, "Write the comparison "
                                                    "to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compare_sub->parsed())
      return run_compare(compare_a, compare_b, compare_out,
                         compare_out_opt->count() > 0);
    for (const RunCommand& cmd : commands)
      if (cmd.sub->parsed()) return run_experiment_command(cmd);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const verigen::exp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
