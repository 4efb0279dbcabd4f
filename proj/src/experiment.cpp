#include "verigen/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "verigen/analytic.hpp"
#include "verigen/envs.hpp"

namespace verigen::exp {

using nlohmann::json;

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::analytic: return "analytic";
    case ExperimentKind::simulate: return "simulate";
    case ExperimentKind::bandit: return "bandit";
    case ExperimentKind::sweep: return "sweep";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw ConfigError(message);
}

std::string joined(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) fail("unknown key \"" + joined(where, it.key()) + "\"");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& name) {
  if (!v.is_number()) fail("\"" + name + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& where, const char* key,
                 double fallback) {
  const json* v = find(obj, key);
  return v ? as_number(*v, joined(where, key)) : fallback;
}

std::uint64_t as_count(const json& v, const std::string& name) {
  if (!v.is_number_unsigned())
    fail("\"" + name + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t count_or(const json& obj, const std::string& where,
                       const char* key, std::uint64_t fallback) {
  const json* v = find(obj, key);
  return v ? as_count(*v, joined(where, key)) : fallback;
}

int int_count_or(const json& obj, const std::string& where, const char* key,
                 int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  const std::uint64_t raw = as_count(*v, joined(where, key));
  if (raw > 1000000000ull)
    fail("\"" + joined(where, key) + "\" is implausibly large");
  return static_cast<int>(raw);
}

std::string require_string(const json& obj, const std::string& where,
                           const char* key) {
  const json* v = find(obj, key);
  if (!v) fail("missing required key \"" + joined(where, key) + "\"");
  if (!v->is_string())
    fail("\"" + joined(where, key) + "\" must be a string");
  return v->get<std::string>();
}

std::string string_or(const json& obj, const std::string& where,
                      const char* key, const std::string& fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string())
    fail("\"" + joined(where, key) + "\" must be a string");
  return v->get<std::string>();
}

const json& require_object(const json& obj, const std::string& where,
                           const char* key) {
  const json* v = find(obj, key);
  if (!v) fail("missing required key \"" + joined(where, key) + "\"");
  if (!v->is_object())
    fail("\"" + joined(where, key) + "\" must be an object");
  return *v;
}

ExperimentKind parse_kind(const std::string& name) {
  if (name == "analytic") return ExperimentKind::analytic;
  if (name == "simulate") return ExperimentKind::simulate;
  if (name == "bandit") return ExperimentKind::bandit;
  if (name == "sweep") return ExperimentKind::sweep;
  fail("\"experiment\" must be one of analytic, simulate, bandit, sweep");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "jsonl") return OutputFormat::jsonl;
  fail("\"format\" must be csv or jsonl");
}

mc::Measure parse_measure(const std::string& name) {
  if (name == "expected_reward") return mc::Measure::expected_reward;
  if (name == "improvement")
    return mc::Measure::improvement_over_first_sample;
  fail("\"measure\" must be expected_reward or improvement");
}

const char* measure_name(mc::Measure measure) {
  return measure == mc::Measure::expected_reward ? "expected_reward"
                                                 : "improvement";
}

mc::Axis parse_axis_name(const std::string& name) {
  if (name == "n") return mc::Axis::n;
  if (name == "p_g") return mc::Axis::p_g;
  if (name == "p_v") return mc::Axis::p_v;
  if (name == "sigma_g") return mc::Axis::sigma_g;
  if (name == "sigma_v") return mc::Axis::sigma_v;
  fail("\"axis.name\" must be one of n, p_g, p_v, sigma_g, sigma_v");
}

DiscreteVerifier parse_discrete_verifier(const json* obj,
                                         const std::string& where) {
  if (!obj) return IndependentVerifier{};
  if (!obj->is_object()) fail("\"" + where + "\" must be an object");
  const std::string kind = string_or(*obj, where, "kind", "independent");
  if (kind == "independent") {
    expect_keys(*obj, where, {"kind", "p_v"});
    return IndependentVerifier{number_or(*obj, where, "p_v", 0.9)};
  }
  if (kind == "dependent") {
    expect_keys(*obj, where, {"kind", "p_v1", "p_v0"});
    return DependentVerifier{number_or(*obj, where, "p_v1", 0.9),
                             number_or(*obj, where, "p_v0", 0.9)};
  }
  fail("\"" + where + ".kind\" must be independent or dependent");
}

ContinuousVerifier parse_continuous_verifier(const json* obj,
                                             const std::string& where) {
  if (!obj) return AdditiveNoiseVerifier{};
  if (!obj->is_object()) fail("\"" + where + "\" must be an object");
  const std::string kind = string_or(*obj, where, "kind", "additive");
  if (kind == "additive") {
    expect_keys(*obj, where, {"kind", "sigma_v"});
    return AdditiveNoiseVerifier{number_or(*obj, where, "sigma_v", 0.5)};
  }
  if (kind == "pairwise") {
    expect_keys(*obj, where, {"kind", "p_v"});
    return PairwiseVerifier{number_or(*obj, where, "p_v", 0.8)};
  }
  fail("\"" + where + ".kind\" must be additive or pairwise");
}

mc::Model parse_model(const json& obj) {
  const std::string where = "model";
  const std::string model_kind = require_string(obj, where, "kind");
  if (model_kind == "discrete") {
    expect_keys(obj, where, {"kind", "p_g", "verifier"});
    mc::DiscreteModel model;
    model.gen.p_g = number_or(obj, where, "p_g", 0.5);
    model.verifier =
        parse_discrete_verifier(find(obj, "verifier"), "model.verifier");
    return model;
  }
  mc::ContinuousModel model;
  if (model_kind == "normal") {
    expect_keys(obj, where, {"kind", "mu_g", "sigma_g", "verifier"});
    model.reward = NormalReward{number_or(obj, where, "mu_g", 0.0),
                                number_or(obj, where, "sigma_g", 1.0)};
  } else if (model_kind == "gmm") {
    expect_keys(obj, where, {"kind", "mean_a", "mean_b", "sigma_g",
                             "verifier"});
    model.reward = GmmReward{number_or(obj, where, "mean_a", -0.5),
                             number_or(obj, where, "mean_b", 0.5),
                             number_or(obj, where, "sigma_g", 1.0)};
  } else if (model_kind == "uniform") {
    expect_keys(obj, where, {"kind", "lo", "hi", "verifier"});
    model.reward = UniformReward{number_or(obj, where, "lo", 0.0),
                                 number_or(obj, where, "hi", 1.0)};
  } else {
    fail("\"model.kind\" must be one of discrete, normal, gmm, uniform");
  }
  model.verifier =
      parse_continuous_verifier(find(obj, "verifier"), "model.verifier");
  return model;
}

policy::PolicyKind parse_policy_kind(const std::string& name) {
  if (name == "naive_generator") return policy::PolicyKind::naive_generator;
  if (name == "verifier_selection")
    return policy::PolicyKind::verifier_selection;
  if (name == "oracle_sampler") return policy::PolicyKind::oracle_sampler;
  if (name == "oracle_verifier") return policy::PolicyKind::oracle_verifier;
  if (name == "history_conditioned_generator")
    return policy::PolicyKind::history_conditioned_generator;
  fail(
      "\"policy.kind\" must be one of naive_generator, verifier_selection, "
      "oracle_sampler, oracle_verifier, history_conditioned_generator");
}

bool uses_candidate_batch(policy::PolicyKind kind) {
  return kind == policy::PolicyKind::verifier_selection ||
         kind == policy::PolicyKind::oracle_sampler ||
         kind == policy::PolicyKind::oracle_verifier;
}

BanditSetup parse_bandit(const json& root) {
  BanditSetup setup;

  const json& env = require_object(root, "", "env");
  const std::string env_kind = require_string(env, "env", "kind");
  if (env_kind == "door") {
    expect_keys(env, "env",
                {"kind", "open_threshold", "max_steps", "quality_lo",
                 "quality_hi"});
    setup.is_door = true;
    setup.open_threshold = number_or(env, "env", "open_threshold", 0.05);
    setup.max_steps = int_count_or(env, "env", "max_steps", 30);
    setup.generator.quality_lo = number_or(env, "env", "quality_lo", 0.5);
    setup.generator.quality_hi = number_or(env, "env", "quality_hi", 1.0);
  } else if (env_kind == "rod") {
    expect_keys(env, "env", {"kind", "epsilon", "max_steps", "com_grid"});
    setup.is_door = false;
    setup.epsilon = number_or(env, "env", "epsilon", 0.05);
    setup.max_steps = int_count_or(env, "env", "max_steps", 5);
    setup.com_grid = count_or(env, "env", "com_grid", 0);
  } else {
    fail("\"env.kind\" must be door or rod");
  }

  const json& pol = require_object(root, "", "policy");
  expect_keys(pol, "policy", {"kind", "n", "lambda", "flip_p_v"});
  setup.policy.kind = parse_policy_kind(require_string(pol, "policy", "kind"));
  const int default_n = uses_candidate_batch(setup.policy.kind)
                            ? (setup.is_door ? 30 : 20)
                            : 1;
  setup.policy.n = int_count_or(pol, "policy", "n", default_n);
  setup.policy.lambda = number_or(pol, "policy", "lambda", 0.5);
  setup.policy.flip_p_v = number_or(pol, "policy", "flip_p_v", 1.0);

  setup.trace_episodes = count_or(root, "", "trace_episodes", 0);
  setup.trace_out = string_or(root, "", "trace_out", "");
  if (setup.trace_episodes > 0 && setup.trace_out.empty())
    fail("\"trace_out\" is required when trace_episodes > 0");
  if (setup.trace_episodes == 0 && !setup.trace_out.empty())
    fail("\"trace_out\" needs trace_episodes > 0");
  return setup;
}

std::string params_for_plan(const mc::TrialPlan& plan) {
  metrics::ParamList p;
  if (const auto* dm = std::get_if<mc::DiscreteModel>(&plan.model)) {
    p.add("model", std::string("discrete"));
    p.add("p_g", dm->gen.p_g);
    if (const auto* iv = std::get_if<IndependentVerifier>(&dm->verifier)) {
      p.add("p_v", iv->p_v);
    } else {
      const auto& dv = std::get<DependentVerifier>(dm->verifier);
      p.add("p_v1", dv.p_v1);
      p.add("p_v0", dv.p_v0);
    }
  } else {
    const auto& cm = std::get<mc::ContinuousModel>(plan.model);
    if (const auto* nr = std::get_if<NormalReward>(&cm.reward)) {
      p.add("model", std::string("normal"));
      p.add("mu_g", nr->mu);
      p.add("sigma_g", nr->sigma);
    } else if (const auto* gr = std::get_if<GmmReward>(&cm.reward)) {
      p.add("model", std::string("gmm"));
      p.add("mean_a", gr->mean_a);
      p.add("mean_b", gr->mean_b);
      p.add("sigma_g", gr->sigma);
    } else {
      const auto& ur = std::get<UniformReward>(cm.reward);
      p.add("model", std::string("uniform"));
      p.add("lo", ur.lo);
      p.add("hi", ur.hi);
    }
    if (const auto* av = std::get_if<AdditiveNoiseVerifier>(&cm.verifier))
      p.add("sigma_v", av->sigma_v);
    else
      p.add("p_v", std::get<PairwiseVerifier>(cm.verifier).p_v);
  }
  p.add("n", static_cast<std::int64_t>(plan.n));
  return p.canonical();
}

std::string bandit_params(const BanditSetup& setup) {
  metrics::ParamList p;
  p.add("env", std::string(setup.is_door ? "door" : "rod"));
  p.add("policy", std::string(policy::to_string(setup.policy.kind)));
  p.add("n", static_cast<std::int64_t>(setup.policy.n));
  if (setup.policy.kind == policy::PolicyKind::history_conditioned_generator)
    p.add("lambda", setup.policy.lambda);
  if (setup.policy.kind == policy::PolicyKind::verifier_selection &&
      setup.policy.flip_p_v < 1.0)
    p.add("flip_p_v", setup.policy.flip_p_v);
  p.add("max_steps", static_cast<std::int64_t>(setup.max_steps));
  if (setup.is_door) {
    p.add("open_threshold", setup.open_threshold);
    p.add("quality_lo", setup.generator.quality_lo);
    p.add("quality_hi", setup.generator.quality_hi);
  } else {
    p.add("epsilon", setup.epsilon);
    if (setup.com_grid > 0)
      p.add("com_grid", static_cast<std::int64_t>(setup.com_grid));
  }
  return p.canonical();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const Overrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) fail("config must be a JSON object");

  ExperimentConfig config;
  config.kind = parse_kind(require_string(root, "", "experiment"));

  switch (config.kind) {
    case ExperimentKind::analytic:
      expect_keys(root, "",
                  {"experiment", "seed", "out", "format", "model", "n",
                   "measure", "axis"});
      break;
    case ExperimentKind::simulate:
      expect_keys(root, "",
                  {"experiment", "seed", "out", "format", "model", "n",
                   "measure", "trials"});
      break;
    case ExperimentKind::sweep:
      expect_keys(root, "",
                  {"experiment", "seed", "out", "format", "model", "n",
                   "measure", "trials", "axis"});
      break;
    case ExperimentKind::bandit:
      expect_keys(root, "",
                  {"experiment", "seed", "out", "format", "env", "policy",
                   "episodes", "trace_episodes", "trace_out"});
      break;
  }

  if (overrides.seed) {
    config.seed = *overrides.seed;
  } else if (const json* v = find(root, "seed")) {
    config.seed = as_count(*v, "seed");
  } else {
    fail("\"seed\" is required: runs must be reproducible");
  }

  config.out = string_or(root, "", "out", "");
  if (overrides.out) config.out = *overrides.out;
  config.format =
      parse_format(string_or(root, "", "format", "csv"));
  if (overrides.format) config.format = parse_format(*overrides.format);

  const bool has_trials_field = config.kind == ExperimentKind::simulate ||
                                config.kind == ExperimentKind::sweep;
  if (config.kind == ExperimentKind::bandit)
    config.trials = count_or(root, "", "episodes", 10000);
  else if (has_trials_field)
    config.trials = count_or(root, "", "trials", 10000);
  if (overrides.trials) {
    if (config.kind == ExperimentKind::analytic)
      fail("analytic experiments take no trials");
    config.trials = *overrides.trials;
  }

  if (config.kind == ExperimentKind::bandit) {
    config.bandit = parse_bandit(root);
    try {
      policy::validate(config.bandit.policy);
      if (config.bandit.is_door) policy::validate(config.bandit.generator);
    } catch (const std::invalid_argument& e) {
      fail(std::string("policy: ") + e.what());
    }
    return config;
  }

  config.plan.model = parse_model(require_object(root, "", "model"));
  config.plan.n = int_count_or(root, "", "n", 1);
  config.plan.seed = config.seed;
  config.plan.trials = config.trials;
  const bool discrete =
      std::holds_alternative<mc::DiscreteModel>(config.plan.model);
  config.plan.measure = discrete ? mc::Measure::expected_reward
                                 : mc::Measure::improvement_over_first_sample;
  if (const json* v = find(root, "measure")) {
    if (!v->is_string()) fail("\"measure\" must be a string");
    config.plan.measure = parse_measure(v->get<std::string>());
  }
  try {
    mc::validate(config.plan);
  } catch (const std::invalid_argument& e) {
    fail(std::string("model: ") + e.what());
  }

  if (const json* v = find(root, "axis")) {
    if (!v->is_object()) fail("\"axis\" must be an object");
    expect_keys(*v, "axis", {"name", "values"});
    AxisSpec axis;
    axis.name = require_string(*v, "axis", "name");
    axis.axis = parse_axis_name(axis.name);
    const json* values = find(*v, "values");
    if (!values || !values->is_array() || values->empty())
      fail("\"axis.values\" must be a non-empty array of numbers");
    for (const auto& entry : *values)
      axis.values.push_back(as_number(entry, "axis.values"));
    try {
      mc::check_axis_applies(config.plan, axis.axis);
    } catch (const std::invalid_argument& e) {
      fail(std::string("axis: ") + e.what());
    }
    config.axis = std::move(axis);
  }
  if (config.kind == ExperimentKind::sweep && !config.axis)
    fail("sweep experiments require an \"axis\"");
  return config;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str(), overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

metrics::MetricsRow analytic_row(const mc::TrialPlan& plan) {
  const auto value = mc::analytic_companion(plan);
  if (!value)
    fail(
        "no closed form for this model and measure; use simulate or sweep "
        "instead");
  metrics::MetricsRow row;
  row.experiment = "analytic";
  row.params = params_for_plan(plan);
  row.metric = measure_name(plan.measure);
  row.value = *value;
  return row;
}

void run_analytic(const ExperimentConfig& config, RunOutput& out) {
  if (!config.axis) {
    out.rows.push_back(analytic_row(config.plan));
    return;
  }
  for (const double value : config.axis->values) {
    mc::TrialPlan plan = config.plan;
    const std::string err =
        mc::apply_axis_value(plan, config.axis->axis, value);
    if (!err.empty()) {
      out.diagnostics.push_back("skipped " + config.axis->name + "=" +
                                metrics::format_double(value) + ": " + err);
      continue;
    }
    out.rows.push_back(analytic_row(plan));
  }
}

void run_simulate(const ExperimentConfig& config, RunOutput& out) {
  const mc::Estimate estimate = mc::run(config.plan);
  metrics::MetricsRow row;
  row.experiment = "simulate";
  row.params = params_for_plan(config.plan);
  row.metric = measure_name(config.plan.measure);
  row.value = estimate.mean;
  row.std_error = estimate.std_error;
  row.trials = estimate.trials;
  out.rows.push_back(std::move(row));
}

void run_sweep(const ExperimentConfig& config, RunOutput& out) {
  const auto& axis = *config.axis;
  const auto points = mc::sweep(config.plan, axis.axis, axis.values);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& point = points[i];
    if (!point.estimate) {
      out.diagnostics.push_back("skipped " + axis.name + "=" +
                                metrics::format_double(point.value) + ": " +
                                point.error);
      continue;
    }
    mc::TrialPlan plan = config.plan;
    mc::apply_axis_value(plan, axis.axis, point.value);
    const std::string params = params_for_plan(plan);
    const char* metric = measure_name(plan.measure);

    metrics::MetricsRow row;
    row.experiment = "sweep";
    row.params = params;
    row.metric = metric;
    row.value = point.estimate->mean;
    row.std_error = point.estimate->std_error;
    row.trials = point.estimate->trials;
    out.rows.push_back(std::move(row));

    if (point.analytic) {
      metrics::MetricsRow companion;
      companion.experiment = "analytic";
      companion.params = params;
      companion.metric = metric;
      companion.value = *point.analytic;
      out.rows.push_back(std::move(companion));
    }
  }
}

void append_trace_line(std::string& out, std::uint64_t episode,
                       const policy::DoorTraceStep& step) {
  out += "{\"episode\":";
  out += std::to_string(episode);
  out += ",\"step\":";
  out += std::to_string(step.step);
  out += ",\"action\":{\"mode\":\"";
  out += env::to_string(step.action.mode);
  out += "\",\"quality\":";
  out += metrics::format_double(step.action.quality);
  out += "},\"outcome\":{\"success\":";
  out += step.outcome.success ? "true" : "false";
  out += ",\"opened_amount\":";
  out += metrics::format_double(step.outcome.opened_amount);
  out += "},\"open_fraction\":";
  out += metrics::format_double(step.open_fraction);
  out += "}\n";
}

void append_trace_line(std::string& out, std::uint64_t episode,
                       const policy::RodTraceStep& step) {
  out += "{\"episode\":";
  out += std::to_string(episode);
  out += ",\"step\":";
  out += std::to_string(step.step);
  out += ",\"action\":{\"lift_point\":";
  out += metrics::format_double(step.lift_point);
  out += "},\"outcome\":{\"success\":";
  out += step.outcome.success ? "true" : "false";
  out += ",\"tilt\":\"";
  out += env::to_string(step.outcome.tilt);
  out += "\"},\"interval\":[";
  out += metrics::format_double(step.interval.lo);
  out += ",";
  out += metrics::format_double(step.interval.hi);
  out += "]}\n";
}

void run_bandit(const ExperimentConfig& config, RunOutput& out) {
  const BanditSetup& setup = config.bandit;
  policy::BatchStats stats;
  std::uint64_t episodes_total = 0;

  if (setup.is_door) {
    policy::DoorBatchPlan plan;
    plan.policy = setup.policy;
    plan.generator = setup.generator;
    plan.open_threshold = setup.open_threshold;
    plan.max_steps = setup.max_steps;
    plan.episodes = config.trials;
    plan.seed = config.seed;
    stats = policy::run_door_batch(plan);
    episodes_total = plan.episodes;
    const std::uint64_t traced = std::min(setup.trace_episodes, episodes_total);
    for (std::uint64_t e = 0; e < traced; ++e) {
      std::vector<policy::DoorTraceStep> steps;
      policy::trace_door_episode(plan, e, steps);
      for (const auto& step : steps)
        append_trace_line(out.trace_jsonl, e, step);
    }
  } else {
    policy::RodBatchPlan plan;
    plan.policy = setup.policy;
    plan.epsilon = setup.epsilon;
    plan.max_steps = setup.max_steps;
    plan.episodes = config.trials;
    plan.seed = config.seed;
    const bool grid = setup.com_grid > 0;
    stats = grid ? policy::run_rod_grid(plan, setup.com_grid)
                 : policy::run_rod_batch(plan);
    episodes_total = grid ? setup.com_grid : plan.episodes;
    const std::uint64_t traced = std::min(setup.trace_episodes, episodes_total);
    for (std::uint64_t e = 0; e < traced; ++e) {
      std::vector<policy::RodTraceStep> steps;
      if (grid)
        policy::trace_rod_grid_episode(plan, setup.com_grid, e, steps);
      else
        policy::trace_rod_episode(plan, e, steps);
      for (const auto& step : steps)
        append_trace_line(out.trace_jsonl, e, step);
    }
  }

  const std::string params = bandit_params(setup);
  metrics::MetricsRow failure;
  failure.experiment = "bandit";
  failure.params = params;
  failure.metric = "failure_rate";
  failure.value = stats.failure_rate();
  failure.std_error = stats.failure_std_error();
  failure.trials = stats.episodes;
  out.rows.push_back(std::move(failure));

  if (stats.successes > 0) {
    metrics::MetricsRow steps;
    steps.experiment = "bandit";
    steps.params = params;
    steps.metric = "mean_steps_to_open";
    steps.value = stats.mean_steps();
    steps.std_error = stats.mean_steps_std_error();
    steps.trials = stats.episodes;
    out.rows.push_back(std::move(steps));
  } else {
    out.diagnostics.push_back(
        "no successful episodes; mean_steps_to_open omitted");
  }
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& config) {
  RunOutput out;
  try {
    switch (config.kind) {
      case ExperimentKind::analytic: run_analytic(config, out); break;
      case ExperimentKind::simulate: run_simulate(config, out); break;
      case ExperimentKind::sweep: run_sweep(config, out); break;
      case ExperimentKind::bandit: run_bandit(config, out); break;
    }
  } catch (const std::invalid_argument& e) {
    // parameter-domain problems surfacing this late are still config errors
    throw ConfigError(e.what());
  }
  return out;
}

std::string render_rows(std::vector<metrics::MetricsRow> rows,
                        OutputFormat format) {
  metrics::sort_rows(rows);
  return format == OutputFormat::csv ? metrics::to_csv(rows)
                                     : metrics::to_jsonl(rows);
}

}  // namespace verigen::exp
