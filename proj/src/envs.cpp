#include "verigen/envs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace verigen::env {

const char* to_string(DoorMode mode) {
  switch (mode) {
    case DoorMode::push_left: return "push_left";
    case DoorMode::push_right: return "push_right";
    case DoorMode::pull_left: return "pull_left";
    case DoorMode::pull_right: return "pull_right";
  }
  return "unknown";
}

const char* to_string(Tilt tilt) {
  switch (tilt) {
    case Tilt::left: return "left";
    case Tilt::right: return "right";
    case Tilt::none: return "none";
  }
  return "unknown";
}

std::pair<DoorEnv, DoorOutcome> door_step(DoorEnv env, const DoorAction& a) {
  if (env.done())
    throw std::logic_error("door episode already terminated");
  if (!(a.quality > 0.0 && a.quality <= 1.0))
    throw std::invalid_argument("door action quality must lie in (0, 1]");

  DoorOutcome outcome;
  if (a.mode == env.hidden_mode) {
    outcome.opened_amount = a.quality * (1.0 - env.open_fraction);
    env.open_fraction += outcome.opened_amount;
  }
  env.steps_taken += 1;
  outcome.success = env.succeeded();
  return {env, outcome};
}

std::pair<RodEnv, RodOutcome> rod_step(RodEnv env, double lift_point) {
  if (env.done())
    throw std::logic_error("rod episode already terminated");
  if (!(lift_point >= 0.0 && lift_point <= 1.0))
    throw std::invalid_argument("lift point must lie in [0, 1]");

  RodOutcome outcome;
  double offset = lift_point - env.hidden_com;
  if (std::abs(offset) <= env.epsilon) {
    outcome.success = true;
    outcome.tilt = Tilt::none;
    env.lifted = true;
  } else {
    outcome.tilt = offset > 0.0 ? Tilt::right : Tilt::left;
  }
  env.steps_taken += 1;
  return {env, outcome};
}

ComInterval theoretical_com_interval(const RodHistory& history,
                                     double epsilon) {
  ComInterval interval;
  for (const auto& event : history) {
    if (event.outcome.success) continue;
    if (event.outcome.tilt == Tilt::right)
      interval.hi = std::min(interval.hi, event.lift_point - epsilon);
    else if (event.outcome.tilt == Tilt::left)
      interval.lo = std::max(interval.lo, event.lift_point + epsilon);
  }
  if (interval.lo > interval.hi)
    throw std::runtime_error("history inconsistent with any com");
  return interval;
}

}  // namespace verigen::env
