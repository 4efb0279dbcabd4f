#pragma once

#include <utility>
#include <vector>

namespace verigen::env {

// ---------------------------------------------------------------------------
// Door: four hidden opening modes; only actions in the hidden mode make
// progress. The episode succeeds once open_fraction reaches open_threshold.

enum class DoorMode : int {
  push_left = 0,
  push_right = 1,
  pull_left = 2,
  pull_right = 3,
};

inline constexpr int kDoorModeCount = 4;

const char* to_string(DoorMode mode);

struct DoorAction {
  DoorMode mode = DoorMode::push_left;
  double quality = 1.0;  // in (0, 1]; fraction of the remaining gap opened
};

struct DoorOutcome {
  bool success = false;       // threshold reached after this step
  double opened_amount = 0.0;  // 0 whenever the mode was wrong
};

struct DoorEnv {
  DoorMode hidden_mode = DoorMode::push_left;
  double open_fraction = 0.0;
  double open_threshold = 0.05;  // 0.9 variant selects the stricter metric
  int max_steps = 30;
  int steps_taken = 0;

  bool succeeded() const { return open_fraction >= open_threshold; }
  bool done() const { return succeeded() || steps_taken >= max_steps; }
};

// Correct mode: open_fraction += quality * (1 - open_fraction), which keeps
// the fraction inside [0, 1] without clipping. Wrong mode: no change.
std::pair<DoorEnv, DoorOutcome> door_step(DoorEnv env, const DoorAction& a);

struct DoorEvent {
  DoorAction action;
  DoorOutcome outcome;
};

using DoorHistory = std::vector<DoorEvent>;

// ---------------------------------------------------------------------------
// Rod: hidden center of mass on [0, 1]; a lift succeeds within distance
// epsilon, otherwise the tilt reveals which side of the com the lift point
// landed on.

enum class Tilt { left, right, none };  // side of the com the lift point hit

const char* to_string(Tilt tilt);

struct RodOutcome {
  bool success = false;
  Tilt tilt = Tilt::none;
};

struct RodEnv {
  double hidden_com = 0.5;  // in [0, 1]
  double epsilon = 0.05;
  int max_steps = 5;
  int steps_taken = 0;
  bool lifted = false;

  bool done() const { return lifted || steps_taken >= max_steps; }
};

std::pair<RodEnv, RodOutcome> rod_step(RodEnv env, double lift_point);

struct RodEvent {
  double lift_point = 0.0;
  RodOutcome outcome;
};

using RodHistory = std::vector<RodEvent>;

struct ComInterval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

/*
 * Every failed lift proves the com sits strictly more than epsilon away on
 * the revealed side: a lift at x tilting right (com to its left) forces
 * com < x - epsilon, a left tilt forces com > x + epsilon. The interval of
 * com values consistent with the whole history therefore only ever shrinks.
 * Throws when the history admits no com at all.
 */
ComInterval theoretical_com_interval(const RodHistory& history,
                                     double epsilon);

}  // namespace verigen::env
