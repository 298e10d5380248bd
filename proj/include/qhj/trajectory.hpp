#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhj/free_form.hpp"
#include "qhj/interval.hpp"
#include "qhj/potential.hpp"
#include "qhj/reduced_action.hpp"

namespace qhj {

enum class Engine { floyd, bd };

enum SampleFlag : unsigned {
  kFlagNearSingularity = 1u << 0,
  kFlagForbiddenRegion = 1u << 1,
  kFlagDegradedAccuracy = 1u << 2,
  kFlagTruncated = 1u << 3,
};

/// ';'-joined flag token list (near_singularity, forbidden_region,
/// degraded_accuracy, truncated). Empty string for no flags.
std::string flags_to_string(unsigned flags);

struct TrajectorySample {
  double x = 0.0;
  double t = 0.0;
  double v = 0.0;
  unsigned flags = 0;
};

/// Ordered trajectory samples: by x for the Floyd engine (t computed from
/// x), by t for the conjugate-momentum engine (x integrated in t).
struct Trajectory {
  Engine engine = Engine::floyd;
  Microstate microstate;
  std::vector<TrajectorySample> samples;
};

struct SingularRoot {
  double x_star = 0.0;
  Interval bracket;      // refined sign-change bracket, width <= 1e-10
  double transit_time = 0.0;  // t(bracket.hi) - t(bracket.lo), finite
};

struct SingularitySet {
  std::vector<SingularRoot> roots;
  double scan_step = 0.0;  // window used for near_singularity flagging

  bool near_root(double x) const {
    for (const auto& r : roots)
      if (std::fabs(x - r.x_star) <= 0.5 * scan_step) return true;
    return false;
  }
};

/// The closed-form bundle when the reduced action lives on the analytic
/// free basis; empty for numeric bases.
std::optional<FreeClosedForm> free_closed_form(const ReducedAction& ra);

/// Jacobi time parameterization t = t0 + dS0/dE. Uses the validated
/// closed form on the free basis and finite differences otherwise.
double time_of_position(const ReducedAction& ra, double x);
struct TimedValue {
  double value = 0.0;
  bool degraded = false;
};
TimedValue time_of_position_detailed(const ReducedAction& ra, double x);

/// Group velocity [d(dS0/dx)/dE]^-1. Signed; +-infinity exactly at poles.
double group_velocity(const ReducedAction& ra, double x);
/// dt/dx, smooth and finite; vanishes where the group velocity diverges.
double reciprocal_group_velocity(const ReducedAction& ra, double x);

/// Conjugate-momentum law of motion: 2 (E - V) / (dS0/dx).
double bd_velocity(const ReducedAction& ra, const Potential& potential,
                   double x);

/// Speed of wave fronts of constant principal function: E / (dS0/dx).
double phase_velocity(const ReducedAction& ra, double x);

/// Brackets every sign change of dt/dx inside the window by a dense scan
/// (one twentieth of the local oscillation period) plus bisection. Empty
/// for the classical microstate.
SingularitySet find_singularities(const ReducedAction& ra, Interval window);

Trajectory trace_floyd(const ReducedAction& ra, Interval x_range,
                       int samples);

struct BdTraceOptions {
  /// Integrate past classical turning points (reproduces the disputed
  /// extension of the conjugate-momentum law). Default halts with a flag.
  bool continue_past_turning = false;
  double eps_turn = 1e-10;
};

/// Integrates dx/dt = bd_velocity(x) from x(t_start) = x0 with fixed-step
/// classical Runge-Kutta, halving the step on evaluation failures.
Trajectory trace_bd(const ReducedAction& ra, const Potential& potential,
                    Interval t_range, double step,
                    const BdTraceOptions& options = {});

struct ComparisonRow {
  double x = 0.0;
  double t = 0.0;
  double v_group = 0.0;
  double v_bd = 0.0;
  double v_phase = 0.0;
  double abs_diff = 0.0;
  unsigned flags = 0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double max_abs_diff = 0.0;  // over rows with finite velocities
  double x_at_max = 0.0;
};

/// Per-sample comparison of the two laws of motion over a uniform x grid.
ComparisonReport compare_engines(const ReducedAction& ra,
                                 const Potential& potential, Interval x_range,
                                 int samples, double eps_turn = 1e-10);

}  // namespace qhj
