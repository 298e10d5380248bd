#include "qhj/trajectory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qhj/numeric/bisection.hpp"
#include "qhj/transform.hpp"

namespace qhj {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string flags_to_string(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* token) {
    if (flags & bit) {
      if (!out.empty()) out += ';';
      out += token;
    }
  };
  add(kFlagNearSingularity, "near_singularity");
  add(kFlagForbiddenRegion, "forbidden_region");
  add(kFlagDegradedAccuracy, "degraded_accuracy");
  add(kFlagTruncated, "truncated");
  return out;
}

std::optional<FreeClosedForm> free_closed_form(const ReducedAction& ra) {
  if (!ra.basis().analytic()) return std::nullopt;
  return FreeClosedForm::from(ra.constants(), ra.microstate());
}

TimedValue time_of_position_detailed(const ReducedAction& ra, double x) {
  if (auto cf = free_closed_form(ra)) return {cf->time_of_position(x), false};
  const EnergyDerivative d = ra.s0_energy_derivative_detailed(x);
  return {ra.microstate().t0 + d.value, d.degraded};
}

double time_of_position(const ReducedAction& ra, double x) {
  return time_of_position_detailed(ra, x).value;
}

double reciprocal_group_velocity(const ReducedAction& ra, double x) {
  if (auto cf = free_closed_form(ra)) return cf->dt_dx(x);
  return ra.momentum_energy_derivative_detailed(x).value;
}

double group_velocity(const ReducedAction& ra, double x) {
  return 1.0 / reciprocal_group_velocity(ra, x);
}

double bd_velocity(const ReducedAction& ra, const Potential& potential,
                   double x) {
  const double p = ra.conjugate_momentum(x);
  return 2.0 * (ra.microstate().E - potential(x)) / p;
}

double phase_velocity(const ReducedAction& ra, double x) {
  return ra.microstate().E / ra.conjugate_momentum(x);
}

namespace {

// Scan resolution: one twentieth of the local oscillation period
// pi hbar / sqrt(2 m max(E - V)). For numeric bases the kinetic maximum is
// probed through the ODE relation phi'' = (2m/hbar^2)(V - E) phi.
double singularity_scan_step(const ReducedAction& ra, Interval window) {
  const auto& pc = ra.constants();
  double max_kinetic = 0.0;
  if (ra.basis().analytic()) {
    max_kinetic = ra.microstate().E;
  } else {
    const int probes = 64;
    const double hh = pc.hbar * pc.hbar / (2.0 * pc.mass);
    for (int i = 0; i <= probes; ++i) {
      const double x = window.lo + window.length() * (double(i) / probes);
      const BasisPoint p1 = ra.basis().phi1(x);
      const BasisPoint p2 = ra.basis().phi2(x);
      const double v_minus_e = (std::fabs(p1.v) >= std::fabs(p2.v))
                                   ? hh * p1.d2 / p1.v
                                   : hh * p2.d2 / p2.v;
      max_kinetic = std::max(max_kinetic, -v_minus_e);
    }
    max_kinetic = std::max(max_kinetic, 1e-8);
  }
  const double period =
      std::numbers::pi * pc.hbar / std::sqrt(2.0 * pc.mass * max_kinetic);
  return period / 20.0;
}

}  // namespace

SingularitySet find_singularities(const ReducedAction& ra, Interval window) {
  if (!(window.hi >= window.lo))
    throw DomainError("singularity window must be ordered");
  if (!ra.basis().domain().contains(window))
    throw DomainError("singularity window exceeds the basis domain");

  SingularitySet out;
  out.scan_step = singularity_scan_step(ra, window);
  if (ra.microstate().classical()) return out;

  auto recip = [&](double x) { return reciprocal_group_velocity(ra, x); };

  const double len = window.length();
  if (len <= 0.0) return out;
  const long n =
      std::max<long>(1, static_cast<long>(std::ceil(len / out.scan_step)));
  double prev_x = window.lo;
  double prev_r = recip(prev_x);
  for (long i = 1; i <= n; ++i) {
    const double x = window.lo + len * (double(i) / double(n));
    const double r = recip(x);
    if (prev_r == 0.0 || prev_r * r < 0.0) {
      auto bracket =
          numeric::bisect_to_width(recip, prev_x, x, prev_r, 1e-10);
      SingularRoot root;
      root.bracket = bracket;
      root.x_star = 0.5 * (bracket.lo + bracket.hi);
      root.transit_time = time_of_position(ra, bracket.hi) -
                          time_of_position(ra, bracket.lo);
      if (!std::isfinite(root.transit_time))
        throw DomainError("transit time across a singular bracket is not finite");
      out.roots.push_back(root);
    }
    prev_x = x;
    prev_r = r;
  }
  return out;
}

Trajectory trace_floyd(const ReducedAction& ra, Interval x_range,
                       int samples) {
  if (samples < 2)
    throw DomainError("floyd trace requires at least two samples");
  if (!(x_range.hi >= x_range.lo))
    throw DomainError("floyd trace range must be ordered");
  if (!ra.basis().domain().contains(x_range))
    throw DomainError("floyd trace range exceeds the basis domain");

  const SingularitySet sing = find_singularities(ra, x_range);

  Trajectory traj;
  traj.engine = Engine::floyd;
  traj.microstate = ra.microstate();
  traj.samples.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double x =
        x_range.lo + x_range.length() * (double(i) / double(samples - 1));
    TrajectorySample s;
    s.x = x;
    const TimedValue t = time_of_position_detailed(ra, x);
    s.t = t.value;
    s.v = group_velocity(ra, x);
    if (t.degraded) s.flags |= kFlagDegradedAccuracy;
    if (!std::isfinite(s.v) || sing.near_root(x))
      s.flags |= kFlagNearSingularity;
    traj.samples.push_back(s);
  }
  return traj;
}

Trajectory trace_bd(const ReducedAction& ra, const Potential& potential,
                    Interval t_range, double step,
                    const BdTraceOptions& options) {
  if (!(step > 0.0)) throw DomainError("bd trace requires a positive step");
  if (!(t_range.hi >= t_range.lo))
    throw DomainError("bd trace range must be ordered");

  const Microstate& ms = ra.microstate();
  const Interval domain = ra.basis().domain();

  auto allowed = [&](double x) {
    return ms.E - potential(x) > options.eps_turn;
  };
  // velocity evaluation; nullopt marks a stage the policy refuses
  auto velocity = [&](double x) -> std::optional<double> {
    if (!domain.contains(x)) return std::nullopt;
    if (!options.continue_past_turning && !allowed(x)) return std::nullopt;
    const double v = bd_velocity(ra, potential, x);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  auto rk4 = [&](double x, double h) -> std::optional<double> {
    const auto k1 = velocity(x);
    if (!k1) return std::nullopt;
    const auto k2 = velocity(x + 0.5 * h * *k1);
    if (!k2) return std::nullopt;
    const auto k3 = velocity(x + 0.5 * h * *k2);
    if (!k3) return std::nullopt;
    const auto k4 = velocity(x + h * *k3);
    if (!k4) return std::nullopt;
    const double xn = x + h / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
    if (!velocity(xn)) return std::nullopt;
    return xn;
  };

  Trajectory traj;
  traj.engine = Engine::bd;
  traj.microstate = ms;

  double x = ms.x0;
  double t = t_range.lo;
  {
    TrajectorySample s;
    s.x = x;
    s.t = t;
    s.v = bd_velocity(ra, potential, x);
    if (ms.E - potential(x) < -options.eps_turn)
      s.flags |= kFlagForbiddenRegion;
    traj.samples.push_back(s);
  }
  const double len = t_range.length();
  if (len == 0.0) return traj;
  const long n =
      std::max<long>(1, static_cast<long>(std::ceil(len / step - 1e-12)));
  const double h = len / static_cast<double>(n);

  for (long i = 1; i <= n; ++i) {
    // advance one output step, halving internally on refusals and growing
    // back after successes
    double remaining = h;
    double h_try = h;
    bool stuck = false;
    long iterations = 0;
    while (remaining > 0.0 && !stuck) {
      const double h_cur = std::min(h_try, remaining);
      if (auto xn = rk4(x, h_cur)) {
        x = *xn;
        remaining -= h_cur;
        h_try = std::min(h, 2.0 * h_try);
      } else if (h_try > h * std::ldexp(1.0, -40)) {
        h_try *= 0.5;
      } else {
        stuck = true;
      }
      if (++iterations > 100000) stuck = true;
    }
    if (stuck) {
      auto& last = traj.samples.back();
      last.flags |= kFlagTruncated;
      if (!options.continue_past_turning && !allowed(x))
        last.flags |= kFlagForbiddenRegion;
      break;
    }
    t = t_range.lo + h * static_cast<double>(i);
    TrajectorySample s;
    s.x = x;
    s.t = t;
    s.v = bd_velocity(ra, potential, x);
    if (ms.E - potential(x) < -options.eps_turn)
      s.flags |= kFlagForbiddenRegion;
    traj.samples.push_back(s);
  }
  return traj;
}

ComparisonReport compare_engines(const ReducedAction& ra,
                                 const Potential& potential, Interval x_range,
                                 int samples, double eps_turn) {
  if (samples < 2)
    throw DomainError("engine comparison requires at least two samples");
  if (!(x_range.hi >= x_range.lo))
    throw DomainError("comparison range must be ordered");
  if (!ra.basis().domain().contains(x_range))
    throw DomainError("comparison range exceeds the basis domain");

  const SingularitySet sing = find_singularities(ra, x_range);

  ComparisonReport report;
  report.max_abs_diff = 0.0;
  report.x_at_max = x_range.lo;
  for (int i = 0; i < samples; ++i) {
    const double x =
        x_range.lo + x_range.length() * (double(i) / double(samples - 1));
    const Region region = classify_region(potential, ra.microstate().E, x,
                                          eps_turn);
    ComparisonRow row;
    row.x = x;
    const TimedValue t = time_of_position_detailed(ra, x);
    row.t = t.value;
    row.v_group = group_velocity(ra, x);
    row.v_bd = bd_velocity(ra, potential, x);
    row.v_phase = phase_velocity(ra, x);
    row.abs_diff = std::fabs(row.v_group - row.v_bd);
    if (t.degraded) row.flags |= kFlagDegradedAccuracy;
    if (!std::isfinite(row.v_group) || sing.near_root(x))
      row.flags |= kFlagNearSingularity;
    if (region != Region::allowed) {
      row.flags |= kFlagForbiddenRegion | kFlagTruncated;
      report.rows.push_back(row);
      break;  // default policy halts at the first non-allowed sample
    }
    if (std::isfinite(row.abs_diff) && row.abs_diff > report.max_abs_diff) {
      report.max_abs_diff = row.abs_diff;
      report.x_at_max = x;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qhj
