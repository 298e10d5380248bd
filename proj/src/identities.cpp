#include "qhj/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qhj/numeric/richardson.hpp"
#include "qhj/trajectory.hpp"

namespace qhj {

namespace {

double rel_diff(double value, double reference, double floor = 1e-9) {
  return std::fabs(value - reference) /
         std::max(std::fabs(reference), floor);
}

std::vector<double> probe_positions(Interval range, int count) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    xs.push_back(0.5 * (range.lo + range.hi));
    return xs;
  }
  for (int i = 0; i < count; ++i)
    xs.push_back(range.lo + range.length() * (double(i) / double(count - 1)));
  return xs;
}

}  // namespace

IdentityReport legendre_dual_check(const ReducedAction& ra, double x,
                                   double tolerance) {
  const Microstate& ms = ra.microstate();
  const double E = ms.E;
  const double s0_anchored = ra.s0(x) - ra.s0(ms.x0);
  const double t_anchored = time_of_position(ra, x) - ms.t0;
  const double ds0_de = ra.s0_energy_derivative(x);

  // principal-function transform of S0 (definition through the separated
  // form S = S0 - E t, sign flipped, offsets anchored)
  const double s_cal = E * t_anchored - s0_anchored;

  // S0 = t dS/dt - S with dS/dt = E and Jacobi's t - t0 = dS0/dE
  const double residual_s0 = std::fabs(s0_anchored - (E * ds0_de - s_cal));
  // S = E dS0/dE - S0
  const double residual_s = std::fabs(s_cal - (E * ds0_de - s0_anchored));

  IdentityReport report;
  report.add("legendre_dual_s0_from_s", residual_s0, tolerance);
  report.add("legendre_dual_s_from_s0", residual_s, tolerance);
  return report;
}

LagrangianRate lagrangian_rate(const ReducedAction& ra,
                               const Potential& potential, double x,
                               const SingularitySet* singular) {
  if (singular) {
    for (const auto& r : singular->roots)
      if (x >= r.bracket.lo && x <= r.bracket.hi) return {0.0, false};
  }
  const double recip = reciprocal_group_velocity(ra, x);
  if (recip == 0.0 || !std::isfinite(recip)) return {0.0, false};
  const double v = 1.0 / recip;
  const ActionDerivatives d = ra.derivatives(x);
  const double hh = ra.constants().hbar * ra.constants().hbar;
  const double m = ra.constants().mass;
  const double bracket = d.d3 / d.d1 - 1.5 * (d.d2 / d.d1) * (d.d2 / d.d1);
  const double value = d.d1 * v - d.d1 * d.d1 / (2.0 * m) - potential(x) -
                       hh / (4.0 * m) * bracket;
  return {value, true};
}

LagrangianRate lagrangian_rate_energy_route(const ReducedAction& ra,
                                            double x) {
  const double recip = reciprocal_group_velocity(ra, x);
  if (recip == 0.0 || !std::isfinite(recip)) return {0.0, false};
  const double v = 1.0 / recip;
  return {ra.derivatives(x).d1 * v - ra.microstate().E, true};
}

IdentityReport run_check_suite(const ReducedAction& ra,
                               const Potential& potential, Interval x_range,
                               int samples, const CheckOptions& options) {
  const Microstate& ms = ra.microstate();
  const PhysicalConstants& pc = ra.constants();
  const bool free_basis = ra.basis().analytic();
  IdentityReport report;

  const std::vector<double> grid =
      probe_positions(x_range, std::max(samples, 2));

  const double wavelength =
      std::numbers::pi * pc.hbar /
      std::sqrt(2.0 * pc.mass * std::max(std::fabs(ms.E), 1e-3));
  // x-difference stencil, kept small against both the oscillation scale
  // and the probe window
  const double stencil_h =
      std::min(0.05 * wavelength, 0.05 * x_range.length());

  // finite-difference probes keep clear of bounded-domain edges so the
  // difference stencils stay inside the basis domain
  Interval fd_range = x_range;
  if (!ra.basis().domain().unbounded()) {
    const double margin = 0.05 * x_range.length() + 1.2 * stencil_h;
    fd_range = {x_range.lo + margin, x_range.hi - margin};
  }
  const std::vector<double> fd_probes =
      probe_positions(fd_range, std::min(std::max(samples, 2), 16));

  const SingularitySet singular = find_singularities(ra, x_range);
  // clearance covers the scan window plus the difference stencil, so no
  // Richardson ladder straddles a velocity pole
  auto clear_of_roots = [&](double x) {
    const double radius = singular.scan_step + 1.5 * stencil_h;
    for (const auto& r : singular.roots)
      if (std::fabs(x - r.x_star) <= radius) return false;
    return true;
  };

  // Wronskian constancy across the grid, measured against the local
  // product scale (forbidden-region solutions grow exponentially and the
  // raw difference of huge products is dominated by rounding noise)
  {
    const double w0 = ra.basis().wronskian();
    double worst = 0.0;
    for (double x : grid) {
      const BasisPoint p1 = ra.basis().phi1(x);
      const BasisPoint p2 = ra.basis().phi2(x);
      const double w = p1.v * p2.d1 - p2.v * p1.d1;
      const double scale = std::max({std::fabs(w0), std::fabs(p1.v * p2.d1),
                                     std::fabs(p2.v * p1.d1)});
      worst = std::max(worst, std::fabs(w - w0) / scale);
    }
    report.add("wronskian_constancy", worst, 1e-8);
  }

  // Schroedinger residual with an independent Richardson difference of
  // phi', scaled to the local solution size (solutions grow exponentially
  // in forbidden regions)
  {
    const double coeff = 2.0 * pc.mass / (pc.hbar * pc.hbar);
    const double h0 = 1e-3;
    double worst = 0.0;
    for (double x : fd_probes) {
      const double xc =
          std::min(std::max(x, x_range.lo + 2.0 * h0), x_range.hi - 2.0 * h0);
      for (int which = 1; which <= 2; ++which) {
        auto first = [&](double q) {
          return which == 1 ? ra.basis().phi1(q).d1 : ra.basis().phi2(q).d1;
        };
        const double second = numeric::central_derivative(first, xc, h0).value;
        const double expected =
            coeff * (potential(xc) - ms.E) *
            (which == 1 ? ra.basis().phi1(xc).v : ra.basis().phi2(xc).v);
        worst = std::max(worst, std::fabs(second - expected) /
                                    std::max(1.0, std::fabs(expected)));
      }
    }
    report.add("schrodinger_residual", worst, free_basis ? 1e-8 : 1e-6);
  }

  // anchor value of the unwrapped action
  {
    const double expected = pc.hbar * (std::atan(ms.b) + ms.lambda);
    report.add("anchor_identity", std::fabs(ra.s0(ms.x0) - expected), 1e-9);
  }

  // angle-tracked S0 against quadrature of the conjugate momentum
  {
    double worst = 0.0;
    for (double x : fd_probes)
      worst = std::max(worst,
                       std::fabs(ra.s0(x) - ra.s0_by_quadrature(x, 1e-12)));
    report.add("s0_dual_route", worst, 1e-9);
  }

  // conjugate momentum against a Richardson derivative of S0
  {
    double worst = 0.0;
    for (double x : fd_probes) {
      auto f = [&](double q) { return ra.s0(q); };
      const double fd = numeric::central_derivative(f, x, stencil_h).value;
      worst = std::max(worst, rel_diff(ra.conjugate_momentum(x), fd));
    }
    report.add("momentum_derivative_consistency", worst, 1e-7);
  }

  // strict monotonicity of S0 in the slope direction
  {
    const std::vector<double> dense = probe_positions(x_range, 1000);
    double min_increment = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < dense.size(); ++i) {
      const double inc = static_cast<double>(ra.slope_sign()) *
                         (ra.s0(dense[i + 1]) - ra.s0(dense[i]));
      min_increment = std::min(min_increment, inc);
    }
    report.add("s0_monotonic", std::max(0.0, -min_increment), 0.0);
  }

  // Jacobi time parameterization: closed form against finite differences
  if (free_basis) {
    double worst = 0.0;
    for (double x : fd_probes) {
      const double t = time_of_position(ra, x) - ms.t0;
      const double fd = ra.s0_energy_derivative(x);
      worst = std::max(worst, rel_diff(t, fd));
    }
    report.add("jacobi_time_parameterization", worst, options.tol_jacobi);
  }

  // two routes to the group velocity, outside singular windows
  if (free_basis) {
    double worst = 0.0;
    for (double x : fd_probes) {
      if (!clear_of_roots(x)) continue;
      const double closed = group_velocity(ra, x);
      const double fd = 1.0 / ra.momentum_energy_derivative_detailed(x).value;
      worst = std::max(worst, rel_diff(closed, fd));
    }
    report.add("group_velocity_closed_form", worst, 1e-6);
  }

  // d(time)/dx * v = 1
  {
    double worst = 0.0;
    for (double x : fd_probes) {
      if (!clear_of_roots(x)) continue;
      auto f = [&](double q) { return time_of_position(ra, q); };
      const double dtdx = numeric::central_derivative(f, x, stencil_h).value;
      const double v = group_velocity(ra, x);
      if (!std::isfinite(v)) continue;
      worst = std::max(worst, std::fabs(dtdx * v - 1.0));
    }
    report.add("time_derivative_reciprocal", worst, 1e-5);
  }

  // QSHJE residual
  {
    double worst = 0.0;
    for (double x : grid)
      worst = std::max(worst, std::fabs(ra.qshje_residual(x)));
    report.add("qshje_residual", worst, options.tol_qshje);
  }

  // Legendre dual transformations
  {
    double worst_s0 = 0.0, worst_s = 0.0;
    for (double x : fd_probes) {
      const IdentityReport dual =
          legendre_dual_check(ra, x, options.tol_jacobi);
      worst_s0 = std::max(worst_s0, dual.entries[0].residual);
      worst_s = std::max(worst_s, dual.entries[1].residual);
    }
    report.add("legendre_dual_s0_from_s", worst_s0, options.tol_jacobi);
    report.add("legendre_dual_s_from_s0", worst_s, options.tol_jacobi);
  }

  // quantum Lagrangian: displayed bracket form against dS0/dx * v - E
  {
    double worst = 0.0;
    for (double x : fd_probes) {
      if (!clear_of_roots(x)) continue;
      const LagrangianRate r1 = lagrangian_rate(ra, potential, x);
      const LagrangianRate r2 = lagrangian_rate_energy_route(ra, x);
      if (!r1.defined || !r2.defined) continue;
      worst = std::max(worst, std::fabs(r1.value - r2.value));
    }
    report.add("lagrangian_rate_two_route", worst,
               free_basis ? 1e-8 : 2.0 * options.tol_qshje);
  }

  // involution of the parameter conversion (ulp-scale slack: 1/(1/a) may
  // round one ulp off for arbitrary a)
  {
    const ConvertedParams once = convert_params(ms.a, ms.b);
    const ConvertedParams twice = convert_params(once.a35, once.b35);
    const double residual =
        std::fabs(twice.a35 - ms.a) + std::fabs(twice.b35 - ms.b);
    const double ulps = 4.0 * std::numeric_limits<double>::epsilon() *
                        (std::fabs(ms.a) + std::fabs(ms.b) + 1.0);
    report.add("parameter_conversion_involution", residual, ulps);
  }

  if (free_basis && potential.kind() == PotentialKind::free_space) {
    const FreeClosedForm cf = *free_closed_form(ra);

    // envelope positivity and its defining expansion
    {
      double min_env = std::numeric_limits<double>::infinity();
      for (double x : grid) min_env = std::min(min_env, cf.envelope(x));
      report.add("envelope_positive", std::max(0.0, -min_env), 0.0);

      const double a2 = ms.a * ms.a, b2 = ms.b * ms.b;
      const double expansion = a2 * a2 + b2 * b2 + 1.0 + 2.0 * a2 * b2 +
                               2.0 * b2 - 2.0 * a2;
      report.add("sigma_expansion",
                 std::fabs(cf.sigma * cf.sigma - expansion), 1e-12);

      double worst = 0.0;
      for (double x : fd_probes) {
        const double identity = (1.0 / ms.a) *
                                std::sqrt(ms.E / (2.0 * pc.mass)) *
                                cf.envelope(x) * ra.conjugate_momentum(x);
        worst = std::max(worst, std::fabs(identity - 2.0 * ms.E));
      }
      report.add("envelope_momentum_identity", worst, 1e-9);
    }

    // velocities coincide at the anchor
    {
      const double vg = group_velocity(ra, ms.x0);
      const double vb = bd_velocity(ra, potential, ms.x0);
      report.add("anchor_velocity_coincidence", std::fabs(vg - vb), 1e-9);
    }

    // action rate along the conjugate-momentum flow
    {
      const Trajectory traj =
          trace_bd(ra, potential, {ms.t0, ms.t0 + 10.0}, 1e-2);
      const double s0_start = ra.s0(ms.x0);
      double worst = 0.0;
      for (const auto& s : traj.samples)
        worst = std::max(worst, std::fabs(ra.s0(s.x) - s0_start -
                                          2.0 * ms.E * (s.t - ms.t0)));
      report.add("bd_action_rate", worst, 1e-6);
    }

    // round trip of the closed-form motion equation through the converted
    // parameter pair
    {
      const ConvertedParams conv = convert_params(ms.a, ms.b);
      Microstate contra = ms;
      contra.a = conv.a35;
      contra.b = conv.b35;
      const ReducedAction ra_conv = make_free_reduced_action(pc, contra);
      const Trajectory traj =
          trace_bd(ra_conv, potential, {ms.t0, ms.t0 + 10.0}, 1e-2);
      const double s0_start = ra_conv.s0(contra.x0);
      double worst = 0.0;
      for (const auto& s : traj.samples) {
        const double recovered =
            (ra_conv.s0(s.x) - s0_start) / (2.0 * ms.E) + ms.t0;
        worst = std::max(worst, std::fabs(recovered - s.t));
      }
      report.add("bd_round_trip", worst, 1e-6);
    }
  }

  return report;
}

}  // namespace qhj
