#include "qhj/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhj/numeric/quadrature.hpp"

namespace qhj {

std::string region_to_string(Region r) {
  switch (r) {
    case Region::allowed:
      return "allowed";
    case Region::forbidden:
      return "forbidden";
    case Region::turning:
      return "turning";
  }
  return "allowed";
}

Region classify_region(const Potential& potential, double E, double x,
                       double eps_turn) {
  const double gap = E - potential(x);
  if (gap > eps_turn) return Region::allowed;
  if (gap < -eps_turn) return Region::forbidden;
  return Region::turning;
}

namespace {

// First point of [lo, hi] (walking from x_ref toward x) that is not
// classically allowed, if any: a non-allowed endpoint or an interior
// turning point.
std::optional<double> first_offending_point(const Potential& potential,
                                            double E, double x_ref, double x,
                                            double eps_turn) {
  std::vector<double> offenders;
  if (classify_region(potential, E, x_ref, eps_turn) != Region::allowed)
    offenders.push_back(x_ref);
  if (classify_region(potential, E, x, eps_turn) != Region::allowed)
    offenders.push_back(x);
  const double lo = std::min(x_ref, x);
  const double hi = std::max(x_ref, x);
  for (double r : potential.turning_points(E))
    if (r >= lo && r <= hi) offenders.push_back(r);
  if (offenders.empty()) return std::nullopt;
  // closest to x_ref in the direction of x
  double best = offenders.front();
  for (double o : offenders)
    if (std::fabs(o - x_ref) < std::fabs(best - x_ref)) best = o;
  return best;
}

}  // namespace

double quantum_transform(const ReducedAction& ra, const Potential& potential,
                         double x_ref, double x, double quad_tol,
                         double eps_turn) {
  const double E = ra.microstate().E;
  if (auto bad = first_offending_point(potential, E, x_ref, x, eps_turn)) {
    std::ostringstream msg;
    msg << "transform path [" << std::min(x_ref, x) << ", "
        << std::max(x_ref, x)
        << "] leaves the classically allowed region at x = " << *bad;
    throw ForbiddenRegionError(msg.str());
  }
  const double two_m = 2.0 * ra.constants().mass;
  auto integrand = [&](double q) {
    return ra.conjugate_momentum(q) / std::sqrt(two_m * (E - potential(q)));
  };
  const auto q = numeric::integrate(integrand, x_ref, x, quad_tol);
  if (!q.converged)
    throw DomainError("quantum transform quadrature did not converge");
  return q.value;
}

TransformTable transform_table(const ReducedAction& ra,
                               const Potential& potential, Interval x_range,
                               int samples, double x_ref, double quad_tol,
                               double eps_turn) {
  if (samples < 1) throw DomainError("transform table requires samples >= 1");
  if (!(x_range.hi >= x_range.lo))
    throw DomainError("transform range must be ordered");
  if (!ra.basis().domain().contains(x_range))
    throw DomainError("transform range exceeds the basis domain");

  const double E = ra.microstate().E;
  const double two_m = 2.0 * ra.constants().mass;
  auto integrand = [&](double q) {
    return ra.conjugate_momentum(q) / std::sqrt(two_m * (E - potential(q)));
  };

  TransformTable table;
  table.rows.reserve(static_cast<std::size_t>(samples));

  // component boundaries are the turning points of V at this energy
  std::vector<double> boundaries = potential.turning_points(E);
  auto component_of = [&](double x) -> long {
    return static_cast<long>(
        std::upper_bound(boundaries.begin(), boundaries.end(), x) -
        boundaries.begin());
  };
  const Region ref_region = classify_region(potential, E, x_ref, eps_turn);
  const long ref_component = component_of(x_ref);

  bool have_prev = false;
  double prev_x = 0.0, prev_hat = 0.0;
  long prev_component = -1;

  for (int i = 0; i < samples; ++i) {
    const double x =
        samples == 1
            ? x_range.lo
            : x_range.lo + x_range.length() * (double(i) / double(samples - 1));
    TransformRow row;
    row.x = x;
    row.region = classify_region(potential, E, x, eps_turn);
    if (row.region == Region::allowed) {
      const long comp = component_of(x);
      if (have_prev && comp == prev_component) {
        const auto q = numeric::integrate(integrand, prev_x, x, quad_tol);
        row.x_hat = prev_hat + q.value;
      } else if (ref_region == Region::allowed && comp == ref_component) {
        const auto q = numeric::integrate(integrand, x_ref, x, quad_tol);
        row.x_hat = q.value;
      } else {
        row.x_hat = 0.0;  // component anchored at its first sample
      }
      have_prev = true;
      prev_x = x;
      prev_hat = *row.x_hat;
      prev_component = comp;
    } else {
      have_prev = false;
      prev_component = -1;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace qhj
