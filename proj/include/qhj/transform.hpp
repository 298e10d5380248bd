#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhj/interval.hpp"
#include "qhj/potential.hpp"
#include "qhj/reduced_action.hpp"

namespace qhj {

enum class Region { allowed, forbidden, turning };

std::string region_to_string(Region r);

/// allowed if E - V(x) > eps_turn, forbidden if E - V(x) < -eps_turn,
/// turning otherwise.
Region classify_region(const Potential& potential, double E, double x,
                       double eps_turn = 1e-10);

/// Coordinate transform
///
///   x_hat(x) = integral from x_ref to x of dS0/dq / sqrt(2m (E - V(q))) dq
///
/// by adaptive quadrature. The closed interval [x_ref, x] must lie in a
/// single classically allowed component; paths meeting a turning point or
/// forbidden region are refused (the integrand turns imaginary there and
/// the map is not a homeomorphism across turning points).
double quantum_transform(const ReducedAction& ra, const Potential& potential,
                         double x_ref, double x, double quad_tol = 1e-10,
                         double eps_turn = 1e-10);

struct TransformRow {
  double x = 0.0;
  std::optional<double> x_hat;  // defined exactly on allowed samples
  Region region = Region::allowed;
};

/// Transform samples over a uniform grid with region labels. Each allowed
/// component carries its own anchor: x_ref for the component containing it,
/// the first sample of the component otherwise; components are not related
/// to each other.
struct TransformTable {
  std::vector<TransformRow> rows;
};

TransformTable transform_table(const ReducedAction& ra,
                               const Potential& potential, Interval x_range,
                               int samples, double x_ref,
                               double quad_tol = 1e-10,
                               double eps_turn = 1e-10);

}  // namespace qhj
