#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhj/errors.hpp"
#include "qhj/interval.hpp"

namespace qhj {

enum class PotentialKind { free_space, harmonic, linear, tabulated };

/// Stationary 1-D potential V(x). Analytic kinds are total on the real
/// line; tabulated potentials are total on their knot range and refuse
/// evaluation outside it. Tabulated data is interpolated with a monotone
/// cubic (Fritsch-Carlson) scheme so V is C1.
class Potential {
 public:
  static Potential free_space();
  /// V(x) = 0.5 * spring_k * (x - center)^2
  static Potential harmonic(double spring_k = 1.0, double center = 0.0);
  /// V(x) = slope * x + offset
  static Potential linear(double slope, double offset = 0.0);
  /// Knots must be strictly increasing, at least 4 of them.
  static Potential tabulated(std::vector<double> xs, std::vector<double> vs);
  /// Two-column CSV `x,V`, strictly increasing x, >= 4 rows.
  static Potential tabulated_from_csv(const std::string& path);

  PotentialKind kind() const { return kind_; }
  double operator()(double x) const;

  /// Ordered real roots of V(x) = E. Empty for the free potential.
  std::vector<double> turning_points(double E) const;

  /// Knot range for tabulated potentials, empty otherwise.
  std::optional<Interval> table_domain() const;

  /// Minimum of V over the interval (exact for analytic kinds, knot +
  /// probe scan for tabulated).
  double min_on(Interval itv, int probes = 512) const;
  /// Maximum of |E - V| over the interval; used by the basis step bound.
  double max_energy_gap(Interval itv, double E, int probes = 512) const;

 private:
  struct Table;
  PotentialKind kind_ = PotentialKind::free_space;
  double spring_k_ = 1.0;
  double center_ = 0.0;
  double slope_ = 0.0;
  double offset_ = 0.0;
  std::shared_ptr<const Table> table_;
};

}  // namespace qhj
