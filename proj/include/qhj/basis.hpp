#pragma once

#include <array>
#include <memory>
#include <vector>

#include "qhj/constants.hpp"
#include "qhj/errors.hpp"
#include "qhj/interval.hpp"
#include "qhj/potential.hpp"

namespace qhj {

/// Solution value with its first two derivatives at a point.
struct BasisPoint {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// A pair of independent real solutions (phi1, phi2) of the stationary
/// Schroedinger equation at fixed energy, with constant Wronskian
/// W = phi1 phi2' - phi2 phi1'. Immutable after construction.
///
/// Two constructions are provided:
///  - analytic_free: phi1 = cos(k (x - x0)), phi2 = sin(k (x - x0)), W = k.
///  - integrate: canonical initial conditions phi1 = (1, 0), phi2 = (0, 1)
///    at the anchor (W = 1), fixed-step classical Runge-Kutta, quintic
///    Hermite dense output between nodes, second derivatives from the ODE.
class SolutionBasis {
 public:
  static SolutionBasis analytic_free(const PhysicalConstants& pc, double E,
                                     double x0);

  /// Integrates over `domain` with initial conditions at `anchor` (which
  /// must lie inside the domain; defaults to domain.lo). The step must
  /// resolve the local wavelength: step <= 0.05 * hbar / sqrt(2 m max|E-V|),
  /// the bound clamped below at `min_step_bound`.
  static SolutionBasis integrate(const PhysicalConstants& pc,
                                 const Potential& potential, double E,
                                 Interval domain, double step,
                                 double anchor,
                                 double min_step_bound = 1e-6);
  static SolutionBasis integrate(const PhysicalConstants& pc,
                                 const Potential& potential, double E,
                                 Interval domain, double step) {
    return integrate(pc, potential, E, domain, step, domain.lo);
  }

  BasisPoint phi1(double x) const;
  BasisPoint phi2(double x) const;

  double wronskian() const { return wronskian_; }
  double energy() const { return energy_; }
  const Interval& domain() const { return domain_; }
  double anchor() const { return anchor_; }
  bool analytic() const { return analytic_; }
  const PhysicalConstants& constants() const { return constants_; }

  /// Signed count of zeros of phi1 strictly between the anchor and x
  /// (positive for x right of the anchor). Drives branch unwrapping of the
  /// reduced action.
  long node_count_from_anchor(double x) const;

  /// Grid nodes of a numeric basis (anchor only for analytic bases).
  const std::vector<double>& grid() const { return grid_x_; }

  /// Copy with the stored Wronskian scaled; fault-injection hook for the
  /// check suite.
  SolutionBasis with_scaled_wronskian(double scale) const;

 private:
  SolutionBasis() = default;
  void require_in_domain(double x) const;
  BasisPoint eval(double x, int which) const;

  PhysicalConstants constants_;
  double energy_ = 0.0;
  double wronskian_ = 0.0;
  Interval domain_;
  double anchor_ = 0.0;
  bool analytic_ = false;

  // analytic parameters
  double k_ = 0.0;

  // numeric storage: states are (phi1, phi1', phi2, phi2') per node
  std::vector<double> grid_x_;
  std::vector<std::array<double, 4>> states_;
  std::vector<double> phi1_zeros_;  // ascending
  Potential potential_;
};

}  // namespace qhj
