#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "qhj/basis.hpp"
#include "qhj/constants.hpp"
#include "qhj/microstate.hpp"
#include "qhj/potential.hpp"

namespace qhj {

/// First three x-derivatives of the reduced action at a point.
struct ActionDerivatives {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

struct EnergyDerivative {
  double value = 0.0;
  bool degraded = false;  // one-sided stencil was needed
};

/// The quantum reduced action
///
///   S0(x) = hbar * arctan(a phi2 / phi1 + b) + hbar * lambda
///
/// for a bound (basis, microstate) pair, continuous and strictly monotone
/// in x: the arctan branch is unwrapped by quadrant-aware angle tracking of
/// the pair (phi1, a phi2 + b phi1) with a winding count across the zeros
/// of phi1. Derivatives in x come from the closed form; the derivative in E
/// rebuilds the basis at perturbed energies through `rebuilder`.
///
/// Immutable and safe for concurrent evaluation; the perturbed-basis cache
/// is internally synchronized.
class ReducedAction {
 public:
  using Rebuilder = std::function<SolutionBasis(double E)>;

  /// The basis anchor must coincide with the microstate's x0 so that the
  /// unwrapped angle and all time parameterizations share one anchor.
  ReducedAction(SolutionBasis basis, Microstate ms, PhysicalConstants pc,
                Rebuilder rebuilder, double potential_floor);

  double s0(double x) const;
  /// Independent realization of s0 by adaptive quadrature of the conjugate
  /// momentum from x0; the two routes must agree to ~1e-9.
  double s0_by_quadrature(double x, double quad_tol = 1e-12) const;

  /// dS0/dx = hbar a W / (phi1^2 + (a phi2 + b phi1)^2); finite, nonzero,
  /// fixed sign sign(a W).
  double conjugate_momentum(double x) const;

  /// First three x-derivatives from the chain rule on the arctan form.
  ActionDerivatives derivatives(double x) const;

  /// dS0/dE at fixed x by Richardson central difference over rebuilt bases,
  /// holding (a, b, x0, lambda) fixed.
  double s0_energy_derivative(double x) const;
  EnergyDerivative s0_energy_derivative_detailed(double x) const;

  /// d(dS0/dx)/dE at fixed x, same differencing policy. Its inverse is the
  /// group velocity.
  EnergyDerivative momentum_energy_derivative_detailed(double x) const;

  /// S0 at a perturbed energy, unwrapped from the same anchor x0.
  double s0_at_energy(double x, double E) const;
  double conjugate_momentum_at_energy(double x, double E) const;

  /// Signed residual of the quantum stationary Hamilton-Jacobi equation;
  /// vanishes identically when the basis solves the Schroedinger equation.
  double qshje_residual(double x) const;

  const Microstate& microstate() const { return ms_; }
  const PhysicalConstants& constants() const { return pc_; }
  const SolutionBasis& basis() const { return basis_; }
  double potential_floor() const { return e_floor_; }
  /// Relative step policy for energy finite differences (default 1e-2).
  double fd_step_scale() const { return fd_scale_; }
  void set_fd_step_scale(double s) { fd_scale_ = s; }

  /// Sign of the slope of S0 (= sign of a W).
  int slope_sign() const { return slope_sign_; }

 private:
  double theta(const SolutionBasis& basis, double x) const;
  const SolutionBasis& basis_at(double E) const;

  SolutionBasis basis_;
  Microstate ms_;
  PhysicalConstants pc_;
  Rebuilder rebuild_;
  double e_floor_ = 0.0;
  double fd_scale_ = 1e-2;
  int slope_sign_ = 1;

  // perturbed bases shared between copies; synchronized internally
  struct EnergyCache {
    std::mutex mutex;
    std::map<double, std::shared_ptr<const SolutionBasis>> entries;
  };
  std::shared_ptr<EnergyCache> cache_ = std::make_shared<EnergyCache>();
};

/// Reduced action on the analytic free-particle basis anchored at ms.x0.
ReducedAction make_free_reduced_action(const PhysicalConstants& pc,
                                       const Microstate& ms);

/// Reduced action on a numeric basis integrated over `domain` with initial
/// conditions at ms.x0 (which must lie inside the domain).
ReducedAction make_numeric_reduced_action(const PhysicalConstants& pc,
                                          const Potential& potential,
                                          const Microstate& ms,
                                          Interval domain, double step);

}  // namespace qhj
