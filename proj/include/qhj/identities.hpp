#pragma once

#include <string>
#include <vector>

#include "qhj/interval.hpp"
#include "qhj/potential.hpp"
#include "qhj/reduced_action.hpp"
#include "qhj/trajectory.hpp"

namespace qhj {

struct IdentityEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityEntry> entries;
  bool overall = true;

  void add(std::string name, double residual, double tolerance) {
    const bool pass = residual <= tolerance;
    entries.push_back({std::move(name), residual, tolerance, pass});
    overall = overall && pass;
  }
};

/// Residuals of the dual Legendre transformations between the reduced
/// action S0 and the sign-flipped principal function. With all offsets
/// anchored at (x0, t0) both residuals collapse onto the Jacobi identity
/// t - t0 = dS0/dE and must pass at the Jacobi tolerance.
IdentityReport legendre_dual_check(const ReducedAction& ra, double x,
                                   double tolerance = 1e-6);

struct LagrangianRate {
  double value = 0.0;
  bool defined = true;  // false inside singular brackets
};

/// Time derivative of the principal function along the group-velocity flow,
/// evaluated through the displayed bracket form. Equals dS0/dx * v - E
/// wherever the reduced action solves the QSHJE. Undefined at poles of the
/// group velocity; pass the singularity set to flag whole brackets.
LagrangianRate lagrangian_rate(const ReducedAction& ra,
                               const Potential& potential, double x,
                               const SingularitySet* singular = nullptr);
/// The energy-substituted route dS0/dx * v_group - E.
LagrangianRate lagrangian_rate_energy_route(const ReducedAction& ra,
                                            double x);

struct CheckOptions {
  double tol_jacobi = 1e-6;
  double tol_qshje = 1e-9;
  double quad_tol = 1e-10;
  double eps_turn = 1e-10;
};

/// Runs every named identity of the engine over probe positions drawn from
/// x_range and reports per-check residuals against pinned tolerances.
IdentityReport run_check_suite(const ReducedAction& ra,
                               const Potential& potential, Interval x_range,
                               int samples, const CheckOptions& options);

}  // namespace qhj
