#pragma once

#include "qhj/constants.hpp"
#include "qhj/microstate.hpp"

namespace qhj {

/// Closed forms of the free-particle equation of motion and group velocity,
/// derived by differentiating the unwrapped reduced action
///
///   S0 = hbar * arctan(a tan(k (x - x0)) + b) + hbar lambda,  k = sqrt(2mE)/hbar.
///
/// With theta = k (x - x0):
///   envelope(x) = (1 + a^2 + b^2) + sigma cos(2 theta - gamma)   (strictly positive)
///   t(x) - t0   = a sqrt(2m/E) (x - x0) / envelope(x)
///   1/v(x)      = dt/dx = a sqrt(2m/E) [envelope + 2 k sigma (x-x0) sin(2 theta - gamma)] / envelope^2
///
/// where sigma^2 = a^4 + b^4 + 1 + 2 a^2 b^2 + 2 b^2 - 2 a^2 and the phase
/// gamma is branch-resolved as the two-argument angle of the expansion
/// coefficients of the envelope: gamma = atan2(2ab, 1 + b^2 - a^2). These
/// forms satisfy the binding identity
///
///   (1/a) sqrt(E/2m) * envelope(x) * dS0/dx = 2E         (pointwise)
///
/// and reproduce t - t0 = dS0/dE and v = [d(dS0/dx)/dE]^-1 to machine
/// precision, which is the defining criterion.
struct FreeClosedForm {
  double hbar = 1.0;
  double mass = 1.0;
  double E = 0.0;
  double a = 1.0;
  double b = 0.0;
  double x0 = 0.0;
  double t0 = 0.0;
  double k = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;

  static FreeClosedForm from(const PhysicalConstants& pc, const Microstate& ms);

  double envelope(double x) const;
  /// dt/dx; smooth and finite everywhere, zero exactly at velocity poles.
  double dt_dx(double x) const;
  double time_of_position(double x) const;
  /// Signed group velocity; +-infinity exactly at poles of the motion.
  double group_velocity(double x) const;
  /// Conjugate-momentum velocity 2E / (dS0/dx) = (1/a) sqrt(E/2m) envelope.
  double bd_velocity(double x) const;
};

}  // namespace qhj
