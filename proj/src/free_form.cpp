#include "qhj/free_form.hpp"

#include <cmath>

namespace qhj {

FreeClosedForm FreeClosedForm::from(const PhysicalConstants& pc,
                                    const Microstate& ms) {
  pc.validate();
  ms.validate();
  if (!(ms.E > 0.0))
    throw DomainError("free-particle closed form requires a positive energy");
  FreeClosedForm f;
  f.hbar = pc.hbar;
  f.mass = pc.mass;
  f.E = ms.E;
  f.a = ms.a;
  f.b = ms.b;
  f.x0 = ms.x0;
  f.t0 = ms.t0;
  f.k = std::sqrt(2.0 * pc.mass * ms.E) / pc.hbar;
  const double a2 = ms.a * ms.a;
  const double b2 = ms.b * ms.b;
  const double s2 = a2 * a2 + b2 * b2 + 1.0 + 2.0 * a2 * b2 + 2.0 * b2 -
                    2.0 * a2;
  f.sigma = std::sqrt(std::max(s2, 0.0));
  f.gamma = (f.sigma > 0.0) ? std::atan2(2.0 * ms.a * ms.b, 1.0 + b2 - a2)
                            : 0.0;
  return f;
}

double FreeClosedForm::envelope(double x) const {
  const double arg = 2.0 * k * (x - x0) - gamma;
  return (1.0 + a * a + b * b) + sigma * std::cos(arg);
}

double FreeClosedForm::dt_dx(double x) const {
  const double dx = x - x0;
  const double arg = 2.0 * k * dx - gamma;
  const double env = envelope(x);
  const double numer =
      env + 2.0 * k * sigma * dx * std::sin(arg);
  return a * std::sqrt(2.0 * mass / E) * numer / (env * env);
}

double FreeClosedForm::time_of_position(double x) const {
  return t0 + a * std::sqrt(2.0 * mass / E) * (x - x0) / envelope(x);
}

double FreeClosedForm::group_velocity(double x) const {
  return 1.0 / dt_dx(x);
}

double FreeClosedForm::bd_velocity(double x) const {
  return (1.0 / a) * std::sqrt(E / (2.0 * mass)) * envelope(x);
}

}  // namespace qhj
