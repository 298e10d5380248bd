#include "qhj/reduced_action.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qhj/numeric/quadrature.hpp"
#include "qhj/numeric/richardson.hpp"

namespace qhj {

namespace {
constexpr double kPi = std::numbers::pi;

// Principal angle of (u1, u2) folded into a half-open pi-interval whose
// closed side matches the slope direction, so the fold is continuous
// against the winding count at zeros of u1.
double folded_angle(double u2, double u1, int slope_sign) {
  double th = std::atan2(u2, u1);
  if (slope_sign >= 0) {
    if (th > 0.5 * kPi)
      th -= kPi;
    else if (th <= -0.5 * kPi)
      th += kPi;
  } else {
    if (th >= 0.5 * kPi)
      th -= kPi;
    else if (th < -0.5 * kPi)
      th += kPi;
  }
  return th;
}
}  // namespace

ReducedAction::ReducedAction(SolutionBasis basis, Microstate ms,
                             PhysicalConstants pc, Rebuilder rebuilder,
                             double potential_floor)
    : basis_(std::move(basis)),
      ms_(ms),
      pc_(pc),
      rebuild_(std::move(rebuilder)),
      e_floor_(potential_floor) {
  pc_.validate();
  ms_.validate();
  if (std::fabs(basis_.anchor() - ms_.x0) > 1e-12)
    throw DomainError("basis anchor must coincide with the microstate x0");
  if (basis_.wronskian() == 0.0)
    throw DomainError("basis Wronskian vanishes; solutions are dependent");
  slope_sign_ = (ms_.a * basis_.wronskian() > 0.0) ? 1 : -1;
}

double ReducedAction::theta(const SolutionBasis& basis, double x) const {
  const BasisPoint p1 = basis.phi1(x);
  const BasisPoint p2 = basis.phi2(x);
  const double u1 = p1.v;
  const double u2 = ms_.a * p2.v + ms_.b * p1.v;
  const double principal = folded_angle(u2, u1, slope_sign_);
  const long winding = basis.node_count_from_anchor(x);
  return principal + kPi * static_cast<double>(slope_sign_) *
                         static_cast<double>(winding);
}

double ReducedAction::s0(double x) const {
  return pc_.hbar * (theta(basis_, x) + ms_.lambda);
}

double ReducedAction::s0_at_energy(double x, double E) const {
  return pc_.hbar * (theta(basis_at(E), x) + ms_.lambda);
}

double ReducedAction::conjugate_momentum(double x) const {
  const BasisPoint p1 = basis_.phi1(x);
  const BasisPoint p2 = basis_.phi2(x);
  const double u1 = p1.v;
  const double u2 = ms_.a * p2.v + ms_.b * p1.v;
  const double denom = u1 * u1 + u2 * u2;
  // W != 0 forbids a common zero of phi1 and a phi2 + b phi1
  return pc_.hbar * ms_.a * basis_.wronskian() / denom;
}

double ReducedAction::conjugate_momentum_at_energy(double x, double E) const {
  const SolutionBasis& b = basis_at(E);
  const BasisPoint p1 = b.phi1(x);
  const BasisPoint p2 = b.phi2(x);
  const double u1 = p1.v;
  const double u2 = ms_.a * p2.v + ms_.b * p1.v;
  return pc_.hbar * ms_.a * b.wronskian() / (u1 * u1 + u2 * u2);
}

double ReducedAction::s0_by_quadrature(double x, double quad_tol) const {
  const double anchor_value =
      pc_.hbar * (std::atan(ms_.b) + ms_.lambda);
  auto integrand = [&](double q) { return conjugate_momentum(q); };
  const auto q = numeric::integrate(integrand, ms_.x0, x, quad_tol);
  return anchor_value + q.value;
}

ActionDerivatives ReducedAction::derivatives(double x) const {
  const BasisPoint p1 = basis_.phi1(x);
  const BasisPoint p2 = basis_.phi2(x);
  const double u1 = p1.v, u1p = p1.d1, u1pp = p1.d2;
  const double u2 = ms_.a * p2.v + ms_.b * p1.v;
  const double u2p = ms_.a * p2.d1 + ms_.b * p1.d1;
  const double u2pp = ms_.a * p2.d2 + ms_.b * p1.d2;
  const double D = u1 * u1 + u2 * u2;
  const double Dp = 2.0 * (u1 * u1p + u2 * u2p);
  const double Dpp =
      2.0 * (u1p * u1p + u1 * u1pp + u2p * u2p + u2 * u2pp);
  const double s1 = pc_.hbar * ms_.a * basis_.wronskian() / D;
  const double s2 = -s1 * Dp / D;
  const double s3 = s1 * (2.0 * Dp * Dp / (D * D) - Dpp / D);
  return {s1, s2, s3};
}

double ReducedAction::qshje_residual(double x) const {
  const ActionDerivatives d = derivatives(x);
  const BasisPoint p1 = basis_.phi1(x);
  const BasisPoint p2 = basis_.phi2(x);
  // V - E recovered from the ODE through whichever solution is larger
  const double hh = pc_.hbar * pc_.hbar;
  const double v_minus_e =
      (std::fabs(p1.v) >= std::fabs(p2.v))
          ? hh / (2.0 * pc_.mass) * p1.d2 / p1.v
          : hh / (2.0 * pc_.mass) * p2.d2 / p2.v;
  const double bracket =
      d.d3 / d.d1 - 1.5 * (d.d2 / d.d1) * (d.d2 / d.d1);
  return d.d1 * d.d1 / (2.0 * pc_.mass) + v_minus_e +
         hh / (4.0 * pc_.mass) * bracket;
}

const SolutionBasis& ReducedAction::basis_at(double E) const {
  if (E == basis_.energy()) return basis_;
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->entries.find(E);
  if (it == cache_->entries.end()) {
    if (!rebuild_)
      throw DomainError("reduced action has no energy rebuilder");
    it = cache_->entries
             .emplace(E, std::make_shared<const SolutionBasis>(rebuild_(E)))
             .first;
  }
  return *it->second;
}

namespace {
template <class F>
EnergyDerivative energy_difference(F&& f, double E, double e_floor,
                                   double fd_scale) {
  const double scale = fd_scale * std::max(std::fabs(E), 1.0);
  const double room = E - e_floor;
  if (room > 1e-10 * std::max(1.0, std::fabs(E))) {
    const double h0 = std::min(scale, 0.45 * room);
    return {numeric::central_derivative(f, E, h0).value, false};
  }
  // E sits at the bottom of the admissible range; differentiate upward only
  return {numeric::forward_derivative(f, E, scale).value, true};
}
}  // namespace

EnergyDerivative ReducedAction::s0_energy_derivative_detailed(double x) const {
  auto f = [&](double e) { return s0_at_energy(x, e); };
  return energy_difference(f, ms_.E, e_floor_, fd_scale_);
}

EnergyDerivative ReducedAction::momentum_energy_derivative_detailed(
    double x) const {
  auto f = [&](double e) { return conjugate_momentum_at_energy(x, e); };
  return energy_difference(f, ms_.E, e_floor_, fd_scale_);
}

double ReducedAction::s0_energy_derivative(double x) const {
  return s0_energy_derivative_detailed(x).value;
}

ReducedAction make_free_reduced_action(const PhysicalConstants& pc,
                                       const Microstate& ms) {
  SolutionBasis basis = SolutionBasis::analytic_free(pc, ms.E, ms.x0);
  const double x0 = ms.x0;
  auto rebuild = [pc, x0](double E) {
    return SolutionBasis::analytic_free(pc, E, x0);
  };
  return ReducedAction(std::move(basis), ms, pc, std::move(rebuild), 0.0);
}

ReducedAction make_numeric_reduced_action(const PhysicalConstants& pc,
                                          const Potential& potential,
                                          const Microstate& ms,
                                          Interval domain, double step) {
  SolutionBasis basis =
      SolutionBasis::integrate(pc, potential, ms.E, domain, step, ms.x0);
  auto rebuild = [pc, potential, domain, step, x0 = ms.x0](double E) {
    return SolutionBasis::integrate(pc, potential, E, domain, step, x0);
  };
  const double floor = potential.min_on(domain);
  return ReducedAction(std::move(basis), ms, pc, std::move(rebuild), floor);
}

}  // namespace qhj
