#include "qhj/basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qhj/numeric/bisection.hpp"

namespace qhj {

namespace {

// Quintic two-point Hermite interpolation from (f, f', f'') at both ends,
// via Newton divided differences with repeated nodes. Returns value and
// first derivative at x.
struct HermitePair {
  double v;
  double d1;
};

HermitePair hermite5(double x, double xa, double xb, double fa, double da,
                     double sa, double fb, double db, double sb) {
  const double h = xb - xa;
  // divided-difference coefficients for nodes (xa,xa,xa,xb,xb,xb)
  const double c0 = fa;
  const double c1 = da;
  const double c2 = 0.5 * sa;
  const double d01 = (fb - fa) / h;
  const double d11 = (d01 - da) / h;
  const double c3 = (d11 - c2) / h;
  const double d02 = (db - d01) / h;
  const double d12 = (d02 - d11) / h;
  const double c4 = (d12 - c3) / h;
  const double d03 = (0.5 * sb - d02) / h;
  const double d13 = (d03 - d12) / h;
  const double c5 = (d13 - c4) / h;

  const double u = x - xa;
  const double w = x - xb;
  // p(x) = c0 + c1 u + c2 u^2 + c3 u^3 + c4 u^3 w + c5 u^3 w^2
  const double u2 = u * u;
  const double u3 = u2 * u;
  const double v = c0 + c1 * u + c2 * u2 + c3 * u3 + c4 * u3 * w +
                   c5 * u3 * w * w;
  const double d1 = c1 + 2.0 * c2 * u + 3.0 * c3 * u2 +
                    c4 * (3.0 * u2 * w + u3) +
                    c5 * (3.0 * u2 * w * w + 2.0 * u3 * w);
  return {v, d1};
}

}  // namespace

SolutionBasis SolutionBasis::analytic_free(const PhysicalConstants& pc,
                                           double E, double x0) {
  pc.validate();
  if (!(E > 0.0))
    throw DomainError("free-particle basis requires a positive energy");
  SolutionBasis b;
  b.constants_ = pc;
  b.energy_ = E;
  b.analytic_ = true;
  b.k_ = std::sqrt(2.0 * pc.mass * E) / pc.hbar;
  b.wronskian_ = b.k_;
  b.anchor_ = x0;
  b.domain_ = Interval::whole_line();
  b.grid_x_ = {x0};
  b.potential_ = Potential::free_space();
  return b;
}

SolutionBasis SolutionBasis::integrate(const PhysicalConstants& pc,
                                       const Potential& potential, double E,
                                       Interval domain, double step,
                                       double anchor, double min_step_bound) {
  pc.validate();
  if (!(domain.hi >= domain.lo))
    throw DomainError("basis domain must be ordered");
  if (!domain.contains(anchor))
    throw DomainError("basis anchor must lie inside the domain");
  if (!(step > 0.0)) throw DomainError("integration step must be positive");
  if (auto td = potential.table_domain(); td && !td->contains(domain))
    throw DomainError("basis domain exceeds the tabulated potential range");

  // wavelength-resolution bound on the step
  const double gap = potential.max_energy_gap(domain, E);
  if (gap > 0.0) {
    double allowed = 0.05 * pc.hbar / std::sqrt(2.0 * pc.mass * gap);
    allowed = std::max(allowed, min_step_bound);
    if (step > allowed * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "step " << step << " does not resolve the local wavelength; "
          << "largest admissible step is " << allowed;
      throw DomainError(msg.str());
    }
  }

  SolutionBasis b;
  b.constants_ = pc;
  b.energy_ = E;
  b.analytic_ = false;
  b.wronskian_ = 1.0;
  b.anchor_ = anchor;
  b.domain_ = domain;
  b.potential_ = potential;

  const double coeff = 2.0 * pc.mass / (pc.hbar * pc.hbar);
  auto rhs = [&](double x, const std::array<double, 4>& y) {
    const double w = coeff * (potential(x) - E);
    if (!std::isfinite(w))
      throw DomainError("potential is not finite inside the basis domain");
    return std::array<double, 4>{y[1], w * y[0], y[3], w * y[2]};
  };
  auto rk4_step = [&](double x, double h, std::array<double, 4> y) {
    const auto k1 = rhs(x, y);
    std::array<double, 4> t;
    for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = rhs(x + 0.5 * h, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = rhs(x + 0.5 * h, t);
    for (int i = 0; i < 4; ++i) t[i] = y[i] + h * k3[i];
    const auto k4 = rhs(x + h, t);
    for (int i = 0; i < 4; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return y;
  };

  const std::array<double, 4> init{1.0, 0.0, 0.0, 1.0};

  // integrate each side of the anchor on a uniform grid
  auto sweep = [&](double from, double to) {
    std::vector<double> xs;
    std::vector<std::array<double, 4>> ys;
    const double len = std::fabs(to - from);
    if (len == 0.0) return std::pair{xs, ys};
    const long n =
        std::max<long>(1, static_cast<long>(std::ceil(len / step - 1e-12)));
    const double h = (to - from) / static_cast<double>(n);
    std::array<double, 4> y = init;
    for (long i = 1; i <= n; ++i) {
      const double x = from + h * static_cast<double>(i - 1);
      y = rk4_step(x, h, y);
      xs.push_back(from + h * static_cast<double>(i));
      ys.push_back(y);
    }
    xs.back() = to;  // pin the endpoint against accumulated rounding
    return std::pair{xs, ys};
  };

  auto [right_x, right_y] = sweep(anchor, domain.hi);
  auto [left_x, left_y] = sweep(anchor, domain.lo);

  b.grid_x_.reserve(left_x.size() + right_x.size() + 1);
  b.states_.reserve(left_x.size() + right_x.size() + 1);
  for (std::size_t i = left_x.size(); i-- > 0;) {
    b.grid_x_.push_back(left_x[i]);
    b.states_.push_back(left_y[i]);
  }
  b.grid_x_.push_back(anchor);
  b.states_.push_back(init);
  for (std::size_t i = 0; i < right_x.size(); ++i) {
    b.grid_x_.push_back(right_x[i]);
    b.states_.push_back(right_y[i]);
  }

  // locate zeros of phi1 once; the reduced action unwraps across them
  for (std::size_t i = 0; i + 1 < b.grid_x_.size(); ++i) {
    const double f0 = b.states_[i][0];
    const double f1 = b.states_[i + 1][0];
    if (f0 == 0.0) {
      b.phi1_zeros_.push_back(b.grid_x_[i]);
    } else if (f0 * f1 < 0.0) {
      auto f = [&](double x) { return b.phi1(x).v; };
      auto br = numeric::bisect_to_width(f, b.grid_x_[i], b.grid_x_[i + 1],
                                         f0, 1e-14);
      b.phi1_zeros_.push_back(0.5 * (br.lo + br.hi));
    }
  }
  if (!b.states_.empty() && b.states_.back()[0] == 0.0)
    b.phi1_zeros_.push_back(b.grid_x_.back());
  return b;
}

void SolutionBasis::require_in_domain(double x) const {
  if (!domain_.contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " is outside the basis domain [" << domain_.lo
        << ", " << domain_.hi << "]";
    throw DomainError(msg.str());
  }
}

BasisPoint SolutionBasis::eval(double x, int which) const {
  require_in_domain(x);
  if (analytic_) {
    const double th = k_ * (x - anchor_);
    const double c = std::cos(th);
    const double s = std::sin(th);
    if (which == 1) return {c, -k_ * s, -k_ * k_ * c};
    return {s, k_ * c, -k_ * k_ * s};
  }
  const double coeff =
      2.0 * constants_.mass / (constants_.hbar * constants_.hbar);
  const int iv = which == 1 ? 0 : 2;
  if (grid_x_.size() == 1) {
    const auto& y = states_.front();
    return {y[iv], y[iv + 1], coeff * (potential_(x) - energy_) * y[iv]};
  }
  auto it = std::upper_bound(grid_x_.begin(), grid_x_.end(), x);
  std::size_t i = (it == grid_x_.begin())
                      ? 0
                      : static_cast<std::size_t>(it - grid_x_.begin()) - 1;
  if (i + 1 >= grid_x_.size()) i = grid_x_.size() - 2;
  const double xa = grid_x_[i], xb = grid_x_[i + 1];
  const auto& ya = states_[i];
  const auto& yb = states_[i + 1];
  const double wa = coeff * (potential_(xa) - energy_);
  const double wb = coeff * (potential_(xb) - energy_);
  const auto hp = hermite5(x, xa, xb, ya[iv], ya[iv + 1], wa * ya[iv],
                           yb[iv], yb[iv + 1], wb * yb[iv]);
  return {hp.v, hp.d1, coeff * (potential_(x) - energy_) * hp.v};
}

BasisPoint SolutionBasis::phi1(double x) const { return eval(x, 1); }
BasisPoint SolutionBasis::phi2(double x) const { return eval(x, 2); }

long SolutionBasis::node_count_from_anchor(double x) const {
  require_in_domain(x);
  if (analytic_) {
    const double th = k_ * (x - anchor_);
    // zeros of cos at pi/2 + j pi; open-interval count between anchor and x
    return static_cast<long>(std::ceil(th / std::numbers::pi - 0.5));
  }
  const double a = std::min(anchor_, x);
  const double b = std::max(anchor_, x);
  const auto first = std::upper_bound(phi1_zeros_.begin(), phi1_zeros_.end(), a);
  const auto last = std::lower_bound(phi1_zeros_.begin(), phi1_zeros_.end(), b);
  const long n = static_cast<long>(last - first);
  return x >= anchor_ ? n : -n;
}

SolutionBasis SolutionBasis::with_scaled_wronskian(double scale) const {
  SolutionBasis b = *this;
  b.wronskian_ *= scale;
  return b;
}

}  // namespace qhj
