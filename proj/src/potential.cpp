#include "qhj/potential.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qhj/numeric/bisection.hpp"

namespace qhj {

struct Potential::Table {
  std::vector<double> xs;
  std::vector<double> vs;
  std::vector<double> slopes;  // Fritsch-Carlson knot derivatives
};

namespace {

// Monotone cubic (PCHIP) knot slopes. Keeps the interpolant free of
// overshoot between knots, so turning-point scans see no spurious roots.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0)
      s = 0.0;
    else if (d0 * d1 <= 0.0 && std::fabs(s) > 3.0 * std::fabs(d0))
      s = 3.0 * d0;
    return s;
  };
  d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

double hermite_eval(double x, double x0, double x1, double y0, double y1,
                    double d0, double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return y0 * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d0 * (t3 - 2.0 * t2 + t) +
         y1 * (-2.0 * t3 + 3.0 * t2) + h * d1 * (t3 - t2);
}

}  // namespace

Potential Potential::free_space() { return Potential{}; }

Potential Potential::harmonic(double spring_k, double center) {
  if (!(spring_k > 0.0))
    throw DomainError("harmonic potential requires a positive spring constant");
  Potential p;
  p.kind_ = PotentialKind::harmonic;
  p.spring_k_ = spring_k;
  p.center_ = center;
  return p;
}

Potential Potential::linear(double slope, double offset) {
  if (!std::isfinite(slope) || !std::isfinite(offset))
    throw DomainError("linear potential parameters must be finite");
  Potential p;
  p.kind_ = PotentialKind::linear;
  p.slope_ = slope;
  p.offset_ = offset;
  return p;
}

Potential Potential::tabulated(std::vector<double> xs, std::vector<double> vs) {
  if (xs.size() != vs.size())
    throw ConfigError("tabulated potential: x and V column lengths differ");
  if (xs.size() < 4)
    throw ConfigError("tabulated potential requires at least 4 rows");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(vs[i]))
      throw ConfigError("tabulated potential contains a non-finite entry");
    if (i > 0 && !(xs[i] > xs[i - 1]))
      throw ConfigError("tabulated potential requires strictly increasing x");
  }
  auto table = std::make_shared<Table>();
  table->slopes = pchip_slopes(xs, vs);
  table->xs = std::move(xs);
  table->vs = std::move(vs);
  Potential p;
  p.kind_ = PotentialKind::tabulated;
  p.table_ = std::move(table);
  return p;
}

Potential Potential::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open potential file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    // allow a single header line of column names
    if (lineno == 1 && line.find_first_not_of(
                           "xXvV, \t\r") == std::string::npos)
      continue;
    std::istringstream row(line);
    std::string field;
    double vals[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(row, field, ','))
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": expected two comma-separated columns");
      try {
        std::size_t pos = 0;
        vals[c] = std::stod(field, &pos);
        while (pos < field.size() && std::isspace(
                   static_cast<unsigned char>(field[pos])))
          ++pos;
        if (pos != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": non-numeric value '" + field + "'");
      }
    }
    xs.push_back(vals[0]);
    vs.push_back(vals[1]);
  }
  return tabulated(std::move(xs), std::move(vs));
}

double Potential::operator()(double x) const {
  switch (kind_) {
    case PotentialKind::free_space:
      return 0.0;
    case PotentialKind::harmonic: {
      const double d = x - center_;
      return 0.5 * spring_k_ * d * d;
    }
    case PotentialKind::linear:
      return slope_ * x + offset_;
    case PotentialKind::tabulated: {
      const auto& t = *table_;
      if (x < t.xs.front() || x > t.xs.back())
        throw DomainError("tabulated potential evaluated outside its range");
      auto it = std::upper_bound(t.xs.begin(), t.xs.end(), x);
      std::size_t i = (it == t.xs.begin())
                          ? 0
                          : static_cast<std::size_t>(it - t.xs.begin()) - 1;
      if (i + 1 >= t.xs.size()) i = t.xs.size() - 2;
      return hermite_eval(x, t.xs[i], t.xs[i + 1], t.vs[i], t.vs[i + 1],
                          t.slopes[i], t.slopes[i + 1]);
    }
  }
  return 0.0;
}

std::vector<double> Potential::turning_points(double E) const {
  std::vector<double> roots;
  switch (kind_) {
    case PotentialKind::free_space:
      break;
    case PotentialKind::harmonic: {
      if (E > 0.0) {
        const double r = std::sqrt(2.0 * E / spring_k_);
        roots = {center_ - r, center_ + r};
      } else if (E == 0.0) {
        roots = {center_};
      }
      break;
    }
    case PotentialKind::linear: {
      if (slope_ != 0.0) roots = {(E - offset_) / slope_};
      break;
    }
    case PotentialKind::tabulated: {
      const auto& t = *table_;
      auto g = [&](double x) { return (*this)(x)-E; };
      for (std::size_t i = 0; i + 1 < t.xs.size(); ++i) {
        // scan each knot cell densely; pchip keeps V tame in between
        const int sub = 8;
        double prev_x = t.xs[i];
        double prev_g = g(prev_x);
        for (int s = 1; s <= sub; ++s) {
          const double cur_x =
              t.xs[i] + (t.xs[i + 1] - t.xs[i]) * (double(s) / sub);
          const double cur_g = g(cur_x);
          if (prev_g == 0.0) {
            roots.push_back(prev_x);
          } else if (prev_g * cur_g < 0.0) {
            auto b = numeric::bisect_to_width(g, prev_x, cur_x, prev_g, 1e-13);
            roots.push_back(0.5 * (b.lo + b.hi));
          }
          prev_x = cur_x;
          prev_g = cur_g;
        }
      }
      if (g(t.xs.back()) == 0.0) roots.push_back(t.xs.back());
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::optional<Interval> Potential::table_domain() const {
  if (kind_ != PotentialKind::tabulated) return std::nullopt;
  return Interval{table_->xs.front(), table_->xs.back()};
}

double Potential::min_on(Interval itv, int probes) const {
  switch (kind_) {
    case PotentialKind::free_space:
      return 0.0;
    case PotentialKind::harmonic:
      if (itv.contains(center_)) return 0.0;
      return std::min((*this)(itv.lo), (*this)(itv.hi));
    case PotentialKind::linear:
      return std::min((*this)(itv.lo), (*this)(itv.hi));
    case PotentialKind::tabulated: {
      double m = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= probes; ++i) {
        const double x = itv.lo + itv.length() * (double(i) / probes);
        m = std::min(m, (*this)(x));
      }
      return m;
    }
  }
  return 0.0;
}

double Potential::max_energy_gap(Interval itv, double E, int probes) const {
  switch (kind_) {
    case PotentialKind::free_space:
      return std::fabs(E);
    case PotentialKind::harmonic:
    case PotentialKind::linear:
      // extremes of |E - V| sit at the endpoints or at the vertex
      {
        double m = std::max(std::fabs(E - (*this)(itv.lo)),
                            std::fabs(E - (*this)(itv.hi)));
        if (kind_ == PotentialKind::harmonic && itv.contains(center_))
          m = std::max(m, std::fabs(E));
        return m;
      }
    case PotentialKind::tabulated: {
      double m = 0.0;
      for (int i = 0; i <= probes; ++i) {
        const double x = itv.lo + itv.length() * (double(i) / probes);
        m = std::max(m, std::fabs(E - (*this)(x)));
      }
      return m;
    }
  }
  return std::fabs(E);
}

}  // namespace qhj
