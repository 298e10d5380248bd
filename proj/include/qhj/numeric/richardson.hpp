#pragma once

#include <cmath>
#include <utility>

namespace qhj::numeric {

struct DerivEstimate {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Central-difference derivative with Richardson extrapolation over a
/// Neville tableau. The step shrinks by 1/sqrt(2) per round; extrapolation
/// stops once the tableau starts to deteriorate.
template <class F>
DerivEstimate central_derivative(F&& f, double x, double h0, int rounds = 12) {
  constexpr int kMax = 16;
  if (rounds > kMax) rounds = kMax;
  double tab[kMax][kMax];
  double h = h0;
  tab[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
  DerivEstimate best{tab[0][0], 1e30};

  const double shrink = 1.0 / std::sqrt(2.0);
  for (int i = 1; i < rounds; ++i) {
    h *= shrink;
    tab[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
    double factor = 2.0;  // step ratio squared; error series is even in h
    for (int j = 1; j <= i; ++j) {
      tab[j][i] = (tab[j - 1][i] * factor - tab[j - 1][i - 1]) / (factor - 1.0);
      factor *= 2.0;
      const double err = std::max(std::fabs(tab[j][i] - tab[j - 1][i]),
                                  std::fabs(tab[j][i] - tab[j - 1][i - 1]));
      if (err < best.error) {
        best.error = err;
        best.value = tab[j][i];
      }
    }
    if (std::fabs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

/// One-sided derivative (second-order three-point stencil) with Richardson
/// extrapolation. Fallback for points where the symmetric stencil would
/// leave the admissible parameter range.
template <class F>
DerivEstimate forward_derivative(F&& f, double x, double h0, int rounds = 10) {
  constexpr int kMax = 12;
  if (rounds > kMax) rounds = kMax;
  double tab[kMax][kMax];
  auto stencil = [&](double h) {
    return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
  };
  double h = h0;
  tab[0][0] = stencil(h);
  DerivEstimate best{tab[0][0], 1e30};
  for (int i = 1; i < rounds; ++i) {
    h *= 0.5;
    tab[0][i] = stencil(h);
    // leading error term is O(h^2); successive eliminations raise the order
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      tab[j][i] = (tab[j - 1][i] * factor - tab[j - 1][i - 1]) / (factor - 1.0);
      factor *= 2.0;
      const double err = std::max(std::fabs(tab[j][i] - tab[j - 1][i]),
                                  std::fabs(tab[j][i] - tab[j - 1][i - 1]));
      if (err < best.error) {
        best.error = err;
        best.value = tab[j][i];
      }
    }
    if (std::fabs(tab[i][i] - tab[i - 1][i - 1]) >= 2.0 * best.error) break;
  }
  return best;
}

}  // namespace qhj::numeric
