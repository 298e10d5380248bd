#pragma once

#include "qhj/errors.hpp"

namespace qhj {

/// Constants of the motion selecting one trajectory of a given energy:
/// (E, a, b, x0) plus the time origin t0 and the additive branch constant
/// lambda (the action offset is hbar * lambda).
struct Microstate {
  double E = 0.0;
  double a = 1.0;
  double b = 0.0;
  double x0 = 0.0;
  double t0 = 0.0;
  double lambda = 0.0;

  void validate() const {
    if (a == 0.0) throw DomainError("degenerate microstate: a must be nonzero");
  }

  /// The classical microstate (a, b) = (+-1, 0) reproduces classical motion.
  bool classical() const { return (a == 1.0 || a == -1.0) && b == 0.0; }
};

/// Coefficient pair translating between the two published presentations of
/// the free-particle reduced action.
struct ConvertedParams {
  double a35 = 0.0;
  double b35 = 0.0;
};

/// (a, b) -> (1/a, -b/a). The map is an involution.
inline ConvertedParams convert_params(double a, double b) {
  if (a == 0.0) throw DomainError("degenerate microstate: a must be nonzero");
  return {1.0 / a, -b / a};
}

}  // namespace qhj
