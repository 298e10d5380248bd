#pragma once

#include <cmath>

#include "qhj/interval.hpp"

namespace qhj::numeric {

/// Shrink a sign-change bracket [lo, hi] of f by bisection until its width
/// is at most width_tol. f(lo) and f(hi) must have opposite (or zero) signs.
template <class F>
Interval bisect_to_width(F&& f, double lo, double hi, double flo,
                         double width_tol, int max_iter = 200) {
  if (flo == 0.0) return {lo, lo};
  for (int i = 0; i < max_iter && (hi - lo) > width_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // width at rounding limit
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace qhj::numeric
