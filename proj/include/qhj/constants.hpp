#pragma once

#include "qhj/errors.hpp"

namespace qhj {

/// Physical constants of the problem. Natural units (hbar = m = 1) by default.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0)) throw DomainError("hbar must be strictly positive");
    if (!(mass > 0.0)) throw DomainError("mass must be strictly positive");
  }
};

}  // namespace qhj
