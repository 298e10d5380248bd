#pragma once

#include <stdexcept>
#include <string>

namespace qhj {

// Evaluation outside the validity domain of a basis, potential or grid.
// The CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration path of the quantum transform touches a turning point or a
// classically forbidden region.
class ForbiddenRegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed configuration or ingestion input. CLI exit code 3.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qhj
