#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qhj/constants.hpp"
#include "qhj/microstate.hpp"
#include "qhj/potential.hpp"

namespace qhj {

enum class OutputFormat { csv, json };

struct GridSpecX {
  double x_min = 0.0;
  double x_max = 0.0;
  int samples = 0;
};

struct GridSpecT {
  double t_min = 0.0;
  double t_max = 0.0;
  double step = 0.0;
};

struct PotentialSpec {
  PotentialKind kind = PotentialKind::free_space;
  double spring_k = 1.0;   // harmonic
  double center = 0.0;     // harmonic
  double slope = 0.0;      // linear
  double offset = 0.0;     // linear
  std::string path;        // tabulated CSV

  Potential build() const;
};

struct Tolerances {
  double tol_jacobi = 1e-6;
  std::optional<double> tol_qshje;  // defaulted by basis kind when unset
  double quad_tol = 1e-10;
  double eps_turn = 1e-10;
  double fd_step_policy = 1e-2;  // relative initial step of energy differences
};

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty = standard output
};

/// Fully-defaulted run configuration parsed from a JSON document.
/// Unknown keys are rejected with the offending path named.
struct RunConfig {
  PhysicalConstants constants;
  Microstate microstate;
  PotentialSpec potential;
  std::optional<GridSpecX> grid_x;
  std::optional<GridSpecT> grid_t;
  Tolerances tolerances;
  OutputSpec output;
  double basis_step = 1e-3;            // numeric-basis integration step
  std::optional<double> x_ref;         // transform anchor, default x0
  bool continue_past_turning = false;  // bd engine policy switch
  double wronskian_scale = 1.0;        // fault-injection hook (debug)
};

RunConfig parse_config(std::string_view text);
RunConfig parse_config_file(const std::string& path);

}  // namespace qhj
