#include "qhj/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qhj {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path.empty() ? what : path + ": " + what);
}

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void reject_unknown(const json& obj, const std::string& base,
                    const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key))
      throw ConfigError("unknown key: " + join_path(base, key));
  }
}

double require_number(const json& obj, const std::string& base,
                      const std::string& key) {
  if (!obj.contains(key))
    fail("", "missing required field " + join_path(base, key));
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(join_path(base, key), "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& base,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(join_path(base, key), "expected a number");
  return v.get<double>();
}

std::string require_string(const json& obj, const std::string& base,
                           const std::string& key) {
  if (!obj.contains(key))
    fail("", "missing required field " + join_path(base, key));
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(join_path(base, key), "expected a string");
  return v.get<std::string>();
}

bool boolean_or(const json& obj, const std::string& base,
                const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) fail(join_path(base, key), "expected a boolean");
  return v.get<bool>();
}

PotentialSpec parse_potential(const json& obj) {
  PotentialSpec spec;
  const std::string kind = require_string(obj, "potential", "kind");
  if (kind == "free") {
    reject_unknown(obj, "potential", {"kind"});
    spec.kind = PotentialKind::free_space;
  } else if (kind == "harmonic") {
    reject_unknown(obj, "potential", {"kind", "k", "center"});
    spec.kind = PotentialKind::harmonic;
    spec.spring_k = number_or(obj, "potential", "k", 1.0);
    spec.center = number_or(obj, "potential", "center", 0.0);
    if (!(spec.spring_k > 0.0))
      fail("potential.k", "must be strictly positive");
  } else if (kind == "linear") {
    reject_unknown(obj, "potential", {"kind", "slope", "offset"});
    spec.kind = PotentialKind::linear;
    spec.slope = require_number(obj, "potential", "slope");
    spec.offset = number_or(obj, "potential", "offset", 0.0);
  } else if (kind == "tabulated") {
    reject_unknown(obj, "potential", {"kind", "path"});
    spec.kind = PotentialKind::tabulated;
    spec.path = require_string(obj, "potential", "path");
  } else {
    fail("potential.kind",
         "must be one of free, harmonic, linear, tabulated; got '" + kind +
             "'");
  }
  return spec;
}

}  // namespace

Potential PotentialSpec::build() const {
  switch (kind) {
    case PotentialKind::free_space:
      return Potential::free_space();
    case PotentialKind::harmonic:
      return Potential::harmonic(spring_k, center);
    case PotentialKind::linear:
      return Potential::linear(slope, offset);
    case PotentialKind::tabulated:
      return Potential::tabulated_from_csv(path);
  }
  return Potential::free_space();
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  reject_unknown(doc, "",
                 {"E", "a", "b", "x0", "t0", "lambda", "hbar", "mass",
                  "potential", "grid", "tolerances", "output", "basis_step",
                  "x_ref", "bd", "debug"});

  RunConfig cfg;
  cfg.microstate.E = require_number(doc, "", "E");
  cfg.microstate.a = require_number(doc, "", "a");
  cfg.microstate.b = require_number(doc, "", "b");
  cfg.microstate.x0 = require_number(doc, "", "x0");
  cfg.microstate.t0 = number_or(doc, "", "t0", 0.0);
  cfg.microstate.lambda = number_or(doc, "", "lambda", 0.0);
  if (cfg.microstate.a == 0.0)
    throw ConfigError("degenerate microstate: a must be nonzero");

  cfg.constants.hbar = number_or(doc, "", "hbar", 1.0);
  cfg.constants.mass = number_or(doc, "", "mass", 1.0);
  if (!(cfg.constants.hbar > 0.0))
    throw ConfigError("hbar: must be strictly positive");
  if (!(cfg.constants.mass > 0.0))
    throw ConfigError("mass: must be strictly positive");

  if (!doc.contains("potential"))
    throw ConfigError("missing required field potential.kind");
  if (!doc.at("potential").is_object())
    throw ConfigError("potential: expected an object");
  cfg.potential = parse_potential(doc.at("potential"));

  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    if (!g.is_object()) throw ConfigError("grid: expected an object");
    reject_unknown(g, "grid",
                   {"x_min", "x_max", "samples", "t_min", "t_max", "step"});
    const bool has_x = g.contains("x_min") || g.contains("x_max") ||
                       g.contains("samples");
    const bool has_t =
        g.contains("t_min") || g.contains("t_max") || g.contains("step");
    if (has_x) {
      GridSpecX gx;
      gx.x_min = require_number(g, "grid", "x_min");
      gx.x_max = require_number(g, "grid", "x_max");
      const double samples = require_number(g, "grid", "samples");
      gx.samples = static_cast<int>(samples);
      if (samples != gx.samples || gx.samples < 2)
        fail("grid.samples", "must be an integer >= 2");
      if (!(gx.x_max >= gx.x_min))
        fail("grid.x_max", "must not be below grid.x_min");
      cfg.grid_x = gx;
    }
    if (has_t) {
      GridSpecT gt;
      gt.t_min = require_number(g, "grid", "t_min");
      gt.t_max = require_number(g, "grid", "t_max");
      gt.step = require_number(g, "grid", "step");
      if (!(gt.step > 0.0)) fail("grid.step", "must be strictly positive");
      if (!(gt.t_max >= gt.t_min))
        fail("grid.t_max", "must not be below grid.t_min");
      cfg.grid_t = gt;
    }
    if (!has_x && !has_t) fail("grid", "must not be empty");
  }

  if (doc.contains("tolerances")) {
    const auto& t = doc.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances: expected an object");
    reject_unknown(t, "tolerances",
                   {"tol_jacobi", "tol_qshje", "quad_tol", "eps_turn",
                    "fd_step_policy"});
    cfg.tolerances.tol_jacobi =
        number_or(t, "tolerances", "tol_jacobi", cfg.tolerances.tol_jacobi);
    if (t.contains("tol_qshje"))
      cfg.tolerances.tol_qshje = require_number(t, "tolerances", "tol_qshje");
    cfg.tolerances.quad_tol =
        number_or(t, "tolerances", "quad_tol", cfg.tolerances.quad_tol);
    cfg.tolerances.eps_turn =
        number_or(t, "tolerances", "eps_turn", cfg.tolerances.eps_turn);
    cfg.tolerances.fd_step_policy = number_or(
        t, "tolerances", "fd_step_policy", cfg.tolerances.fd_step_policy);
    for (double v :
         {cfg.tolerances.tol_jacobi, cfg.tolerances.quad_tol,
          cfg.tolerances.eps_turn, cfg.tolerances.fd_step_policy}) {
      if (!(v > 0.0)) fail("tolerances", "entries must be strictly positive");
    }
    if (cfg.tolerances.tol_qshje && !(*cfg.tolerances.tol_qshje > 0.0))
      fail("tolerances.tol_qshje", "must be strictly positive");
  }

  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    if (!o.is_object()) throw ConfigError("output: expected an object");
    reject_unknown(o, "output", {"format", "path"});
    if (o.contains("format")) {
      const std::string f = require_string(o, "output", "format");
      if (f == "csv")
        cfg.output.format = OutputFormat::csv;
      else if (f == "json")
        cfg.output.format = OutputFormat::json;
      else
        fail("output.format", "must be csv or json");
    }
    if (o.contains("path"))
      cfg.output.path = require_string(o, "output", "path");
  }

  cfg.basis_step = number_or(doc, "", "basis_step", cfg.basis_step);
  if (!(cfg.basis_step > 0.0))
    fail("basis_step", "must be strictly positive");

  if (doc.contains("x_ref")) cfg.x_ref = require_number(doc, "", "x_ref");

  if (doc.contains("bd")) {
    const auto& b = doc.at("bd");
    if (!b.is_object()) throw ConfigError("bd: expected an object");
    reject_unknown(b, "bd", {"continue_past_turning"});
    cfg.continue_past_turning =
        boolean_or(b, "bd", "continue_past_turning", false);
  }

  if (doc.contains("debug")) {
    const auto& d = doc.at("debug");
    if (!d.is_object()) throw ConfigError("debug: expected an object");
    reject_unknown(d, "debug", {"wronskian_scale"});
    cfg.wronskian_scale =
        number_or(d, "debug", "wronskian_scale", cfg.wronskian_scale);
    if (cfg.wronskian_scale == 0.0)
      fail("debug.wronskian_scale", "must be nonzero");
  }

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace qhj
