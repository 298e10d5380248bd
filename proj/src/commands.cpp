#include "qhj/commands.hpp"

#include <algorithm>
#include <cmath>

#include "qhj/identities.hpp"
#include "qhj/table.hpp"
#include "qhj/transform.hpp"

namespace qhj::cli {

namespace {

const GridSpecX& require_grid_x(const RunConfig& cfg) {
  if (!cfg.grid_x)
    throw ConfigError("missing required field grid.x_min (an x grid is "
                      "needed by this command)");
  return *cfg.grid_x;
}

const GridSpecT& require_grid_t(const RunConfig& cfg) {
  if (!cfg.grid_t)
    throw ConfigError("missing required field grid.t_min (a t grid is "
                      "needed by this command)");
  return *cfg.grid_t;
}

double transform_anchor(const RunConfig& cfg) {
  return cfg.x_ref ? *cfg.x_ref : cfg.microstate.x0;
}

double qshje_tolerance(const RunConfig& cfg) {
  if (cfg.tolerances.tol_qshje) return *cfg.tolerances.tol_qshje;
  return cfg.potential.kind == PotentialKind::free_space ? 1e-9 : 1e-6;
}

std::string serialize(const RunConfig& cfg, const Table& table,
                      const std::string& command,
                      const std::string& json_extras = {}) {
  if (cfg.output.format == OutputFormat::csv) return to_csv(table);
  std::string doc = to_json(table, command);
  if (!json_extras.empty()) {
    // splice extra top-level members before the closing brace
    doc.erase(doc.rfind("}\n"));
    doc += ",\n" + json_extras + "\n}\n";
  }
  return doc;
}

constexpr const char* kTrajectoryColumns[] = {
    "x", "t", "v_group", "v_bd", "v_phase", "dS0_dx", "S0", "flags"};

std::vector<Cell> trajectory_row(const ReducedAction& ra, double x,
                                 double t, double v, Engine engine,
                                 unsigned flags) {
  std::vector<Cell> row;
  row.reserve(8);
  row.push_back(Cell::num(x));
  row.push_back(Cell::num(t));
  row.push_back(engine == Engine::floyd ? Cell::num(v) : Cell::none());
  row.push_back(engine == Engine::bd ? Cell::num(v) : Cell::none());
  row.push_back(Cell::num(phase_velocity(ra, x)));
  row.push_back(Cell::num(ra.conjugate_momentum(x)));
  row.push_back(Cell::num(ra.s0(x)));
  std::vector<std::string> tokens;
  const std::string joined = flags_to_string(flags);
  if (!joined.empty()) {
    std::size_t start = 0;
    while (start < joined.size()) {
      const std::size_t semi = joined.find(';', start);
      tokens.push_back(joined.substr(start, semi - start));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  row.push_back(Cell::flag_list(std::move(tokens)));
  return row;
}

}  // namespace

ReducedAction build_reduced_action(const RunConfig& cfg,
                                   const Potential& potential) {
  const PhysicalConstants pc = cfg.constants;
  const Microstate ms = cfg.microstate;
  pc.validate();
  ms.validate();

  ReducedAction::Rebuilder rebuild;
  SolutionBasis basis = [&] {
    if (potential.kind() == PotentialKind::free_space) {
      rebuild = [pc, x0 = ms.x0, scale = cfg.wronskian_scale](double E) {
        return SolutionBasis::analytic_free(pc, E, x0)
            .with_scaled_wronskian(scale);
      };
      return SolutionBasis::analytic_free(pc, ms.E, ms.x0)
          .with_scaled_wronskian(cfg.wronskian_scale);
    }
    const GridSpecX& gx = require_grid_x(cfg);
    const Interval domain{std::min(gx.x_min, ms.x0),
                          std::max(gx.x_max, ms.x0)};
    const double step = cfg.basis_step;
    rebuild = [pc, potential, domain, step, x0 = ms.x0,
               scale = cfg.wronskian_scale](double E) {
      return SolutionBasis::integrate(pc, potential, E, domain, step, x0)
          .with_scaled_wronskian(scale);
    };
    return SolutionBasis::integrate(pc, potential, ms.E, domain, step, ms.x0)
        .with_scaled_wronskian(cfg.wronskian_scale);
  }();

  const double floor = potential.kind() == PotentialKind::free_space
                           ? 0.0
                           : potential.min_on(basis.domain());
  ReducedAction ra(std::move(basis), ms, pc, std::move(rebuild), floor);
  ra.set_fd_step_scale(cfg.tolerances.fd_step_policy);
  return ra;
}

CommandResult cmd_trace(const RunConfig& cfg, Engine engine) {
  const Potential potential = cfg.potential.build();
  const ReducedAction ra = build_reduced_action(cfg, potential);

  Trajectory traj;
  if (engine == Engine::floyd) {
    const GridSpecX& gx = require_grid_x(cfg);
    traj = trace_floyd(ra, {gx.x_min, gx.x_max}, gx.samples);
  } else {
    const GridSpecT& gt = require_grid_t(cfg);
    BdTraceOptions opts;
    opts.continue_past_turning = cfg.continue_past_turning;
    opts.eps_turn = cfg.tolerances.eps_turn;
    traj = trace_bd(ra, potential, {gt.t_min, gt.t_max}, gt.step, opts);
  }

  Table table;
  table.columns.assign(std::begin(kTrajectoryColumns),
                       std::end(kTrajectoryColumns));
  for (const auto& s : traj.samples)
    table.rows.push_back(
        trajectory_row(ra, s.x, s.t, s.v, engine, s.flags));
  return {0, serialize(cfg, table, "trace")};
}

CommandResult cmd_compare(const RunConfig& cfg) {
  const Potential potential = cfg.potential.build();
  const ReducedAction ra = build_reduced_action(cfg, potential);
  const GridSpecX& gx = require_grid_x(cfg);

  const ComparisonReport report =
      compare_engines(ra, potential, {gx.x_min, gx.x_max}, gx.samples,
                      cfg.tolerances.eps_turn);

  Table table;
  table.columns.assign(std::begin(kTrajectoryColumns),
                       std::end(kTrajectoryColumns));
  table.columns.push_back("abs_diff");
  for (const auto& r : report.rows) {
    auto row = trajectory_row(ra, r.x, r.t, r.v_group, Engine::floyd, r.flags);
    row[3] = Cell::num(r.v_bd);
    row.push_back(Cell::num(r.abs_diff));
    table.rows.push_back(std::move(row));
  }
  const std::string extras =
      "  \"summary\": {\"max_abs_diff\": " + format_double(report.max_abs_diff) +
      ", \"x_at_max\": " + format_double(report.x_at_max) + "}";
  return {0, serialize(cfg, table, "compare", extras)};
}

CommandResult cmd_singularities(const RunConfig& cfg) {
  const Potential potential = cfg.potential.build();
  const ReducedAction ra = build_reduced_action(cfg, potential);
  const GridSpecX& gx = require_grid_x(cfg);

  const SingularitySet set =
      find_singularities(ra, {gx.x_min, gx.x_max});

  Table table;
  table.columns = {"x_star", "bracket_lo", "bracket_hi", "transit_time"};
  for (const auto& r : set.roots)
    table.rows.push_back({Cell::num(r.x_star), Cell::num(r.bracket.lo),
                          Cell::num(r.bracket.hi),
                          Cell::num(r.transit_time)});
  return {0, serialize(cfg, table, "singularities")};
}

CommandResult cmd_transform(const RunConfig& cfg) {
  const Potential potential = cfg.potential.build();
  const ReducedAction ra = build_reduced_action(cfg, potential);
  const GridSpecX& gx = require_grid_x(cfg);

  const TransformTable tt = transform_table(
      ra, potential, {gx.x_min, gx.x_max}, gx.samples, transform_anchor(cfg),
      cfg.tolerances.quad_tol, cfg.tolerances.eps_turn);

  Table table;
  table.columns = {"x", "x_hat", "region"};
  for (const auto& r : tt.rows)
    table.rows.push_back({Cell::num(r.x),
                          r.x_hat ? Cell::num(*r.x_hat) : Cell::none(),
                          Cell::str(region_to_string(r.region))});
  return {0, serialize(cfg, table, "transform")};
}

CommandResult cmd_check(const RunConfig& cfg) {
  const Potential potential = cfg.potential.build();
  const ReducedAction ra = build_reduced_action(cfg, potential);

  Interval range;
  int samples = 0;
  if (cfg.grid_x) {
    range = {cfg.grid_x->x_min, cfg.grid_x->x_max};
    samples = cfg.grid_x->samples;
  } else {
    // default probe window: a few oscillation periods right of the anchor
    const double k = std::sqrt(2.0 * cfg.constants.mass *
                               std::max(cfg.microstate.E, 1e-6)) /
                     cfg.constants.hbar;
    range = {cfg.microstate.x0, cfg.microstate.x0 + 20.0 / k};
    samples = 64;
  }

  CheckOptions opts;
  opts.tol_jacobi = cfg.tolerances.tol_jacobi;
  opts.tol_qshje = qshje_tolerance(cfg);
  opts.quad_tol = cfg.tolerances.quad_tol;
  opts.eps_turn = cfg.tolerances.eps_turn;

  const IdentityReport report =
      run_check_suite(ra, potential, range, samples, opts);

  Table table;
  table.columns = {"name", "residual", "tolerance", "pass"};
  for (const auto& e : report.entries)
    table.rows.push_back({Cell::str(e.name), Cell::num(e.residual),
                          Cell::num(e.tolerance), Cell::boolean(e.pass)});
  const std::string extras =
      std::string("  \"overall\": ") + (report.overall ? "true" : "false");
  return {report.overall ? 0 : 1, serialize(cfg, table, "check", extras)};
}

}  // namespace qhj::cli
