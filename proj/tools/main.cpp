// Command-line harness: trace / compare / singularities / transform / check
// over a JSON run configuration.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qhj/commands.hpp"

namespace {

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  // stage next to the target and rename, so a failed run leaves no partial table
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw qhj::DomainError("cannot open output file: " + tmp);
    out.write(payload.data(),
              static_cast<std::streamsize>(payload.size()));
    if (!out) throw qhj::DomainError("cannot write output file: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum reduced-action trajectory engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format;
  std::string engine = "floyd";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* c_trace =
      app.add_subcommand("trace", "trace a trajectory under one engine");
  add_common(c_trace);
  c_trace->add_option("--engine", engine, "floyd or bd")
      ->check(CLI::IsMember({"floyd", "bd"}));
  CLI::App* c_compare =
      app.add_subcommand("compare", "compare both laws of motion per sample");
  add_common(c_compare);
  CLI::App* c_sing = app.add_subcommand(
      "singularities", "locate group-velocity poles with transit times");
  add_common(c_sing);
  CLI::App* c_transform = app.add_subcommand(
      "transform", "tabulate the coordinate transform with region labels");
  add_common(c_transform);
  CLI::App* c_check =
      app.add_subcommand("check", "run the identity suite and report residuals");
  add_common(c_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    qhj::RunConfig cfg = qhj::parse_config_file(config_path);
    if (!format.empty())
      cfg.output.format = (format == "json") ? qhj::OutputFormat::json
                                             : qhj::OutputFormat::csv;
    if (!out_path.empty()) cfg.output.path = out_path;

    qhj::cli::CommandResult result;
    if (c_trace->parsed()) {
      result = qhj::cli::cmd_trace(
          cfg, engine == "bd" ? qhj::Engine::bd : qhj::Engine::floyd);
    } else if (c_compare->parsed()) {
      result = qhj::cli::cmd_compare(cfg);
    } else if (c_sing->parsed()) {
      result = qhj::cli::cmd_singularities(cfg);
    } else if (c_transform->parsed()) {
      result = qhj::cli::cmd_transform(cfg);
    } else {
      result = qhj::cli::cmd_check(cfg);
    }
    write_output(cfg.output.path, result.payload);
    return result.exit_code;
  } catch (const qhj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const qhj::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
