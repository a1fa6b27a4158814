#include "gerbe/verify/config.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>

namespace gerbe::verify {

namespace {

template <class T>
T parse_number(std::string_view s, const char* what) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty())
    throw ConfigError(std::string("invalid ") + what + ": '" + std::string(s) + "'");
  return value;
}

}  // namespace

CheckContext RunConfig::context() const {
  CheckContext c;
  c.seed = seed;
  c.fd_step = fd_step;
  c.contour_nodes = contour_nodes;
  c.grid_theta = grid_theta;
  c.grid_phi = grid_phi;
  c.su2_grid = su2_grid;
  c.tol = tol;
  return c;
}

std::vector<int> parse_dimensions(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(item, "dimension"));
  if (out.empty()) throw ConfigError("empty dimension list");
  return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("grid must look like 200x400: '" + text + "'");
  return {parse_number<int>(std::string_view(text).substr(0, x), "grid"),
          parse_number<int>(std::string_view(text).substr(x + 1), "grid")};
}

void parse_tolerance(const std::string& text, Tolerances& tol) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("tolerance must look like name=value: '" + text + "'");
  tol.set(text.substr(0, eq), parse_number<double>(std::string_view(text).substr(eq + 1), "tolerance"));
}

void validate(const RunConfig& cfg) {
  if (cfg.ns.empty()) throw ConfigError("no dimensions given");
  for (int n : cfg.ns)
    if (n < 2 || n > 16) throw ConfigError("dimensions must lie in [2, 16]");
  if (cfg.samples && *cfg.samples < 1) throw ConfigError("samples must be positive");
  if (cfg.grid_theta < 2 || cfg.grid_phi < 2) throw ConfigError("grid sizes must be at least 2");
  if (cfg.su2_grid < 2) throw ConfigError("su2 grid must be at least 2");
  if (!(cfg.fd_step > 0.0) || cfg.fd_step > 0.1) throw ConfigError("fd step must lie in (0, 0.1]");
  if (cfg.contour_nodes < 16) throw ConfigError("contour nodes must be at least 16");
  for (const auto& [name, value] : cfg.tol.overrides())
    if (!(value > 0.0) || !std::isfinite(value))
      throw ConfigError("tolerance for '" + name + "' must be positive");
}

ParseResult parse_command_line(int argc, const char* const* argv) {
  ParseResult result;
  RunConfig& cfg = result.config;
  CLI::App app{"Numerical verification of the gerbe identities"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1, 1);

  std::string dims = "2,3,4", grid = "200x400";
  int samples = 0;
  std::vector<std::string> tols;
  app.add_subcommand("identities", "Lie, spectral, integer-valued and form identities")->fallthrough();
  app.add_subcommand("curvings", "Curvings, three-curvatures and the contour backend")->fallthrough();
  app.add_subcommand("invariants", "Chern, WZW, holonomy and Deligne checks")->fallthrough();
  app.add_option("--n", dims, "Comma-separated dimensions")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  auto* samples_opt = app.add_option("--samples", samples, "Samples per check");
  app.add_option("--grid", grid, "Sphere grid THETAxPHI")->capture_default_str();
  app.add_option("--su2-grid", cfg.su2_grid, "Nodes per Euler angle")->capture_default_str();
  app.add_option("--fd-step", cfg.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--contour-nodes", cfg.contour_nodes, "Contour quadrature nodes")
      ->capture_default_str();
  app.add_option("--tol", tols, "Tolerance override name=value ('*' for all)");
  app.add_option("--report", cfg.report_path, "Write the JSON report here");
  app.add_flag("--timings", cfg.timings, "Include runtimes in the report");

  try {
    app.parse(argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.ns = parse_dimensions(dims);
    std::tie(cfg.grid_theta, cfg.grid_phi) = parse_grid(grid);
    if (samples_opt->count() > 0) cfg.samples = samples;
    for (const auto& t : tols) parse_tolerance(t, cfg.tol);
    validate(cfg);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    result.outcome = ParseOutcome::Exit;
    result.exit_code = 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "gerbeverify: " << e.what() << "\n";
    result.outcome = ParseOutcome::Exit;
    result.exit_code = 2;
  } catch (const ConfigError& e) {
    std::cerr << "gerbeverify: " << e.what() << "\n";
    result.outcome = ParseOutcome::Exit;
    result.exit_code = 2;
  }
  return result;
}

}  // namespace gerbe::verify
