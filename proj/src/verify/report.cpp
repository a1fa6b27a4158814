#include "gerbe/verify/report.hpp"

#include <cstdio>

#include "gerbe/integrate.hpp"

namespace gerbe::verify {

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::add(CheckRecord rec) {
  for (const auto& c : checks)
    if (c.name == rec.name) throw InvariantError("duplicate check in report: " + rec.name);
  checks.push_back(std::move(rec));
}

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

nlohmann::ordered_json to_json(const Report& report) {
  using json = nlohmann::ordered_json;
  const RunConfig& cfg = report.config;
  json tol = json::object();
  for (const auto& [name, value] : cfg.tol.overrides()) tol[name] = value;

  json env = json::object();
  env["version"] = kVersion;
  env["seed"] = cfg.seed;
  env["n"] = cfg.ns;
  env["samples"] = cfg.samples ? json(*cfg.samples) : json(nullptr);
  env["grid"] = {cfg.grid_theta, cfg.grid_phi};
  env["su2_grid"] = cfg.su2_grid;
  env["fd_step"] = cfg.fd_step;
  env["contour_nodes"] = cfg.contour_nodes;
  env["tolerance_overrides"] = tol;

  json checks = json::array();
  for (const auto& c : report.checks) {
    json r = json::object();
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["n"] = c.n;
    r["samples"] = c.samples;
    r["residual"] = number(c.residual);
    r["comparison"] = c.comparison;
    r["tolerance"] = c.tolerance;
    r["pass"] = c.pass;
    if (!c.value.is_null()) r["value"] = c.value;
    if (cfg.timings) r["runtime_ms"] = c.runtime_ms;
    checks.push_back(std::move(r));
  }

  json out = json::object();
  out["schema"] = kSchemaVersion;
  out["command"] = cfg.command;
  out["environment"] = env;
  out["conventions"] = {{"wedge", "determinant convention without 1/k!"},
                        {"chern_tautological", -1},
                        {"wzw_orientation", kWzwOrientation},
                        {"delta", "δ(h)(y1, y2) = h(y2) − h(y1)"}};
  out["checks"] = checks;
  out["pass"] = report.pass();
  return out;
}

std::string render(const Report& report) { return to_json(report).dump(2) + "\n"; }

void print_summary(const Report& report, std::ostream& os) {
  char line[256];
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%s  %-34s %11.3e %-2s %9.2e\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.residual, c.comparison.c_str(), c.tolerance);
    os << line;
  }
  os << (report.pass() ? "all checks passed" : "some checks FAILED") << "\n";
}

}  // namespace gerbe::verify
