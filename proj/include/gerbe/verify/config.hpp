#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gerbe/verify/check.hpp"

namespace gerbe::verify {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<int> ns{2, 3, 4};
  std::uint64_t seed = 1;
  std::optional<int> samples;  // overrides every per-check default
  int grid_theta = 200;
  int grid_phi = 400;
  int su2_grid = 64;
  double fd_step = 1e-5;
  int contour_nodes = 4096;
  Tolerances tol;
  std::string report_path;
  bool timings = false;

  CheckContext context() const;
  /// Sample count for a check whose default is `fallback`.
  int count(int fallback) const { return samples ? *samples : fallback; }
  /// Sample count for an expensive check: a tenth of --samples.
  int heavy(int fallback) const { return samples ? std::max(1, *samples / 10) : fallback; }
};

/// "2,3,4" → {2, 3, 4}.
std::vector<int> parse_dimensions(const std::string& text);
/// "200x400" → {200, 400}.
std::pair<int, int> parse_grid(const std::string& text);
/// "name=value" into `tol`.
void parse_tolerance(const std::string& text, Tolerances& tol);
/// Throws ConfigError unless every field is in range.
void validate(const RunConfig& cfg);

enum class ParseOutcome { Run, Exit };

struct ParseResult {
  ParseOutcome outcome = ParseOutcome::Run;
  int exit_code = 0;
  RunConfig config;
};

/// Command line (and optional --config file) to a validated RunConfig. Usage
/// errors give outcome Exit with code 2; --help gives Exit with code 0.
ParseResult parse_command_line(int argc, const char* const* argv);

}  // namespace gerbe::verify
