#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gerbe/verify/check.hpp"
#include "gerbe/verify/config.hpp"

namespace gerbe::verify {

inline constexpr int kSchemaVersion = 1;

struct Report {
  RunConfig config;
  std::vector<CheckRecord> checks;

  bool pass() const;
  /// Throws InvariantError if a check name repeats.
  void add(CheckRecord rec);
};

/// Runtimes are included only when the config asks for timings, so the
/// document is otherwise a pure function of the config.
nlohmann::ordered_json to_json(const Report& report);
std::string render(const Report& report);

/// One line per check: PASS/FAIL, name, residual, comparison, tolerance.
void print_summary(const Report& report, std::ostream& os);

}  // namespace gerbe::verify
