#pragma once

#include "gerbe/verify/report.hpp"

namespace gerbe::verify {

Report cmd_identities(const RunConfig& cfg);
Report cmd_curvings(const RunConfig& cfg);
Report cmd_invariants(const RunConfig& cfg);

/// Dispatches on cfg.command.
Report run_command(const RunConfig& cfg);

}  // namespace gerbe::verify
