#pragma once

#include "config.hpp"
#include "output.hpp"

namespace carpetlab::cli {

CommandOutput cmd_analyze(const RunConfig& cfg);
CommandOutput cmd_slice(const RunConfig& cfg);
CommandOutput cmd_sweep(const RunConfig& cfg);
CommandOutput cmd_scenery(const RunConfig& cfg);
/// Exhaustive and fuzz invariant suites; exit_code 1 on any hard failure.
CommandOutput cmd_proptest(const RunConfig& cfg);

}  // namespace carpetlab::cli
