#pragma once

#include <string>
#include <vector>

#include "pxp_cli/config.hpp"

namespace pxp::cli {

struct RunResult {
  std::vector<std::string> files;  // relative to the output directory
};

/// Runs one experiment and writes its files plus manifest.json into config.out.
RunResult run(const RunConfig& config);

/// Full entry point: parse, validate, run. On failure writes error.json and
/// returns a nonzero status (2 configuration, 3 numerical, 1 other).
int main_entry(const std::vector<std::string>& args);

}  // namespace pxp::cli
