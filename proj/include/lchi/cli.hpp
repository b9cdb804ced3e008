#pragma once

#include <string>

#include "lchi/table_io.hpp"

namespace lchi::cli {

// Runs one subcommand with a fully assembled config. Throws config_error for
// bad keys/values (exit 2 at the binary boundary) and other lchi errors for
// runtime failures (exit 1). Returns 0 on success.
int dispatch(const std::string& command, const RunConfig& config);

int cmd_constants(const RunConfig&);
int cmd_dist(const RunConfig&);
int cmd_model(const RunConfig&);
int cmd_moments(const RunConfig&);
int cmd_charsum(const RunConfig&);
int cmd_extreme(const RunConfig&);

}  // namespace lchi::cli
