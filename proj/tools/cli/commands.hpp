#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "config.hpp"
#include "io.hpp"

namespace bcdual::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool timestamp = true;
};

int cmd_simulate(const RunConfig& cfg, Context& ctx);
int cmd_dualize(const RunConfig& cfg, Context& ctx);
int cmd_scatter(const RunConfig& cfg, Context& ctx);

// Runs fn and maps exceptions onto exit codes, printing the message to ctx.err.
int run_guarded(const std::function<int()>& fn, Context& ctx);

// Report builders, exposed for tests.
Json simulate_report(const RunConfig& cfg, bool timestamp, Trajectory* traj_out = nullptr);
Json dualize_report(const RunConfig& cfg, bool timestamp);
Json scatter_report(const RunConfig& cfg, bool timestamp);

}  // namespace bcdual::cli
