#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"

namespace bcdual::cli {

struct CheckResult {
  bool pass = false;
  double value = 0;      // worst observed quantity
  double threshold = 0;  // pass iff value <= threshold unless detail says otherwise
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  // Test-only mutation: "delta-sign" flips the sign of Δ inside the minor identity check.
  std::string fault;
};

struct Check {
  std::string id;
  std::string suite;
  std::function<CheckResult(const VerifyOptions&)> run;
};

const std::vector<Check>& check_registry();
const std::vector<std::string>& suite_names();

Json verify_report(const std::string& suite, const VerifyOptions& opts, bool timestamp);
int cmd_verify(const std::string& suite, const VerifyOptions& opts, const std::string& out, Context& ctx);

}  // namespace bcdual::cli
