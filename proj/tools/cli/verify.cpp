#include "verify.hpp"

#include <chrono>
#include <iostream>

namespace bcdual::cli {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"core", "lax", "duality", "dynamics", "scattering", "all"};
  return names;
}

Json verify_report(const std::string& suite, const VerifyOptions& opts, bool timestamp) {
  bool known = false;
  for (const auto& s : suite_names()) known = known || s == suite;
  if (!known) throw ConfigError("unknown suite '" + suite + "'");
  if (!opts.fault.empty() && opts.fault != "delta-sign") throw ConfigError("unknown fault '" + opts.fault + "'");

  const auto start = std::chrono::steady_clock::now();
  Json checks = Json::array();
  Json failed = Json::array();
  int passed = 0;
  for (const Check& c : check_registry()) {
    if (suite != "all" && c.suite != suite) continue;
    CheckResult r;
    try {
      r = c.run(opts);
    } catch (const std::exception& e) {
      r.pass = false;
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.detail = std::string("exception: ") + e.what();
    }
    checks.push_back(Json{{"id", c.id},
                          {"suite", c.suite},
                          {"pass", r.pass},
                          {"value", number_or_null(r.value)},
                          {"threshold", r.threshold},
                          {"detail", r.detail}});
    if (r.pass)
      ++passed;
    else
      failed.push_back(c.id);
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json j;
  j["command"] = "verify";
  j["suite"] = suite;
  j["seed"] = opts.seed;
  j["checks"] = checks;
  j["passed"] = passed;
  j["failed"] = failed;
  j["verdict"] = failed.empty() ? "pass" : "fail";
  // wall-clock fields are suppressed together so reports stay byte-identical
  j["elapsed_seconds"] = timestamp ? Json(elapsed) : Json(nullptr);
  j["timestamp"] = timestamp ? Json(utc_timestamp()) : Json(nullptr);
  return j;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opts, const std::string& out, Context& ctx) {
  const Json j = verify_report(suite, opts, ctx.timestamp);
  const std::string text = j.dump(2) + "\n";
  if (!out.empty()) write_text_file(out, text);
  ctx.out << text;
  if (j["verdict"] == "pass") return kExitOk;
  ctx.err << "failed checks:";
  for (const auto& id : j["failed"]) ctx.err << ' ' << id.get<std::string>();
  ctx.err << '\n';
  return kExitVerificationFailure;
}

}  // namespace bcdual::cli
