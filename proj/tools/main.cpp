#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/verify.hpp"

using namespace bcdual::cli;

namespace {

struct Flags {
  std::string config, model, method, direction, out, precision, suite = "all", fault;
  std::optional<double> tmin, tmax;
  std::optional<int> steps;
  bool no_timestamp = false;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--model", f.model, "sutherland or rsvd");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--precision", f.precision, "double or extended:<bits>");
  cmd->add_flag("--no-timestamp", f.no_timestamp, "omit wall-clock fields from reports");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (!f.model.empty()) cfg.model = parse_model(f.model);
  if (!f.method.empty()) cfg.method = parse_method(f.method);
  if (!f.direction.empty()) cfg.direction = parse_direction(f.direction);
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.precision.empty()) cfg.precision = f.precision;
  if (f.tmin) cfg.tmin = *f.tmin;
  if (f.tmax) cfg.tmax = *f.tmax;
  if (f.steps) cfg.steps = *f.steps;
  validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bcdual: BC_n Sutherland and RSvD models, their duality and scattering"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* sim = app.add_subcommand("simulate", "integrate a trajectory and write CSV plus a JSON sidecar");
  add_run_flags(sim, f);
  sim->add_option("--method", f.method, "duality or ode");
  sim->add_option("--tmin", f.tmin, "first grid time");
  sim->add_option("--tmax", f.tmax, "last grid time");
  sim->add_option("--steps", f.steps, "number of grid points");

  CLI::App* dual = app.add_subcommand("dualize", "map a point to the dual model");
  add_run_flags(dual, f);
  dual->add_option("--direction", f.direction, "s2r or r2s");

  CLI::App* scat = app.add_subcommand("scatter", "asymptotic fits, wave maps and scattering report");
  add_run_flags(scat, f);

  CLI::App* ver = app.add_subcommand("verify", "run the self-verification suite");
  ver->add_option("--suite", f.suite, "core, lax, duality, dynamics, scattering or all");
  ver->add_option("--out", f.out, "also write the summary here");
  ver->add_flag("--no-timestamp", f.no_timestamp, "omit wall-clock fields from the summary");
  ver->add_option("--inject-fault", f.fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  Context ctx{std::cout, std::cerr, !f.no_timestamp};
  return run_guarded(
      [&]() -> int {
        if (ver->parsed()) {
          VerifyOptions o;
          o.fault = f.fault;
          return cmd_verify(f.suite, o, f.out, ctx);
        }
        const RunConfig cfg = resolve(f);
        if (sim->parsed()) return cmd_simulate(cfg, ctx);
        if (dual->parsed()) return cmd_dualize(cfg, ctx);
        return cmd_scatter(cfg, ctx);
      },
      ctx);
}
