#include "commands.hpp"

#include <cmath>
#include <iostream>

#include <bcdual/duality.hpp>
#include <bcdual/dynamics.hpp>
#include <bcdual/laxops.hpp>
#include <bcdual/scattering.hpp>

namespace bcdual::cli {

namespace {

constexpr double kScatterTolerance = 1e-6;

DualityOptions duality_options(const RunConfig& cfg) {
  DualityOptions o;
  o.precision = precision_of(cfg);
  o.extended_seed_check = o.precision.is_extended();
  return o;
}

SolveOptions solve_options(const RunConfig& cfg, Method method) {
  SolveOptions o;
  o.method = method;
  o.duality = duality_options(cfg);
  o.threads = cfg.threads;
  return o;
}

Json header(const char* command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["model"] = to_string(cfg.model);
  j["n"] = cfg.n;
  j["mu"] = cfg.mu;
  j["nu"] = cfg.nu;
  j["kappa"] = cfg.kappa;
  j["precision"] = precision_of(cfg).to_string();
  return j;
}

Json point_json(const PhasePointS& pt) { return Json{{"q", to_json(pt.q())}, {"p", to_json(pt.p())}}; }
Json point_json(const PhasePointR& pt) { return Json{{"lambda", to_json(pt.lambda())}, {"theta", to_json(pt.theta())}}; }
Json state_json(const AsymptoticState& s) { return Json{{"x", to_json(s.x())}, {"y", to_json(s.y())}}; }

Trajectory simulate(const RunConfig& cfg, Method method) {
  const Couplings c = couplings_of(cfg);
  const TimeGrid grid = grid_of(cfg);
  if (cfg.model == Model::kSutherland) return solve_sutherland(initial_S(cfg), grid, c, solve_options(cfg, method));
  return solve_rsvd(initial_R(cfg), grid, c, solve_options(cfg, method));
}

void emit(const Json& j, const std::string& path, Context& ctx) {
  const std::string text = j.dump(2) + "\n";
  if (!path.empty()) write_text_file(path, text);
  ctx.out << text;
}

}  // namespace

Json simulate_report(const RunConfig& cfg, bool timestamp, Trajectory* traj_out) {
  validate(cfg);
  const Couplings c = couplings_of(cfg);
  Trajectory tr = simulate(cfg, cfg.method);

  Json j = header("simulate", cfg);
  j["method"] = to_string(cfg.method);
  j["tmin"] = cfg.tmin;
  j["tmax"] = cfg.tmax;
  j["steps"] = cfg.steps;
  j["initial"] = cfg.model == Model::kSutherland ? point_json(initial_S(cfg)) : point_json(initial_R(cfg));
  j["energy_initial"] = number_or_null(tr.energy0);
  j["energy_drift_max"] = number_or_null(tr.max_energy_drift);

  const RealMatrix actions = conserved_actions(tr, c);
  const int i0 = tr.grid.nearest_to_zero();
  double dev = 0;
  for (int i = 0; i < actions.rows(); ++i) dev = std::max(dev, (actions.row(i) - actions.row(i0)).cwiseAbs().maxCoeff());
  j["conserved_actions"] = Json{{"initial", to_json(Vector(actions.row(i0).transpose()))}, {"max_deviation", dev}};

  if (cfg.compare_methods) {
    const Method other = cfg.method == Method::kDuality ? Method::kOde : Method::kDuality;
    j["method_distance"] = number_or_null(trajectory_distance(tr, simulate(cfg, other)));
  } else {
    j["method_distance"] = nullptr;
  }
  j["csv"] = cfg.out.empty() ? "trajectory.csv" : cfg.out;
  j["timestamp"] = timestamp ? Json(utc_timestamp()) : Json(nullptr);
  if (traj_out) *traj_out = std::move(tr);
  return j;
}

int cmd_simulate(const RunConfig& cfg, Context& ctx) {
  Trajectory tr;
  Json j = simulate_report(cfg, ctx.timestamp, &tr);
  const std::string path = j["csv"].get<std::string>();
  write_trajectory_csv(path, tr);
  emit(j, path + ".json", ctx);
  return kExitOk;
}

Json dualize_report(const RunConfig& cfg, bool timestamp) {
  validate(cfg);
  const Couplings c = couplings_of(cfg);
  const DualityOptions o = duality_options(cfg);
  Json j = header("dualize", cfg);
  j.erase("model");
  j["direction"] = cfg.direction == Direction::kS2R ? "s2r" : "r2s";
  DualityDiagnostics d;
  double roundtrip;
  if (cfg.direction == Direction::kS2R) {
    const PhasePointS in = initial_S(cfg);
    const auto r = dualize_S_to_R(in, c, o);
    d = r.diagnostics;
    roundtrip = (pack(dualize_R_to_S(r.point, c, o).point) - pack(in)).cwiseAbs().maxCoeff();
    j["input"] = point_json(in);
    j["output"] = point_json(r.point);
  } else {
    const PhasePointR in = initial_R(cfg);
    const auto r = dualize_R_to_S(in, c, o);
    d = r.diagnostics;
    roundtrip = (pack(dualize_S_to_R(r.point, c, o).point) - pack(in)).cwiseAbs().maxCoeff();
    j["input"] = point_json(in);
    j["output"] = point_json(r.point);
  }
  j["diagnostics"] = Json{{"roundtrip_residual", roundtrip},
                          {"newton_iterations", d.newton_iters},
                          {"seed_error", number_or_null(d.seed_error)},
                          {"spectrum_imag_max", number_or_null(d.spectrum_imag_max)},
                          {"imag_residual", number_or_null(d.imag_residual)},
                          {"extended_seed_gap", number_or_null(d.extended_seed_gap)}};
  j["timestamp"] = timestamp ? Json(utc_timestamp()) : Json(nullptr);
  return j;
}

int cmd_dualize(const RunConfig& cfg, Context& ctx) {
  emit(dualize_report(cfg, ctx.timestamp), cfg.out, ctx);
  return kExitOk;
}

namespace {

struct Fitted {
  Vector x, y;
};

// Sutherland: lines through q(t) past the horizon, x = intercept and y = slope.
Fitted fit_sutherland(const Trajectory& tr, Side side, double T) {
  const AsymptoticFit f = fit_linear_asymptote(tr, side, T);
  return {f.intercept, f.slope};
}

// RSvD: θ(t) → y and λ(t) − 2t sinh 2θ(t) → x, extrapolated in 1/t.
Fitted fit_rsvd(const Trajectory& tr, Side side) {
  const double s = sign_of(side);
  std::vector<double> t;
  std::vector<int> rows;
  for (int i = 0; i < tr.grid.size(); ++i)
    if (tr.grid[i] * s > 0) {
      t.push_back(tr.grid[i]);
      rows.push_back(i);
    }
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  RealMatrix th(m, tr.n()), z(m, tr.n());
  for (Eigen::Index k = 0; k < m; ++k) {
    const int i = rows[static_cast<std::size_t>(k)];
    th.row(k) = tr.momenta.row(i);
    for (int a = 0; a < tr.n(); ++a) z(k, a) = tr.positions(i, a) - 2 * tr.grid[i] * std::sinh(2 * tr.momenta(i, a));
  }
  return {extrapolate_limit(t, z), extrapolate_limit(t, th)};
}

Json decay_json(const DecayReport& r) {
  return Json{{"pass", r.pass},
              {"horizon", r.horizon},
              {"rate_estimate", number_or_null(r.rate_estimate)},
              {"worst_ratio", number_or_null(r.worst_ratio)},
              {"reason", r.reason}};
}

}  // namespace

Json scatter_report(const RunConfig& cfg, bool timestamp) {
  validate(cfg);
  const Couplings c = couplings_of(cfg);
  const DualityOptions o = duality_options(cfg);
  const bool suth = cfg.model == Model::kSutherland;

  AsymptoticState wm = suth ? wave_map_S(initial_S(cfg), c, Side::kMinus, o) : wave_map_R(initial_R(cfg), c, Side::kMinus, o);
  AsymptoticState wp = suth ? wave_map_S(initial_S(cfg), c, Side::kPlus, o) : wave_map_R(initial_R(cfg), c, Side::kPlus, o);
  const AsymptoticState predicted = suth ? scattering_map_S(wm, c) : scattering_map_R(wm);
  const double composition = std::max((predicted.x() - wp.x()).cwiseAbs().maxCoeff(),
                                      (predicted.y() - wp.y()).cwiseAbs().maxCoeff());

  // sample both sides past the fit horizon
  std::vector<double> t;
  double T;
  if (suth) {
    T = sutherland_horizon(wp.y());
    for (int k = 32; k >= 0; --k) t.push_back(-T * (1 + k / 32.0));
    for (int k = 0; k <= 32; ++k) t.push_back(T * (1 + k / 32.0));
  } else {
    T = rsvd_horizon(wp.y());
    for (int k = 48; k >= 0; --k) t.push_back(-T * std::pow(8.0, k / 48.0));
    for (int k = 0; k <= 48; ++k) t.push_back(T * std::pow(8.0, k / 48.0));
  }
  const TimeGrid grid(t);
  SolveOptions so = solve_options(cfg, Method::kDuality);
  const Trajectory tr = suth ? solve_sutherland(initial_S(cfg), grid, c, so) : solve_rsvd(initial_R(cfg), grid, c, so);
  const Fitted fp = suth ? fit_sutherland(tr, Side::kPlus, T) : fit_rsvd(tr, Side::kPlus);
  const Fitted fm = suth ? fit_sutherland(tr, Side::kMinus, T) : fit_rsvd(tr, Side::kMinus);

  Json j = header("scatter", cfg);
  j["horizon"] = T;
  j["fitted"] = Json{{"plus", Json{{"x", to_json(fp.x)}, {"y", to_json(fp.y)}}},
                     {"minus", Json{{"x", to_json(fm.x)}, {"y", to_json(fm.y)}}}};
  j["theoretical"] = Json{{"plus", state_json(wp)}, {"minus", state_json(wm)}};
  const Vector dxp = (fp.x - wp.x()).cwiseAbs(), dyp = (fp.y - wp.y()).cwiseAbs();
  const Vector dxm = (fm.x - wm.x()).cwiseAbs(), dym = (fm.y - wm.y()).cwiseAbs();
  j["deviations"] = Json{{"plus", Json{{"x", to_json(dxp)}, {"y", to_json(dyp)}}},
                         {"minus", Json{{"x", to_json(dxm)}, {"y", to_json(dym)}}}};
  const double fit_dev = std::max({dxp.maxCoeff(), dyp.maxCoeff(), dxm.maxCoeff(), dym.maxCoeff()});

  j["scattering_map"] = Json{{"incoming", state_json(wm)},
                             {"predicted", state_json(predicted)},
                             {"outgoing", state_json(wp)},
                             {"deviation", composition}};

  // total phase shift x⁺ + x⁻ against the one-body and pair terms of Δ (zero for RSvD)
  const Vector lambda = wp.y();
  DeltaDecomposition dd;
  if (suth) {
    dd = decompose_delta(lambda, c);
  } else {
    dd.one_body = Vector::Zero(cfg.n);
    dd.two_body = RealMatrix::Zero(cfg.n, cfg.n);
  }
  const Vector shift = fp.x + fm.x;
  const Vector shift_dev = (shift - dd.total()).cwiseAbs();
  j["delta_decomposition"] = Json{{"one_body", to_json(dd.one_body)},
                                  {"two_body", to_json(dd.two_body)},
                                  {"total", to_json(dd.total())},
                                  {"fitted_phase_shift", to_json(shift)},
                                  {"deviation", to_json(shift_dev)}};

  DecayOptions dopt;
  dopt.duality = o;
  const DecayReport rp = suth ? verify_decay_rates_S(initial_S(cfg), c, Side::kPlus, dopt)
                              : verify_decay_rates_R(initial_R(cfg), c, Side::kPlus, dopt);
  const DecayReport rm = suth ? verify_decay_rates_S(initial_S(cfg), c, Side::kMinus, dopt)
                              : verify_decay_rates_R(initial_R(cfg), c, Side::kMinus, dopt);
  j["decay"] = Json{{"plus", decay_json(rp)}, {"minus", decay_json(rm)}};

  const bool pass = fit_dev <= kScatterTolerance && shift_dev.maxCoeff() <= kScatterTolerance &&
                    composition <= 1e-8 && rp.pass && rm.pass;
  j["tolerance"] = kScatterTolerance;
  j["verdict"] = pass ? "pass" : "fail";
  j["timestamp"] = timestamp ? Json(utc_timestamp()) : Json(nullptr);
  return j;
}

int cmd_scatter(const RunConfig& cfg, Context& ctx) {
  const Json j = scatter_report(cfg, ctx.timestamp);
  emit(j, cfg.out, ctx);
  return j["verdict"] == "pass" ? kExitOk : kExitVerificationFailure;
}

int run_guarded(const std::function<int()>& fn, Context& ctx) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrationError& e) {
    ctx.err << "error: " << e.what() << " (last good time " << format_number(e.last_good_time()) << ")\n";
    return kExitNumeric;
  } catch (const Error& e) {
    ctx.err << "error: " << e.what() << '\n';
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitUsage;
  } catch (const std::exception& e) {
    ctx.err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace bcdual::cli
