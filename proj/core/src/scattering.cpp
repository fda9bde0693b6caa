#include "bcdual/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bcdual {

namespace {

struct Line {
  double slope, intercept;
};

Line least_squares(const std::vector<double>& t, const std::vector<double>& y) {
  const double m = static_cast<double>(t.size());
  const double tm = std::accumulate(t.begin(), t.end(), 0.0) / m;
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - tm) * (t[i] - tm);
    sty += (t[i] - tm) * (y[i] - ym);
  }
  const double slope = stt > 0 ? sty / stt : 0.0;
  return {slope, ym - slope * tm};
}

// −slope of ln r against u over the samples with r above the floor.
double log_rate(const std::vector<double>& u, const std::vector<double>& r, double floor) {
  std::vector<double> uu, lr;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (r[i] > floor && std::isfinite(r[i])) {
      uu.push_back(u[i]);
      lr.push_back(std::log(r[i]));
    }
  }
  if (uu.size() < 3) return std::numeric_limits<double>::quiet_NaN();
  return -least_squares(uu, lr).slope;
}

}  // namespace

AsymptoticFit fit_linear_asymptote(const std::vector<double>& times, const RealMatrix& x, const FitOptions& opts) {
  const std::size_t m = times.size();
  if (static_cast<std::size_t>(x.rows()) != m) fail(ErrorCode::kInvalidInput, "fit samples and times differ in length");
  if (m < 8) fail(ErrorCode::kInsufficientSamples, "asymptotic fit needs at least 8 samples");
  if (!(opts.window_fraction > 0 && opts.window_fraction <= 1))
    fail(ErrorCode::kInvalidParameter, "window_fraction must lie in (0, 1]");

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(times[a]) > std::abs(times[b]); });
  const std::size_t w = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(opts.window_fraction * m)));

  const Eigen::Index n = x.cols();
  AsymptoticFit fit;
  fit.slope.resize(n);
  fit.intercept.resize(n);
  fit.times = times;
  fit.residuals.resize(static_cast<Eigen::Index>(m), n);
  std::vector<double> tw(w), yw(w);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < w; ++k) {
      tw[k] = times[order[k]];
      yw[k] = x(static_cast<Eigen::Index>(order[k]), a);
    }
    const Line l = least_squares(tw, yw);
    fit.slope(a) = l.slope;
    fit.intercept(a) = l.intercept;
    for (std::size_t i = 0; i < m; ++i)
      fit.residuals(static_cast<Eigen::Index>(i), a) = x(static_cast<Eigen::Index>(i), a) - (l.slope * times[i] + l.intercept);
  }
  if (!fit.residuals.allFinite()) fail(ErrorCode::kConvergence, "asymptotic fit produced non-finite residuals");

  std::vector<double> u(m), r(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double at = std::abs(times[i]);
    u[i] = opts.decay == DecayModel::kExponential ? at : std::log(at);
    r[i] = fit.residuals.row(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff();
  }
  fit.decay_rate_estimate = log_rate(u, r, opts.noise_floor);
  return fit;
}

AsymptoticFit fit_linear_asymptote(const Trajectory& traj, Side side, double horizon, const FitOptions& opts) {
  const double s = sign_of(side);
  std::vector<double> t;
  std::vector<int> rows;
  for (int i = 0; i < traj.grid.size(); ++i) {
    const double ti = traj.grid[i];
    if (ti * s > 0 && std::abs(ti) >= horizon) {
      t.push_back(ti);
      rows.push_back(i);
    }
  }
  if (t.size() < 8) fail(ErrorCode::kInsufficientSamples, "trajectory has fewer than 8 samples past the horizon");
  RealMatrix x(static_cast<Eigen::Index>(rows.size()), traj.n());
  for (std::size_t k = 0; k < rows.size(); ++k) x.row(static_cast<Eigen::Index>(k)) = traj.positions.row(rows[k]);
  return fit_linear_asymptote(t, x, opts);
}

Vector extrapolate_limit(const std::vector<double>& times, const RealMatrix& x, int degree) {
  const Eigen::Index m = static_cast<Eigen::Index>(times.size());
  if (x.rows() != m) fail(ErrorCode::kInvalidInput, "extrapolation samples and times differ in length");
  if (degree < 0 || m < std::max(8, degree + 2)) fail(ErrorCode::kInsufficientSamples, "too few samples to extrapolate");
  double tmin = std::numeric_limits<double>::infinity();
  for (double t : times) {
    if (t == 0 || !std::isfinite(t)) fail(ErrorCode::kInvalidInput, "extrapolation times must be finite and nonzero");
    tmin = std::min(tmin, std::abs(t));
  }
  // basis in s = tmin/|t| ∈ (0, 1] keeps the columns comparable
  RealMatrix B(m, degree + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = tmin / std::abs(times[static_cast<std::size_t>(i)]);
    double pw = 1;
    for (int k = 0; k <= degree; ++k, pw *= s) B(i, k) = pw;
  }
  const Eigen::ColPivHouseholderQR<RealMatrix> qr(B);
  Vector out(x.cols());
  for (Eigen::Index a = 0; a < x.cols(); ++a) out(a) = qr.solve(x.col(a))(0);
  return out;
}

AsymptoticState wave_map_S(const PhasePointS& pt, const Couplings& c, Side side, const DualityOptions& opts) {
  const PhasePointR d = dualize_S_to_R(pt, c, opts).point;
  const double s = sign_of(side);
  return AsymptoticState(-s * d.theta() + 0.5 * delta_phase(d.lambda(), c), s * d.lambda(), side);
}

AsymptoticState scattering_map_S(const AsymptoticState& in, const Couplings& c, const PhaseShiftFn& delta) {
  if (in.side() != Side::kMinus) fail(ErrorCode::kOrderingViolation, "scattering map expects incoming data");
  const Vector lambda = -in.y();
  return AsymptoticState(-in.x() + delta(lambda, c), lambda, Side::kPlus);
}

AsymptoticState wave_map_R(const PhasePointR& pt, const Couplings& c, Side side, const DualityOptions& opts) {
  const PhasePointS d = dualize_R_to_S(pt, c, opts).point;
  const double s = sign_of(side);
  return AsymptoticState(-s * d.p(), s * d.q(), side);
}

AsymptoticState scattering_map_R(const AsymptoticState& in) {
  if (in.side() != Side::kMinus) fail(ErrorCode::kOrderingViolation, "scattering map expects incoming data");
  return AsymptoticState(-in.x(), -in.y(), Side::kPlus);
}

Vector scattering_map_R(const Vector& xy) { return -xy; }

Vector DeltaDecomposition::total() const { return one_body + two_body.rowwise().sum(); }

DeltaDecomposition decompose_delta(const Vector& lambda, const Couplings& c) {
  require_chamber(lambda, "lambda", ErrorCode::kSingularity);
  const Eigen::Index n = lambda.size();
  const double m4 = 4 * c.mu() * c.mu();
  DeltaDecomposition d;
  d.one_body.resize(n);
  d.two_body = RealMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double l2 = lambda(a) * lambda(a);
    d.one_body(a) = 0.5 * std::log(1 + c.nu() * c.nu() / l2) + 0.5 * std::log(1 + c.kappa() * c.kappa() / l2);
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      const double dm = lambda(a) - lambda(b), dp = lambda(a) + lambda(b);
      const double diff = 0.5 * std::log(1 + m4 / (dm * dm));
      d.two_body(a, b) = (b < a ? -diff : diff) + 0.5 * std::log(1 + m4 / (dp * dp));
    }
  }
  return d;
}

double sutherland_horizon(const Vector& lambda) { return 8.0 / chamber_margin(lambda); }

double rsvd_horizon(const Vector& q) {
  Vector u(q.size());
  for (Eigen::Index a = 0; a < q.size(); ++a) u(a) = 2 * std::sinh(2 * q(a));
  return 20.0 / chamber_margin(u);
}

DecayReport analyze_exponential_decay(const std::vector<double>& times, const std::vector<double>& position_residual,
                                      const std::vector<double>& momentum_residual, double noise_floor) {
  DecayReport r;
  r.model = Model::kSutherland;
  r.times = times;
  r.position_residual = position_residual;
  r.momentum_residual = momentum_residual;
  r.horizon = times.empty() ? 0 : times.front();
  if (times.size() < 8 || position_residual.size() != times.size() || momentum_residual.size() != times.size()) {
    r.reason = "fewer than 8 residual samples";
    return r;
  }
  for (const auto* res : {&position_residual, &momentum_residual}) {
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      const double a = (*res)[k], b = (*res)[k + 1];
      if (!std::isfinite(a) || !std::isfinite(b)) {
        r.reason = "non-finite residual";
        return r;
      }
      if (b > noise_floor && b > a) {
        std::ostringstream os;
        os << "residual grows from " << a << " to " << b << " at t = " << times[k + 1];
        r.reason = os.str();
        return r;
      }
    }
  }
  std::vector<double> sup(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) sup[k] = std::max(position_residual[k], momentum_residual[k]);
  r.rate_estimate = log_rate(times, sup, noise_floor);
  if (!(r.rate_estimate > 0)) {
    r.reason = std::isnan(r.rate_estimate) ? "fewer than 3 residuals above the noise floor"
                                           : "fitted decay rate is not positive";
    return r;
  }
  r.pass = true;
  return r;
}

DecayReport analyze_power_decay(const std::vector<double>& times, const std::vector<double>& lambda_residual,
                                const std::vector<double>& theta_residual, const std::vector<double>& v_residual,
                                double horizon) {
  DecayReport r;
  r.model = Model::kRsvd;
  r.horizon = horizon;
  r.times = times;
  r.position_residual = lambda_residual;
  r.momentum_residual = theta_residual;
  r.v_residual = v_residual;
  int count[2] = {0, 0};
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    for (int w = 0; w < 2; ++w) {
      const double lo = horizon * (w + 1), hi = 4 * lo;
      if (t < lo * (1 - 1e-12) || t > hi * (1 + 1e-12)) continue;
      ++count[w];
      r.lambda_scaled[w] = std::max(r.lambda_scaled[w], t * lambda_residual[k]);
      r.theta_scaled[w] = std::max(r.theta_scaled[w], t * t * theta_residual[k]);
      r.v_scaled[w] = std::max(r.v_scaled[w], t * t * v_residual[k]);
    }
  }
  if (count[0] < 8 || count[1] < 8) {
    r.reason = "fewer than 8 samples in a residual window";
    return r;
  }
  double worst = 1;
  const double* pairs[] = {r.lambda_scaled, r.theta_scaled, r.v_scaled};
  const char* names[] = {"t*|lambda residual|", "t^2*|theta residual|", "t^2*|v - 1|"};
  for (int i = 0; i < 3; ++i) {
    const double a = pairs[i][0], b = pairs[i][1];
    if (!std::isfinite(a) || !std::isfinite(b) || a <= 0 || b <= 0) {
      r.reason = std::string(names[i]) + " is not finite and positive";
      return r;
    }
    const double ratio = std::max(a / b, b / a);
    worst = std::max(worst, ratio);
    if (ratio > 2) {
      std::ostringstream os;
      os << names[i] << " changes by a factor " << ratio << " when the window start doubles";
      r.reason = os.str();
    }
  }
  r.worst_ratio = worst;
  r.pass = r.reason.empty();
  return r;
}

namespace {

DecayReport sutherland_decay_at(const PhasePointR& dual, const Couplings& c, Side side, double T,
                                const DecayOptions& opts) {
  const Vector& lambda = dual.lambda();
  const double s = sign_of(side);
  const Vector x = -s * dual.theta() + 0.5 * delta_phase(lambda, c);
  const Vector y = s * lambda;
  std::vector<double> times(static_cast<std::size_t>(opts.samples)), pos(times.size()), mom(times.size());
  for (int k = 0; k < opts.samples; ++k) {
    const double at = T * (1 + 3.0 * k / (opts.samples - 1));
    const double t = s * at;
    const PhasePointS st = dualize_R_to_S(PhasePointR(lambda, dual.theta() - t * lambda), c, opts.duality).point;
    times[static_cast<std::size_t>(k)] = at;
    pos[static_cast<std::size_t>(k)] = (st.q() - (t * y + x)).cwiseAbs().maxCoeff();
    mom[static_cast<std::size_t>(k)] = (st.p() - y).cwiseAbs().maxCoeff();
  }
  DecayReport r = analyze_exponential_decay(times, pos, mom, opts.noise_floor);
  r.side = side;
  r.horizon = T;
  return r;
}

}  // namespace

DecayReport verify_decay_rates_S(const PhasePointS& pt, const Couplings& c, Side side, const DecayOptions& opts) {
  if (opts.samples < 8) fail(ErrorCode::kInsufficientSamples, "decay check needs at least 8 samples");
  const PhasePointR dual = dualize_S_to_R(pt, c, opts.duality).point;
  if (opts.horizon > 0) return sutherland_decay_at(dual, c, side, opts.horizon, opts);
  // Some residuals decay faster than the gap suggests (one-body terms decay like e^{−4λt}
  // when κ = 0); shorten the horizon until the decay is resolved above the noise floor.
  double T = sutherland_horizon(dual.lambda());
  DecayReport r = sutherland_decay_at(dual, c, side, T, opts);
  for (int k = 0; k < 4 && !r.pass && r.position_residual.front() < 1e3 * opts.noise_floor; ++k) {
    T *= 0.5;
    r = sutherland_decay_at(dual, c, side, T, opts);
  }
  return r;
}

DecayReport verify_decay_rates_R(const PhasePointR& pt, const Couplings& c, Side side, const DecayOptions& opts) {
  const PhasePointS dual = dualize_R_to_S(pt, c, opts.duality).point;
  const double s = sign_of(side);
  const Vector x = -s * dual.p();
  const Vector y = s * dual.q();
  const double T = opts.horizon > 0 ? opts.horizon : rsvd_horizon(dual.q());
  if (opts.samples < 8) fail(ErrorCode::kInsufficientSamples, "decay check needs at least 8 samples");

  // geometric samples over [T, 8T], (samples − 1) per factor of 4
  const int per = opts.samples - 1;
  const int count = per + per / 2 + 1;
  std::vector<double> at(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) at[static_cast<std::size_t>(k)] = T * std::pow(4.0, static_cast<double>(k) / per);
  at.back() = 8 * T;
  std::vector<double> t(at.size());
  for (std::size_t k = 0; k < at.size(); ++k) t[k] = s * at[k];
  if (side == Side::kMinus) std::reverse(t.begin(), t.end());

  SolveOptions so;
  so.duality = opts.duality;
  const Trajectory tr = solve_rsvd(pt, TimeGrid(t), c, so);

  std::vector<double> lres(at.size()), tres(at.size()), vres(at.size());
  for (int i = 0; i < tr.grid.size(); ++i) {
    const double ti = tr.grid[i];
    const std::size_t k = side == Side::kPlus ? static_cast<std::size_t>(i) : at.size() - 1 - static_cast<std::size_t>(i);
    const Vector lam = tr.positions.row(i).transpose();
    const Vector th = tr.momenta.row(i).transpose();
    double lr = 0, vr = 0;
    for (Eigen::Index a = 0; a < lam.size(); ++a) {
      lr = std::max(lr, std::abs(lam(a) - 2 * ti * std::sinh(2 * y(a)) - x(a)));
      vr = std::max(vr, std::abs(v_factor(static_cast<int>(a), lam, c) - 1));
    }
    lres[k] = lr;
    tres[k] = (th - y).cwiseAbs().maxCoeff();
    vres[k] = vr;
  }
  DecayReport r = analyze_power_decay(at, lres, tres, vres, T);
  r.side = side;
  return r;
}

}  // namespace bcdual
