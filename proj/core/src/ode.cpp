#include <algorithm>
#include <cmath>
#include <sstream>

#include "bcdual/dynamics.hpp"
#include "bcdual/laxops.hpp"
#include "ode_detail.hpp"

namespace bcdual {

namespace detail {

Vector sutherland_force(const Vector& q, const Couplings& c) {
  const Eigen::Index n = q.size();
  Vector f(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    double dh = c.g1_sq() * w_potential_prime(q(a)) + 2 * c.g2_sq() * w_potential_prime(2 * q(a));
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      dh += c.g_sq() * (w_potential_prime(q(a) - q(b)) + w_potential_prime(q(a) + q(b)));
    }
    f(a) = -dh;
  }
  return f;
}

Vector rsvd_lambda_gradient(const Vector& lambda, const Vector& theta, const Couplings& c) {
  const Eigen::Index n = lambda.size();
  const double m4 = 4 * c.mu() * c.mu();
  const double nu2 = c.nu() * c.nu(), ka2 = c.kappa() * c.kappa();
  // d/dx of ½ln(1 + m4/x²)
  auto tp = [m4](double x) { return -m4 / (x * (x * x + m4)); };

  Vector grad = Vector::Zero(n);
  double prod = 1;
  for (Eigen::Index a = 0; a < n; ++a) prod *= 1 + m4 / (lambda(a) * lambda(a));
  for (Eigen::Index a = 0; a < n; ++a) {
    const double la = lambda(a);
    const double w = std::cosh(2 * theta(a)) * v_factor(static_cast<int>(a), lambda, c);
    double own = -nu2 / (la * (la * la + nu2));
    if (ka2 > 0) own -= ka2 / (la * (la * la + ka2));
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      const double td = tp(la - lambda(b)), ts = tp(la + lambda(b));
      own += td + ts;
      grad(b) += w * (ts - td);
    }
    grad(a) += w * own;
    grad(a) += c.nu() * c.kappa() / m4 * prod * (-2 * m4 / (la * (la * la + m4)));
  }
  return grad;
}

Vector rsvd_lambda_velocity(const Vector& lambda, const Vector& theta, const Couplings& c) {
  Vector v(lambda.size());
  for (Eigen::Index a = 0; a < lambda.size(); ++a)
    v(a) = 2 * std::sinh(2 * theta(a)) * v_factor(static_cast<int>(a), lambda, c);
  return v;
}

}  // namespace detail

PhaseVelocity ode_rhs_S(const PhasePointS& pt, const Couplings& c) {
  return {pt.p(), detail::sutherland_force(pt.q(), c)};
}

PhaseVelocity ode_rhs_R(const PhasePointR& pt, const Couplings& c) {
  return {detail::rsvd_lambda_velocity(pt.lambda(), pt.theta(), c),
          -detail::rsvd_lambda_gradient(pt.lambda(), pt.theta(), c)};
}

Vector hamiltonian_R_gradient_lambda(const Vector& lambda, const Vector& theta, const Couplings& c) {
  require_chamber(lambda, "lambda");
  return detail::rsvd_lambda_gradient(lambda, theta, c);
}

namespace ode {

namespace {

// Dormand–Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<Vector> integrate(const Rhs& f, double t0, const Vector& y0, const std::vector<double>& targets,
                              const OdeOptions& opts, const StepGuard& guard) {
  std::vector<Vector> out;
  out.reserve(targets.size());
  if (targets.empty()) return out;
  const double dir = targets.back() >= t0 ? 1.0 : -1.0;

  double t = t0;
  Vector y = y0;
  Vector k1 = f(t, y);
  double h = opts.initial_step;
  long count = 0;

  for (double target : targets) {
    if ((target - t) * dir < 0) fail(ErrorCode::kInvalidInput, "ODE targets must move away from the start time");
    while ((target - t) * dir > 0) {
      if (++count > opts.max_steps) throw IntegrationError("step budget exhausted", t);
      bool last = false;
      double hs = std::min(h, std::abs(target - t));
      if (hs >= std::abs(target - t)) last = true;
      const double dt = dir * hs;

      const Vector k2 = f(t + c2 * dt, y + dt * (a21 * k1));
      const Vector k3 = f(t + c3 * dt, y + dt * (a31 * k1 + a32 * k2));
      const Vector k4 = f(t + c4 * dt, y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vector k5 = f(t + c5 * dt, y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vector k6 = f(t + dt, y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vector yn = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const double tn = last ? target : t + dt;
      const Vector k7 = f(tn, yn);
      const Vector err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double en = 0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = opts.atol + opts.rtol * std::max(std::abs(y(i)), std::abs(yn(i)));
        en += (err(i) / sc) * (err(i) / sc);
      }
      en = std::sqrt(en / static_cast<double>(y.size()));

      if (!std::isfinite(en) || !yn.allFinite()) {
        h = hs * 0.2;
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow", t);
        continue;
      }
      const double factor = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (en > 1) {
        h = hs * std::min(factor, 0.9);
        if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow", t);
        continue;
      }
      if (guard && !guard(yn)) {
        std::ostringstream os;
        os << "state left the admissible region after t = " << t;
        throw IntegrationError(os.str(), t);
      }
      t = tn;
      y = yn;
      k1 = k7;
      // a step shortened to hit a target should not shrink the next one
      h = last ? std::max(h, hs * factor) : hs * factor;
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace ode

}  // namespace bcdual
