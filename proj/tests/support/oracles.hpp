#pragma once

// Straightforward reference formulas for tests, written without reusing library code.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Real = long double;
using Cx = std::complex<Real>;

inline Real w(Real x) {
  const Real s = std::sinh(x);
  return 1 / (s * s);
}

inline Real hamiltonian_S(const Eigen::VectorXd& q, const Eigen::VectorXd& p, Real mu, Real nu, Real kappa) {
  const Real g2 = mu * mu, g1 = nu * kappa / 2, gg = (nu - kappa) * (nu - kappa) / 2;
  Real h = 0;
  for (int a = 0; a < q.size(); ++a) {
    h += Real(p(a)) * p(a) / 2 + g1 * w(q(a)) + gg * w(2 * Real(q(a)));
    for (int b = a + 1; b < q.size(); ++b) h += g2 * (w(Real(q(a)) - q(b)) + w(Real(q(a)) + q(b)));
  }
  return h;
}

inline Real v_factor(int a, const Eigen::VectorXd& l, Real mu, Real nu, Real kappa) {
  const Real la = l(a);
  Real v = std::sqrt(1 + nu * nu / (la * la)) * std::sqrt(1 + kappa * kappa / (la * la));
  for (int b = 0; b < l.size(); ++b) {
    if (b == a) continue;
    const Real d = la - l(b), s = la + l(b);
    v *= std::sqrt(1 + 4 * mu * mu / (d * d)) * std::sqrt(1 + 4 * mu * mu / (s * s));
  }
  return v;
}

inline Real hamiltonian_R(const Eigen::VectorXd& l, const Eigen::VectorXd& th, Real mu, Real nu, Real kappa) {
  Real h = 0, prod = 1;
  for (int a = 0; a < l.size(); ++a) {
    h += std::cosh(2 * Real(th(a))) * v_factor(a, l, mu, nu, kappa);
    prod *= 1 + 4 * mu * mu / (Real(l(a)) * l(a));
  }
  return h + nu * kappa / (4 * mu * mu) * (prod - 1);
}

// Δ_a(λ) summed term by term.
inline std::vector<Real> delta(const Eigen::VectorXd& l, Real mu, Real nu, Real kappa) {
  const int n = static_cast<int>(l.size());
  std::vector<Real> d(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    const Real la = l(a);
    d[a] += std::log(1 + nu * nu / (la * la)) / 2 + std::log(1 + kappa * kappa / (la * la)) / 2;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      const Real dm = la - l(b), dp = la + l(b);
      const Real pair = std::log(1 + 4 * mu * mu / (dm * dm)) / 2;
      d[a] += (b > a ? pair : -pair) + std::log(1 + 4 * mu * mu / (dp * dp)) / 2;
    }
  }
  return d;
}

inline Cx z_factor(int a, const Eigen::VectorXd& l, Real mu, Real nu) {
  const Cx i(0, 1);
  Cx z = -(Real(1) + i * nu / Real(l(a)));
  for (int b = 0; b < l.size(); ++b)
    if (b != a) z *= (Real(1) + Real(2) * i * mu / Real(l(a) - l(b))) * (Real(1) + Real(2) * i * mu / Real(l(a) + l(b)));
  return z;
}

}  // namespace oracle
