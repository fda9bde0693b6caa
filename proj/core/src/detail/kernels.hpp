#pragma once

// Precision-generic kernels shared by the double and extended code paths.
// Real is double, long double or quad.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "bcdual/errors.hpp"

namespace bcdual::detail {

template <class Real>
using CMat = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using CVec = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <class Real>
Real sq_abs(const std::complex<Real>& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

template <class Real>
Real col_sq_norm(const CMat<Real>& m, Eigen::Index j) {
  Real s = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s += sq_abs(m(i, j));
  return s;
}

template <class Real>
struct GradedSvdT {
  std::vector<Real> log_sigma;
  CMat<Real> left, right;
  int sweeps = 0;
};

// One-sided Jacobi on the columns of B·diag(exp(s)). Each column is kept as a
// unit vector times exp(scale) so that no exponent range limits the grading.
template <class Real>
GradedSvdT<Real> graded_svd_t(CMat<Real> u, std::vector<Real> scale) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::sqrt;
  const Eigen::Index N = u.cols();
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (!(sq_abs(u(i)) < std::numeric_limits<Real>::infinity()))
      fail(ErrorCode::kConvergence, "non-finite input to one-sided Jacobi");
  auto renormalize = [&](Eigen::Index j) {
    const Real nrm = sqrt(col_sq_norm<Real>(u, j));
    if (nrm > 0) {
      u.col(j) /= nrm;
      scale[j] += log(nrm);
    }
  };
  for (Eigen::Index j = 0; j < N; ++j) {
    renormalize(j);
    if (col_sq_norm<Real>(u, j) == 0) fail(ErrorCode::kConvergence, "zero column in one-sided Jacobi");
  }

  CMat<Real> w = CMat<Real>::Identity(N, N);
  const Real tol = std::numeric_limits<Real>::epsilon() * Real(std::max<Eigen::Index>(N, 4));
  int sweep = 0;
  for (; sweep < 80; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < N; ++i) {
      for (Eigen::Index j = i + 1; j < N; ++j) {
        const Real ai = col_sq_norm<Real>(u, i), aj = col_sq_norm<Real>(u, j);
        const std::complex<Real> g = u.col(i).dot(u.col(j));
        const Real ag = sqrt(sq_abs(g));
        if (ag <= tol * sqrt(ai) * sqrt(aj)) continue;
        const Real d = scale[j] - scale[i];
        const Real r = exp(-abs(d));
        // zr = ζ·r with ζ = (b − a)/(2|c|) of the true Gram matrix
        const Real num = d >= 0 ? aj - r * r * ai : r * r * aj - ai;
        const Real zr = num / (2 * ag);
        const Real den = abs(zr) + sqrt(r * r + zr * zr);
        if (den == 0) continue;
        const Real tr = (zr >= 0 ? Real(1) : Real(-1)) / den;  // t·e^{|d|}
        const Real t = tr * r;
        const Real cs = 1 / sqrt(1 + t * t), sn = cs * t;
        // k_up = sn·e^{d}, k_dn = sn·e^{−d}, both bounded
        const Real k_up = d >= 0 ? cs * tr : sn * r;
        const Real k_dn = d >= 0 ? sn * r : cs * tr;
        if (k_up == 0 && k_dn == 0) continue;
        rotated = true;
        const std::complex<Real> ph = g / ag;
        for (Eigen::Index row = 0; row < u.rows(); ++row) {
          const std::complex<Real> ui = u(row, i), uj = u(row, j);
          u(row, i) = cs * ui - k_up * std::conj(ph) * uj;
          u(row, j) = k_dn * ph * ui + cs * uj;
        }
        for (Eigen::Index row = 0; row < N; ++row) {
          const std::complex<Real> wi = w(row, i), wj = w(row, j);
          w(row, i) = cs * wi - sn * std::conj(ph) * wj;
          w(row, j) = sn * ph * wi + cs * wj;
        }
        renormalize(i);
        renormalize(j);
      }
    }
    if (!rotated) break;
  }
  if (sweep == 80) fail(ErrorCode::kConvergence, "one-sided Jacobi did not converge");

  std::vector<Eigen::Index> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return scale[x] > scale[y]; });

  GradedSvdT<Real> out;
  out.sweeps = sweep + 1;
  out.log_sigma.resize(N);
  out.left.resize(u.rows(), N);
  out.right.resize(N, N);
  for (Eigen::Index k = 0; k < N; ++k) {
    const Eigen::Index j = order[k];
    out.log_sigma[k] = scale[j];
    out.left.col(k) = u.col(j);
    out.right.col(k) = w.col(j);
  }
  return out;
}

// Scaling and squaring with a Taylor core.
template <class Real>
CMat<Real> expm_t(const CMat<Real>& m) {
  using std::ceil;
  using std::log2;
  const Eigen::Index N = m.rows();
  Real norm1 = 0;
  for (Eigen::Index j = 0; j < N; ++j) {
    Real s = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
      using std::sqrt;
      s += sqrt(sq_abs(m(i, j)));
    }
    norm1 = std::max(norm1, s);
  }
  int squarings = 0;
  if (norm1 > Real(0.25)) squarings = static_cast<int>(ceil(log2(static_cast<double>(norm1 / Real(0.25)))));
  Real scale = 1;
  for (int k = 0; k < squarings; ++k) scale *= 2;
  const CMat<Real> a = m / scale;
  CMat<Real> result = CMat<Real>::Identity(N, N);
  CMat<Real> term = CMat<Real>::Identity(N, N);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int k = 1; k < 60; ++k) {
    term = (term * a) / Real(k);
    result += term;
    Real tn = 0;
    for (Eigen::Index i = 0; i < term.size(); ++i) tn = std::max(tn, sq_abs(term(i)));
    if (tn < eps * eps * Real(1e-4)) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

template <class Real>
struct CouplingsT {
  Real mu, nu, kappa;
};

// Sutherland Lax matrix L(q, p).
template <class Real>
CMat<Real> lax_S_t(const RVec<Real>& q, const RVec<Real>& p, const CouplingsT<Real>& c) {
  using std::sinh;
  using std::tanh;
  const Eigen::Index n = q.size();
  const std::complex<Real> i(0, 1);
  CMat<Real> L = CMat<Real>::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      std::complex<Real> A, B;
      if (a == b) {
        A = p(a);
        // (ν + κ cosh 2q)/sinh 2q, written so that large q does not overflow
        B = i * (c.kappa / tanh(2 * q(a)) + c.nu / sinh(2 * q(a)));
      } else {
        A = -i * c.mu / sinh(q(a) - q(b));
        B = i * c.mu / sinh(q(a) + q(b));
      }
      L(a, b) = A;
      L(a, n + b) = B;
      L(n + a, b) = -B;
      L(n + a, n + b) = -A;
    }
    L(a, n + a) -= i * c.kappa;
    L(n + a, a) -= i * c.kappa;
  }
  return L;
}

// One step of the exact spectral flow: given the state at time t, returns the
// state at t + dt from the singular values of e^{Q} e^{dt L}.
template <class Real>
void flow_step_S(RVec<Real>& q, RVec<Real>& p, Real dt, const CouplingsT<Real>& c) {
  using std::real;
  const Eigen::Index n = q.size();
  const CMat<Real> L = lax_S_t<Real>(q, p, c);
  const CMat<Real> E = expm_t<Real>(CMat<Real>(dt * L));
  std::vector<Real> scale(2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    scale[a] = q(a);
    scale[n + a] = -q(a);
  }
  // G = e^{Q} E; the columns of G* carry the row scales of G
  const GradedSvdT<Real> svd = graded_svd_t<Real>(E.adjoint(), scale);
  for (Eigen::Index a = 0; a < n; ++a) {
    q(a) = svd.log_sigma[a];
    const CVec<Real> v = svd.left.col(a);
    p(a) = (v.adjoint() * L * v)(0, 0).real();
  }
}

}  // namespace bcdual::detail
