#include "bcdual/laxops.hpp"

#include <cmath>
#include <sstream>

#include "bcdual/matengine.hpp"
#include "detail/kernels.hpp"

namespace bcdual {

double w_potential(double x) {
  const double s = std::sinh(x);
  return 1.0 / (s * s);
}

double w_potential_prime(double x) {
  const double s = std::sinh(x);
  return -2.0 / (std::tanh(x) * s * s);
}

double hamiltonian_S(const PhasePointS& pt, const Couplings& c) {
  const Vector& q = pt.q();
  const Vector& p = pt.p();
  const Eigen::Index n = q.size();
  double h = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    h += 0.5 * p(a) * p(a) + c.g1_sq() * w_potential(q(a)) + c.g2_sq() * w_potential(2 * q(a));
    for (Eigen::Index b = a + 1; b < n; ++b) h += c.g_sq() * (w_potential(q(a) - q(b)) + w_potential(q(a) + q(b)));
  }
  return h;
}

ComplexMatrix lax_matrix_S(const Vector& q, const Vector& p, const Couplings& c) {
  return detail::lax_S_t<double>(q, p, {c.mu(), c.nu(), c.kappa()});
}

SutherlandLax build_lax_S(const PhasePointS& pt, const Couplings& c) {
  const int n = pt.n();
  SutherlandLax s;
  s.L = lax_matrix_S(pt.q(), pt.p(), c);
  s.A = s.L.topLeftCorner(n, n);
  s.B = s.L.topRightCorner(n, n) + Complex(0, c.kappa()) * ComplexMatrix::Identity(n, n);
  return s;
}

double v_factor(int a, const Vector& lambda, const Couplings& c) {
  const double la = lambda(a);
  const double m4 = 4 * c.mu() * c.mu();
  double v = std::sqrt(1 + c.nu() * c.nu() / (la * la)) * std::sqrt(1 + c.kappa() * c.kappa() / (la * la));
  for (Eigen::Index b = 0; b < lambda.size(); ++b) {
    if (b == a) continue;
    const double d = la - lambda(b), s = la + lambda(b);
    v *= std::sqrt(1 + m4 / (d * d)) * std::sqrt(1 + m4 / (s * s));
  }
  return v;
}

double hamiltonian_R(const PhasePointR& pt, const Couplings& c) {
  const Vector& lam = pt.lambda();
  const double m4 = 4 * c.mu() * c.mu();
  double h = 0, prod = 1;
  for (Eigen::Index a = 0; a < lam.size(); ++a) {
    h += std::cosh(2 * pt.theta()(a)) * v_factor(static_cast<int>(a), lam, c);
    prod *= 1 + m4 / (lam(a) * lam(a));
  }
  return h + c.nu() * c.kappa() / m4 * (prod - 1);
}

ComplexMatrix build_acal(const Vector& lambda, const Vector& theta, const Couplings& c) {
  require_chamber(lambda, "lambda");
  const Eigen::Index n = lambda.size();
  const ComplexVector z = z_factors(lambda, c);
  const Complex i(0, 1);
  const Complex tm = 2.0 * i * c.mu();
  Vector az(n);
  for (Eigen::Index a = 0; a < n; ++a) az(a) = std::abs(z(a));
  ComplexMatrix A(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double la = lambda(a), lb = lambda(b);
      const double sab = std::sqrt(az(a)) * std::sqrt(az(b));
      A(a, b) = std::exp(-theta(a) - theta(b)) * sab * tm / (tm + la - lb);
      A(n + a, n + b) = std::exp(theta(a) + theta(b)) * std::conj(z(a)) * z(b) / sab * tm / (tm - la + lb);
      Complex off = std::exp(-theta(a) + theta(b)) * z(b) * std::sqrt(az(a) / az(b)) * tm / (tm + la + lb);
      if (a == b) off += i * (c.mu() - c.nu()) / (i * c.mu() + la);
      A(a, n + b) = off;
      A(n + b, a) = std::conj(off);
    }
  }
  return A;
}

AcalRoots acal_roots(const Vector& lambda, const Vector& theta, const Couplings& c) {
  const Eigen::Index n = lambda.size();
  // 𝒜 = D K D with K = 𝒜(λ, 0) = R*R and D = diag(e^{−θ}, e^{θ})
  const Eigen::LLT<ComplexMatrix> llt(build_acal(lambda, Vector::Zero(n), c));
  if (llt.info() != Eigen::Success) fail(ErrorCode::kNotPositiveDefinite, "Cholesky factorization of the Lax matrix failed");
  Vector scale(2 * n);
  scale << -theta, theta;
  const mat::GradedSvd svd = mat::graded_svd(llt.matrixU(), scale);
  // only the top half is used: since 𝒜⁻¹ = C𝒜C, the eigenvector of e^{−2q_a}
  // is C times that of e^{2q_a}, which keeps the small directions as accurate as the large ones
  const ComplexMatrix C = build_C(static_cast<int>(n));
  AcalRoots r;
  r.vectors.resize(2 * n, 2 * n);
  r.log_sqrt.resize(2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    r.vectors.col(a) = svd.right.col(a);
    r.vectors.col(2 * n - 1 - a) = C * svd.right.col(a);
    r.log_sqrt(a) = svd.log_sigma(a);
    r.log_sqrt(2 * n - 1 - a) = -svd.log_sigma(a);
  }
  const Vector s = r.log_sqrt.array().exp();
  const Vector si = (-r.log_sqrt).array().exp();
  r.root = r.vectors * s.asDiagonal() * r.vectors.adjoint();
  r.inv_root = r.vectors * si.asDiagonal() * r.vectors.adjoint();
  return r;
}

RsvdLax build_lax_R(const PhasePointR& pt, const Couplings& c) {
  const int n = pt.n();
  RsvdLax r;
  r.acal = build_acal(pt.lambda(), pt.theta(), c);
  const ComplexMatrix hi = build_h_inv(pt.lambda(), c);
  r.abc = hi * r.acal * hi;
  r.abc = (r.abc + r.abc.adjoint()).eval() / 2.0;
  const mat::EigenResult ea = mat::eig_hermitian(r.acal);
  const mat::EigenResult eb = mat::eig_hermitian(r.abc);
  r.min_eigenvalue = std::min(ea.values(2 * n - 1), eb.values(2 * n - 1));
  if (!(r.min_eigenvalue > 0)) {
    std::ostringstream os;
    os << "Lax matrix is not positive definite, smallest eigenvalue " << r.min_eigenvalue;
    fail(ErrorCode::kNotPositiveDefinite, os.str());
  }
  const ComplexVector z = z_factors(pt.lambda(), c);
  r.fvec.resize(2 * n);
  for (int a = 0; a < n; ++a) {
    const double az = std::abs(z(a));
    r.fvec(a) = std::exp(-pt.theta()(a)) * std::sqrt(az);
    r.fvec(n + a) = std::exp(pt.theta()(a)) * std::conj(z(a)) / std::sqrt(az);
  }
  const AcalRoots roots = acal_roots(pt.lambda(), pt.theta(), c);
  r.vvec = roots.inv_root * r.fvec;
  return r;
}

Embedding embed_S(const PhasePointS& pt, const Couplings& c) {
  const int n = pt.n();
  Embedding e;
  e.y = ComplexMatrix::Zero(2 * n, 2 * n);
  e.y_inv = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    e.y(a, a) = std::exp(pt.q()(a));
    e.y(n + a, n + a) = std::exp(-pt.q()(a));
    e.y_inv(a, a) = std::exp(-pt.q()(a));
    e.y_inv(n + a, n + a) = std::exp(pt.q()(a));
  }
  e.Y = build_lax_S(pt, c).L;
  e.rho = build_xi(build_E(n), c);
  return e;
}

Embedding embed_R(const PhasePointR& pt, const Couplings& c) {
  const RsvdLax lax = build_lax_R(pt, c);
  const AcalRoots roots = acal_roots(pt.lambda(), pt.theta(), c);
  const ComplexMatrix h = build_h(pt.lambda(), c);
  const ComplexMatrix hi = build_h_inv(pt.lambda(), c);
  const ComplexMatrix Lam = build_Lambda(pt.lambda());
  Embedding e;
  e.y = roots.root * hi;
  e.y_inv = h * roots.inv_root;
  e.Y = h * Lam * hi;
  e.rho = build_xi(lax.vvec, c);
  // y Y y⁻¹ = 𝒜^{1/2} Λ 𝒜^{-1/2}, assembled in the eigenbasis of 𝒜
  const Vector s = roots.log_sqrt.array().exp();
  const Vector si = (-roots.log_sqrt).array().exp();
  const ComplexMatrix mid = roots.vectors.adjoint() * Lam * roots.vectors;
  e.conjugated = roots.vectors * (s.asDiagonal() * mid * si.asDiagonal()) * roots.vectors.adjoint();
  return e;
}

ComplexMatrix anti_hermitian_part(const ComplexMatrix& m) { return (m - m.adjoint()) / 2.0; }

MomentumResidual momentum_residual(const Embedding& e, const Couplings& c) {
  const int n = static_cast<int>(e.Y.rows() / 2);
  MomentumResidual r;
  const ComplexMatrix conj = e.conjugated.size() ? e.conjugated : ComplexMatrix(e.y * e.Y * e.y_inv);
  r.conjugated = (anti_hermitian_part(conj) + e.rho).norm();
  r.intrinsic = (anti_hermitian_part(e.Y) + Complex(0, c.kappa()) * build_C(n)).norm();
  return r;
}

double momentum_residual_S(const PhasePointS& pt, const Couplings& c) {
  return momentum_residual(embed_S(pt, c), c).value();
}

double momentum_residual_R(const PhasePointR& pt, const Couplings& c) {
  return momentum_residual(embed_R(pt, c), c).value();
}

MinorCheck cauchy_minor_check(const PhasePointR& pt, const Couplings& c, const PhaseShiftFn& delta) {
  const int n = pt.n();
  const Vector& lam = pt.lambda();
  const Vector& th = pt.theta();
  const ComplexMatrix A = build_acal(lam, th, c);
  const double k2 = c.kappa() * c.kappa();

  ComplexMatrix W = ComplexMatrix::Zero(2 * n, 2 * n);
  Vector root(2 * n);
  for (int a = 0; a < n; ++a) {
    W(a, a) = 1;
    W(n + a, 2 * n - 1 - a) = 1;
    root(a) = root(n + a) = std::sqrt(1 + k2 / (lam(a) * lam(a)));
  }
  // the reversal block is an involution, so W⁻¹ = W
  const ComplexMatrix M = W * A * root.asDiagonal() * W;
  const mat::MinorsResult minors = mat::leading_principal_minors(M, n);

  MinorCheck out;
  out.singular = minors.singular;
  out.identity_residual.resize(n);
  out.closed_form_error.resize(n);
  const Vector d = delta(lam, c);
  const ComplexVector z = z_factors(lam, c);
  const double m4 = 4 * c.mu() * c.mu();
  double log_closed = 0;
  Complex prev = 1;
  for (int a = 0; a < n; ++a) {
    log_closed += -2 * th(a) + std::log(std::abs(z(a))) + 0.5 * std::log1p(k2 / (lam(a) * lam(a)));
    for (int b = 0; b < a; ++b) log_closed -= std::log1p(m4 / ((lam(b) - lam(a)) * (lam(b) - lam(a))));
    const Complex det = minors.minors(a);
    out.closed_form_error(a) = std::abs(det - std::exp(log_closed)) / std::abs(det);
    const Complex m = det / prev;
    out.identity_residual(a) = std::log(m.real()) + 2 * th(a) - d(a);
    prev = det;
  }
  return out;
}

}  // namespace bcdual
