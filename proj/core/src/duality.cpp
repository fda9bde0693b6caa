#include "bcdual/duality.hpp"

#include <cmath>
#include <sstream>

#include "bcdual/laxops.hpp"
#include "detail/extended.hpp"
#include "detail/kernels.hpp"

namespace bcdual {

namespace {

struct PairSvd {
  Eigen::Matrix2cd u, v;
  double log_sigma = 0;  // of the larger singular value; the smaller is its inverse
};

// SVD of diag(e^{−θ}, e^{θ})·[[α, −β], [β, α]], a matrix of unit determinant.
PairSvd pair_svd(double theta, double alpha, Complex beta) {
  const double shift = std::abs(theta);
  Eigen::Matrix2cd b;
  const double top = std::exp(-theta - shift), bottom = std::exp(theta - shift);
  b << top * alpha, -top * beta, bottom * beta, bottom * alpha;

  const Eigen::Matrix2cd h = b.adjoint() * b;
  const double tau = h(0, 0).real() + h(1, 1).real();
  const double det = std::exp(-4 * shift);
  const double big = tau / 2 + std::sqrt(std::max(0.0, tau * tau / 4 - det));
  const Complex off = h(0, 1);
  Eigen::Vector2cd v1(off, big - h(0, 0).real());
  Eigen::Vector2cd v2(big - h(1, 1).real(), std::conj(off));
  Eigen::Vector2cd v = v1.norm() > v2.norm() ? v1 : v2;
  if (v.norm() == 0) v = Eigen::Vector2cd(1, 0);
  v.normalize();
  const Eigen::Vector2cd w(-std::conj(v(1)), std::conj(v(0)));

  Eigen::Matrix2cd adj;
  adj << b(1, 1), -b(0, 1), -b(1, 0), b(0, 0);
  const double s = std::sqrt(big);
  PairSvd r;
  r.u.col(0) = b * v / s;
  // the small left vector comes from B⁻* = adj(B)*, which avoids cancellation
  r.u.col(1) = adj.adjoint() * w / s;
  r.v.col(0) = v;
  r.v.col(1) = w;
  r.log_sigma = shift + 0.5 * std::log(big);
  return r;
}

RawInverse graded_inverse(const Vector& lambda, const Vector& theta, const Couplings& c) {
  const Eigen::Index n = lambda.size(), N = 2 * n;
  const ComplexMatrix K = build_acal(lambda, Vector::Zero(n), c);
  const Eigen::LLT<ComplexMatrix> llt(K);
  if (llt.info() != Eigen::Success) fail(ErrorCode::kNotPositiveDefinite, "Cholesky factorization of the Lax matrix failed");
  const ComplexMatrix R = llt.matrixU();

  ComplexMatrix U = ComplexMatrix::Zero(N, N), V = ComplexMatrix::Zero(N, N);
  Vector log_scale(N);
  for (Eigen::Index a = 0; a < n; ++a) {
    const AlphaBeta ab = alpha_beta(lambda(a), c.kappa());
    const PairSvd ps = pair_svd(theta(a), ab.alpha, ab.beta);
    const Eigen::Index idx[2] = {a, n + a};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        U(idx[i], idx[j]) = ps.u(i, j);
        V(idx[i], idx[j]) = ps.v(i, j);
      }
    log_scale(a) = ps.log_sigma;
    log_scale(n + a) = -ps.log_sigma;
  }
  const mat::GradedSvd svd = mat::graded_svd(R * U, log_scale);
  const ComplexMatrix vecs = V * svd.right;
  const ComplexMatrix Y = build_h(lambda, c) * build_Lambda(lambda) * build_h_inv(lambda, c);

  RawInverse out;
  out.q = svd.log_sigma.head(n);
  out.p.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Complex e = vecs.col(a).dot(Y * vecs.col(a));
    out.p(a) = e.real();
    out.imag = std::max(out.imag, std::abs(e.imag()));
  }
  double inv = 0;
  bool finite = true;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lo = svd.log_sigma(N - 1 - k);
    if (!std::isfinite(lo)) finite = false;
    inv = std::max(inv, std::abs(svd.log_sigma(k) + lo) / std::max(1.0, std::abs(svd.log_sigma(k))));
  }
  if (finite) out.inversion = inv;
  return out;
}

RawInverse direct_inverse(const Vector& lambda, const Vector& theta, const Couplings& c) {
  const Eigen::Index n = lambda.size(), N = 2 * n;
  const ComplexMatrix hi = build_h_inv(lambda, c);
  ComplexMatrix abc = hi * build_acal(lambda, theta, c) * hi;
  abc = (abc + abc.adjoint()).eval() / 2.0;
  const mat::EigenResult e = mat::eig_hermitian(abc);
  if (!(e.values(N - 1) > 0)) fail(ErrorCode::kNotPositiveDefinite, "dual Lax matrix lost positive definiteness");
  const ComplexMatrix Y = build_h(lambda, c) * build_Lambda(lambda) * hi;
  RawInverse out;
  out.q.resize(n);
  out.p.resize(n);
  double inv = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    out.q(a) = 0.5 * std::log(e.values(a));
    const Complex v = e.vectors.col(a).dot(Y * e.vectors.col(a));
    out.p(a) = v.real();
    out.imag = std::max(out.imag, std::abs(v.imag()));
    inv = std::max(inv, std::abs(std::log(e.values(a)) + std::log(e.values(N - 1 - a))) /
                            std::max(1.0, std::abs(std::log(e.values(a)))));
  }
  out.inversion = inv;
  return out;
}

double imag_tolerance(const Vector& lambda) { return 1e-9 * std::max(1.0, lambda(0)); }

}  // namespace

RawInverse inverse_map_raw(const Vector& lambda, const Vector& theta, const Couplings& c, InverseMethod method) {
  if (lambda.size() != theta.size()) fail(ErrorCode::kInvalidInput, "lambda and theta lengths differ");
  return method == InverseMethod::kGraded ? graded_inverse(lambda, theta, c) : direct_inverse(lambda, theta, c);
}

DualityResult<PhasePointS> dualize_R_to_S(const PhasePointR& pt, const Couplings& c, const DualityOptions& opts) {
  const RawInverse r = inverse_map_raw(pt.lambda(), pt.theta(), c, opts.inverse);
  if (r.imag > imag_tolerance(pt.lambda())) {
    std::ostringstream os;
    os << "momentum quadratic form has imaginary part " << r.imag;
    fail(ErrorCode::kImaginaryResidual, os.str());
  }
  if (std::isfinite(r.inversion) && r.inversion > 1e-6)
    fail(ErrorCode::kSpectrumSymmetry, "spectrum of the dual Lax matrix is not inversion-symmetric");
  require_chamber(r.q, "recovered q");
  DualityDiagnostics d;
  d.imag_residual = r.imag;
  d.inversion_residual = r.inversion;
  return {PhasePointS(r.q, r.p), d};
}

Vector action_variables(const PhasePointS& pt, const Couplings& c, const mat::PrecisionConfig& prec, double* imag_max) {
  const mat::EigenResult e = mat::eig_general_real_spectrum(lax_matrix_S(pt.q(), pt.p(), c), prec, true);
  if (imag_max) *imag_max = e.imag_max;
  Vector lambda = e.values.head(pt.n());
  require_chamber(lambda, "spectrum of L");
  return lambda;
}

namespace {

struct SeedPlan {
  double T;
  int steps;
};

SeedPlan plan_seed(const Vector& lambda, const DualityOptions& opts, double factor) {
  const double gmin = chamber_margin(lambda);
  double T = factor * opts.seed_gap_product / gmin;
  // each step should keep |dt·λ| near 1.5 so that e^{dt L} stays well conditioned
  int steps = static_cast<int>(std::ceil(T * lambda(0) / 1.5));
  const int cap = static_cast<int>(factor * opts.max_seed_steps);
  if (steps > cap) {
    steps = cap;
    T = steps * 1.5 / lambda(0);
  }
  return {T, std::max(steps, 1)};
}

}  // namespace

SeedResult asymptotic_seed(const PhasePointS& pt, const Vector& lambda, const Couplings& c, const DualityOptions& opts) {
  const SeedPlan plan = plan_seed(lambda, opts, 1.0);
  Vector q = pt.q(), p = pt.p();
  const detail::CouplingsT<double> cc{c.mu(), c.nu(), c.kappa()};
  const double dt = plan.T / plan.steps;
  for (int k = 0; k < plan.steps; ++k) detail::flow_step_S<double>(q, p, dt, cc);
  SeedResult s;
  s.time = plan.T;
  s.steps = plan.steps;
  s.theta = plan.T * lambda + 0.5 * delta_phase(lambda, c) - q;
  return s;
}

DualityResult<PhasePointR> dualize_S_to_R(const PhasePointS& pt, const Couplings& c, const DualityOptions& opts) {
  DualityDiagnostics d;
  const Vector lambda = action_variables(pt, c, opts.precision, &d.spectrum_imag_max);
  const Eigen::Index n = lambda.size();
  const Vector target = pack(pt);
  // q and p parts are weighted separately so that huge momenta do not loosen q
  Vector weight(2 * n);
  weight.head(n).setConstant(1.0 / std::max(1.0, pt.q().cwiseAbs().maxCoeff()));
  weight.tail(n).setConstant(1.0 / std::max(1.0, pt.p().cwiseAbs().maxCoeff()));
  const double tol = opts.tol;

  Vector theta;
  Vector seed;
  if (opts.warm_start) {
    if (opts.warm_start->size() != n) fail(ErrorCode::kInvalidInput, "warm start has the wrong length");
    theta = *opts.warm_start;
  } else {
    const SeedResult s = asymptotic_seed(pt, lambda, c, opts);
    theta = s.theta;
    seed = s.theta;
    d.seed_time = s.time;
  }

  auto residual = [&](const Vector& th) -> Vector {
    const RawInverse r = inverse_map_raw(lambda, th, c, opts.inverse);
    return Vector((pack(r.q, r.p) - target).cwiseProduct(weight));
  };
  auto safe_norm = [&](const Vector& th, Vector* out) {
    try {
      Vector f = residual(th);
      if (!f.allFinite()) return std::numeric_limits<double>::infinity();
      if (out) *out = f;
      return f.cwiseAbs().maxCoeff();
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  Vector f;
  double norm = safe_norm(theta, &f);
  if (!std::isfinite(norm)) fail(ErrorCode::kSeedFailure, "inverse map failed at the asymptotic seed");

  RealMatrix J;
  int iters = 0;
  while (norm > tol) {
    if (iters == opts.max_iters) {
      std::ostringstream os;
      os << "Newton polish did not converge in " << opts.max_iters << " iterations (residual " << norm << ")";
      fail(ErrorCode::kNewtonFailure, os.str());
    }
    ++iters;
    J = mat::finite_diff_jacobian(residual, theta);
    const Vector step = J.colPivHouseholderQr().solve(-f);
    double alpha = 1;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, alpha *= 0.5) {
      Vector ft;
      const double nt = safe_norm(theta + alpha * step, &ft);
      if (nt < norm) {
        theta += alpha * step;
        f = ft;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream os;
      os << "Newton line search stalled at residual " << norm;
      fail(ErrorCode::kNewtonFailure, os.str());
    }
  }
  // one chord step with the last Jacobian pushes the residual to the noise floor
  if (J.size()) {
    const Vector step = J.colPivHouseholderQr().solve(-f);
    Vector ft;
    const double nt = safe_norm(theta + step, &ft);
    if (nt < norm) {
      theta += step;
      norm = nt;
    }
  }
  d.newton_iters = iters;
  d.roundtrip_residual = norm;
  if (seed.size()) {
    d.seed_error = (seed - theta).cwiseAbs().maxCoeff();
    if (d.seed_error > 0.5) fail(ErrorCode::kSeedFailure, "asymptotic seed error above 0.5");
  }

  if (opts.extended_seed_check) {
    const int bits = opts.precision.is_extended() ? opts.precision.bits : 128;
    const SeedPlan plan = plan_seed(lambda, opts, 2.0);
    const Vector qT = detail::march_positions_ext(detail::tier_for_bits(bits), pt.q(), pt.p(), c.mu(), c.nu(),
                                                  c.kappa(), plan.T, plan.steps);
    const Vector th_ext = plan.T * lambda + 0.5 * delta_phase(lambda, c) - qT;
    d.extended_seed_gap = (th_ext - theta).cwiseAbs().maxCoeff();
    if (d.extended_seed_gap > 1e-8) {
      std::ostringstream os;
      os << "extended-precision seed disagrees with the polished angles by " << d.extended_seed_gap;
      fail(ErrorCode::kSeedFailure, os.str());
    }
  }
  return {PhasePointR(lambda, theta), d};
}

double symplecticity_certificate(const mat::VectorMap& map, const Vector& x, double step) {
  const RealMatrix J = mat::finite_diff_jacobian(map, x, step);
  const Eigen::Index m = x.size(), n = m / 2;
  if (J.rows() != m || m % 2) fail(ErrorCode::kInvalidInput, "symplectic certificate needs a map on R^2n");
  RealMatrix omega = RealMatrix::Zero(m, m);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return (J.transpose() * omega * J - omega).norm();
}

}  // namespace bcdual
