#include "bcdual/core.hpp"

#include <cmath>
#include <sstream>

namespace bcdual {

Couplings couplings_from_rsvd(double mu, double nu, double kappa) {
  if (!std::isfinite(mu) || !std::isfinite(nu) || !std::isfinite(kappa))
    fail(ErrorCode::kInvalidParameter, "couplings must be finite");
  if (!(mu < 0)) fail(ErrorCode::kInvalidParameter, "mu must satisfy mu < 0");
  if (!(nu > 0)) fail(ErrorCode::kInvalidParameter, "nu must satisfy nu > 0");
  if (!(kappa >= 0)) fail(ErrorCode::kInvalidParameter, "kappa must satisfy kappa >= 0");
  Couplings c(mu, nu, kappa);
  if (!(c.g_sq() > 0) || !(c.g1_sq() + c.g2_sq() > 0))
    fail(ErrorCode::kInvalidParameter, "derived Sutherland couplings vanish");
  return c;
}

double chamber_margin(const Vector& x) {
  if (x.size() == 0) fail(ErrorCode::kInvalidInput, "empty coordinate vector");
  double m = x(x.size() - 1);
  for (Eigen::Index a = 0; a + 1 < x.size(); ++a) m = std::min(m, x(a) - x(a + 1));
  return m;
}

bool validate_chamber(const Vector& x, double margin) {
  if (x.size() == 0) fail(ErrorCode::kInvalidInput, "empty coordinate vector");
  if (!x.allFinite()) return false;
  return chamber_margin(x) > margin;
}

void require_chamber(const Vector& x, const char* what, ErrorCode code) {
  if (!validate_chamber(x)) {
    std::ostringstream os;
    os.precision(17);
    os << what << " is not in the chamber x1 > ... > xn > 0 (margin " << kChamberMargin << "): [";
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
    os << "]";
    fail(code, os.str());
  }
}

PhasePointS::PhasePointS(Vector q, Vector p) : q_(std::move(q)), p_(std::move(p)) {
  if (q_.size() != p_.size()) fail(ErrorCode::kInvalidInput, "q and p lengths differ");
  require_chamber(q_, "q");
  if (!p_.allFinite()) fail(ErrorCode::kInvalidInput, "p has non-finite entries");
}

PhasePointR::PhasePointR(Vector lambda, Vector theta) : lambda_(std::move(lambda)), theta_(std::move(theta)) {
  if (lambda_.size() != theta_.size()) fail(ErrorCode::kInvalidInput, "lambda and theta lengths differ");
  require_chamber(lambda_, "lambda");
  if (!theta_.allFinite()) fail(ErrorCode::kInvalidInput, "theta has non-finite entries");
}

AsymptoticState::AsymptoticState(Vector x, Vector y, Side side) : x_(std::move(x)), y_(std::move(y)), side_(side) {
  if (x_.size() != y_.size() || x_.size() == 0) fail(ErrorCode::kInvalidInput, "asymptotic state lengths differ or are empty");
  if (!x_.allFinite() || !y_.allFinite()) fail(ErrorCode::kInvalidInput, "asymptotic state has non-finite entries");
  // with side − the negated momenta must lie in the chamber
  const Vector probe = side_ == Side::kPlus ? y_ : Vector(-y_);
  bool ok = probe(probe.size() - 1) > 0;
  for (Eigen::Index a = 0; a + 1 < probe.size(); ++a) ok = ok && probe(a) > probe(a + 1);
  if (!ok) fail(ErrorCode::kOrderingViolation, side_ == Side::kPlus ? "y must satisfy y1 > ... > yn > 0" : "y must satisfy y1 < ... < yn < 0");
}

Vector pack(const Vector& x, const Vector& y) {
  Vector v(x.size() + y.size());
  v << x, y;
  return v;
}
Vector pack(const PhasePointS& pt) { return pack(pt.q(), pt.p()); }
Vector pack(const PhasePointR& pt) { return pack(pt.lambda(), pt.theta()); }

PhasePointS unpack_S(const Vector& v) {
  const Eigen::Index n = v.size() / 2;
  return PhasePointS(v.head(n), v.tail(n));
}
PhasePointR unpack_R(const Vector& v) {
  const Eigen::Index n = v.size() / 2;
  return PhasePointR(v.head(n), v.tail(n));
}

ComplexMatrix build_C(int n) {
  if (n < 1) fail(ErrorCode::kInvalidInput, "n must be at least 1");
  ComplexMatrix C = ComplexMatrix::Zero(2 * n, 2 * n);
  C.topRightCorner(n, n).setIdentity();
  C.bottomLeftCorner(n, n).setIdentity();
  return C;
}

ComplexVector build_E(int n) {
  if (n < 1) fail(ErrorCode::kInvalidInput, "n must be at least 1");
  ComplexVector E(2 * n);
  E.head(n).setConstant(1.0);
  E.tail(n).setConstant(-1.0);
  return E;
}

ComplexMatrix build_xi(const ComplexVector& V, const Couplings& c) {
  if (V.size() == 0 || V.size() % 2) fail(ErrorCode::kInvalidInput, "xi needs a vector of even length 2n");
  const int N = static_cast<int>(V.size());
  const Complex i(0, 1);
  return i * c.mu() * (V * V.adjoint() - ComplexMatrix::Identity(N, N)) + i * (c.mu() - c.nu()) * build_C(N / 2);
}

static ComplexMatrix diag_pm(const Vector& x) {
  const Eigen::Index n = x.size();
  ComplexMatrix D = ComplexMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    D(a, a) = x(a);
    D(n + a, n + a) = -x(a);
  }
  return D;
}

ComplexMatrix build_Q(const Vector& q) { return diag_pm(q); }
ComplexMatrix build_Lambda(const Vector& lambda) { return diag_pm(lambda); }

Complex z_factor(int a, const Vector& lambda, const Couplings& c) {
  const int n = static_cast<int>(lambda.size());
  if (a < 0 || a >= n) fail(ErrorCode::kInvalidInput, "z_factor index out of range");
  if (!validate_chamber(lambda)) fail(ErrorCode::kSingularity, "z_factor needs lambda in the chamber");
  const Complex i(0, 1);
  const double mu = c.mu();
  Complex z = -(1.0 + i * c.nu() / lambda(a));
  for (int b = 0; b < n; ++b) {
    if (b == a) continue;
    z *= (1.0 + 2.0 * i * mu / (lambda(a) - lambda(b))) * (1.0 + 2.0 * i * mu / (lambda(a) + lambda(b)));
  }
  return z;
}

ComplexVector z_factors(const Vector& lambda, const Couplings& c) {
  ComplexVector z(lambda.size());
  for (Eigen::Index a = 0; a < lambda.size(); ++a) z(a) = z_factor(static_cast<int>(a), lambda, c);
  return z;
}

AlphaBeta alpha_beta(double x, double kappa) {
  if (!(x > 0)) fail(ErrorCode::kDomain, "alpha_beta needs x > 0");
  const double s = std::sqrt(x + std::hypot(x, kappa));
  const double r = std::sqrt(2.0 * x);
  return {s / r, Complex(0.0, kappa / (r * s))};
}

ComplexMatrix build_h(const Vector& lambda, const Couplings& c) {
  require_chamber(lambda, "lambda");
  const Eigen::Index n = lambda.size();
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const AlphaBeta ab = alpha_beta(lambda(a), c.kappa());
    h(a, a) = ab.alpha;
    h(n + a, n + a) = ab.alpha;
    h(a, n + a) = ab.beta;
    h(n + a, a) = -ab.beta;
  }
  return h;
}

ComplexMatrix build_h_inv(const Vector& lambda, const Couplings& c) {
  require_chamber(lambda, "lambda");
  const Eigen::Index n = lambda.size();
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const AlphaBeta ab = alpha_beta(lambda(a), c.kappa());
    h(a, a) = ab.alpha;
    h(n + a, n + a) = ab.alpha;
    h(a, n + a) = -ab.beta;
    h(n + a, a) = ab.beta;
  }
  return h;
}

ComplexMatrix h_inv_sq_closed_form(const Vector& lambda, const Couplings& c) {
  require_chamber(lambda, "lambda");
  const Eigen::Index n = lambda.size();
  const double k = c.kappa();
  ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double d = std::sqrt(1.0 + k * k / (lambda(a) * lambda(a)));
    m(a, a) = d;
    m(n + a, n + a) = d;
    // iκ C Λ⁻¹ : column a carries 1/λ_a, column n+a carries −1/λ_a
    m(n + a, a) = Complex(0, k / lambda(a));
    m(a, n + a) = Complex(0, -k / lambda(a));
  }
  return m;
}

Vector delta_phase(const Vector& lambda, const Couplings& c) {
  if (!validate_chamber(lambda)) fail(ErrorCode::kSingularity, "delta_phase needs lambda in the chamber");
  const Eigen::Index n = lambda.size();
  const double m4 = 4.0 * c.mu() * c.mu();
  const double nu2 = c.nu() * c.nu(), k2 = c.kappa() * c.kappa();
  Vector d(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const double la = lambda(a);
    double s = 0.5 * std::log1p(nu2 / (la * la)) + 0.5 * std::log1p(k2 / (la * la));
    for (Eigen::Index b = 0; b < n; ++b) {
      if (b == a) continue;
      const double dm = la - lambda(b), dp = la + lambda(b);
      const double pair = 0.5 * std::log1p(m4 / (dm * dm));
      s += b < a ? -pair : pair;
      s += 0.5 * std::log1p(m4 / (dp * dp));
    }
    d(a) = s;
  }
  return d;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool in_group_G(const ComplexMatrix& y, double tol) {
  const ComplexMatrix C = build_C(static_cast<int>(y.rows() / 2));
  return (y.adjoint() * C * y - C).norm() <= tol * std::max(1.0, y.squaredNorm());
}

bool in_algebra_g(const ComplexMatrix& Y, double tol) {
  const ComplexMatrix C = build_C(static_cast<int>(Y.rows() / 2));
  return (Y.adjoint() * C + C * Y).norm() <= tol * std::max(1.0, Y.norm());
}

}  // namespace bcdual
