#include "bcdual/matengine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "detail/eigen_impl.hpp"
#include "detail/extended.hpp"
#include "detail/kernels.hpp"

namespace bcdual::mat {

PrecisionConfig PrecisionConfig::double_precision() { return {}; }

PrecisionConfig PrecisionConfig::extended(int bits) {
  if (bits < 64) fail(ErrorCode::kInvalidParameter, "extended precision needs at least 64 bits");
  detail::tier_for_bits(bits);
  PrecisionConfig p;
  p.mode = Mode::kExtended;
  p.bits = bits;
  return p;
}

PrecisionConfig PrecisionConfig::parse(const std::string& text) {
  if (text == "double") return double_precision();
  const std::string prefix = "extended:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      fail(ErrorCode::kInvalidParameter, "precision must be double or extended:<bits>");
    return extended(std::stoi(digits));
  }
  fail(ErrorCode::kInvalidParameter, "precision must be double or extended:<bits>");
}

std::string PrecisionConfig::to_string() const {
  return mode == Mode::kDouble ? "double" : "extended:" + std::to_string(bits);
}

namespace {

double scale_of(const ComplexMatrix& m) { return std::max(m.norm(), std::numeric_limits<double>::min()); }

void normalize_phase(ComplexMatrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    Eigen::Index best = 0;
    double mag = -1;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      // ties go to the lowest index so the choice is reproducible
      const double a = std::abs(v(i, k));
      if (a > mag * (1 + 1e-12)) {
        mag = a;
        best = i;
      }
    }
    v.col(k).normalize();
    if (mag > 0) v.col(k) *= std::conj(v(best, k)) / std::abs(v(best, k));
  }
}

bool lex_less(const ComplexMatrix& v, Eigen::Index x, Eigen::Index y) {
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (v(i, x).real() != v(i, y).real()) return v(i, x).real() < v(i, y).real();
    if (v(i, x).imag() != v(i, y).imag()) return v(i, x).imag() < v(i, y).imag();
  }
  return x < y;
}

EigenResult sort_descending(const Vector& values, const ComplexMatrix& vectors) {
  const Eigen::Index N = values.size();
  const double vmax = N ? values.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Eigen::Index> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (std::abs(values(x) - values(y)) <= 1e-12 * vmax) return lex_less(vectors, x, y);
    return values(x) > values(y);
  });
  EigenResult r;
  r.values.resize(N);
  r.vectors.resize(vectors.rows(), N);
  for (Eigen::Index k = 0; k < N; ++k) {
    r.values(k) = values(order[k]);
    r.vectors.col(k) = vectors.col(order[k]);
  }
  return r;
}

}  // namespace

EigenResult eig_hermitian(const ComplexMatrix& m, const PrecisionConfig& prec) {
  if (m.rows() != m.cols() || m.rows() == 0) fail(ErrorCode::kInvalidInput, "eig_hermitian needs a non-empty square matrix");
  if (!m.allFinite()) fail(ErrorCode::kInvalidInput, "matrix has non-finite entries");
  const double s = scale_of(m);
  if ((m - m.adjoint()).norm() > prec.tol_residual * s) fail(ErrorCode::kNotHermitian, "matrix is not Hermitian");

  Vector values;
  ComplexMatrix vectors;
  if (prec.is_extended())
    detail::hermitian_spectrum_ext(detail::tier_for_bits(prec.bits), m, values, vectors);
  else
    detail::hermitian_spectrum<double>(m, values, vectors);
  normalize_phase(vectors);
  EigenResult r = sort_descending(values, vectors);
  for (Eigen::Index k = 0; k < r.values.size(); ++k)
    r.residual = std::max(r.residual, (m * r.vectors.col(k) - r.values(k) * r.vectors.col(k)).norm() / s);
  if (r.residual > prec.tol_residual) fail(ErrorCode::kConvergence, "Hermitian eigen residual above tolerance");
  return r;
}

EigenResult eig_general_real_spectrum(const ComplexMatrix& m, const PrecisionConfig& prec, bool check_pairing) {
  if (m.rows() != m.cols() || m.rows() == 0) fail(ErrorCode::kInvalidInput, "eigensolver needs a non-empty square matrix");
  if (!m.allFinite()) fail(ErrorCode::kInvalidInput, "matrix has non-finite entries");
  const double s = scale_of(m);
  ComplexVector cvals;
  ComplexMatrix vectors;
  if (prec.is_extended())
    detail::general_spectrum_ext(detail::tier_for_bits(prec.bits), m, cvals, vectors);
  else
    detail::general_spectrum<double>(m, cvals, vectors);

  double imag_max = 0, residual = 0;
  for (Eigen::Index k = 0; k < cvals.size(); ++k) {
    imag_max = std::max(imag_max, std::abs(cvals(k).imag()));
    vectors.col(k).normalize();
    residual = std::max(residual, (m * vectors.col(k) - cvals(k) * vectors.col(k)).norm() / s);
  }
  if (imag_max > prec.tol_imag * s) {
    std::ostringstream os;
    os << "spectrum has imaginary parts up to " << imag_max << " (scale " << s << ")";
    fail(ErrorCode::kSpectrumNotReal, os.str());
  }
  normalize_phase(vectors);
  EigenResult r = sort_descending(cvals.real(), vectors);
  r.residual = residual;
  r.imag_max = imag_max;
  if (residual > prec.tol_residual) fail(ErrorCode::kConvergence, "eigen residual above tolerance");
  if (check_pairing) {
    const Eigen::Index N = r.values.size();
    double pr = 0;
    for (Eigen::Index k = 0; k < N; ++k) pr = std::max(pr, std::abs(r.values(k) + r.values(N - 1 - k)));
    r.pairing_residual = pr / s;
    if (r.pairing_residual > prec.tol_imag) fail(ErrorCode::kSpectrumSymmetry, "spectrum is not symmetric under negation");
  }
  return r;
}

static ComplexMatrix posdef_power(const ComplexMatrix& m, const PrecisionConfig& prec, double power) {
  const EigenResult e = eig_hermitian(m, prec);
  const double lmin = e.values(e.values.size() - 1);
  if (!(lmin > 0)) {
    std::ostringstream os;
    os << "matrix is not positive definite (smallest eigenvalue " << lmin << ")";
    fail(ErrorCode::kNotPositiveDefinite, os.str());
  }
  Vector d(e.values.size());
  for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = std::pow(e.values(k), power);
  ComplexMatrix out = e.vectors * d.asDiagonal() * e.vectors.adjoint();
  return (out + out.adjoint()) / 2.0;
}

ComplexMatrix sqrt_posdef(const ComplexMatrix& m, const PrecisionConfig& prec) { return posdef_power(m, prec, 0.5); }
ComplexMatrix inv_sqrt_posdef(const ComplexMatrix& m, const PrecisionConfig& prec) { return posdef_power(m, prec, -0.5); }

MinorsResult leading_principal_minors(const ComplexMatrix& m, int k_max) {
  if (m.rows() != m.cols()) fail(ErrorCode::kInvalidInput, "minors need a square matrix");
  if (k_max < 0 || k_max > m.rows()) fail(ErrorCode::kInvalidInput, "k_max exceeds the matrix size");
  MinorsResult r;
  r.minors.resize(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const Eigen::FullPivLU<ComplexMatrix> lu(m.topLeftCorner(k, k));
    Complex d = lu.isInvertible() ? lu.determinant() : Complex(0);
    if (d == Complex(0)) {
      d = 0;
      if (!r.singular) r.first_singular = k - 1;
      r.singular = true;
    }
    r.minors(k - 1) = d;
  }
  return r;
}

RealMatrix finite_diff_jacobian(const VectorMap& f, const Vector& x, double step) {
  const Eigen::Index m = x.size();
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  RealMatrix J;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double h = step > 0 ? step : base * std::max(1.0, std::abs(x(j)));
    Vector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    const Vector d = (f(xp) - f(xm)) / (xp(j) - xm(j));
    if (J.size() == 0) J.resize(d.size(), m);
    J.col(j) = d;
  }
  return J;
}

ComplexMatrix expm(const ComplexMatrix& m) { return detail::expm_t<double>(m); }

GradedSvd graded_svd(const ComplexMatrix& b, const Vector& log_col_scale) {
  if (b.cols() != log_col_scale.size()) fail(ErrorCode::kInvalidInput, "one log scale per column required");
  const std::vector<double> s(log_col_scale.data(), log_col_scale.data() + log_col_scale.size());
  const detail::GradedSvdT<double> r = detail::graded_svd_t<double>(b, s);
  GradedSvd out;
  out.log_sigma = Eigen::Map<const Vector>(r.log_sigma.data(), static_cast<Eigen::Index>(r.log_sigma.size()));
  out.left = r.left;
  out.right = r.right;
  out.sweeps = r.sweeps;
  return out;
}

}  // namespace bcdual::mat
