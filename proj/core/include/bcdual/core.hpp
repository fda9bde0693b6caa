#pragma once

#include <complex>

#include <Eigen/Dense>

#include "bcdual/errors.hpp"

namespace bcdual {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Absolute guard on consecutive gaps and on the smallest coordinate.
inline constexpr double kChamberMargin = 1e-9;

class Couplings {
 public:
  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }
  double kappa() const noexcept { return kappa_; }
  double g_sq() const noexcept { return mu_ * mu_; }
  double g1_sq() const noexcept { return 0.5 * nu_ * kappa_; }
  double g2_sq() const noexcept { return 0.5 * (nu_ - kappa_) * (nu_ - kappa_); }

 private:
  Couplings(double mu, double nu, double kappa) : mu_(mu), nu_(nu), kappa_(kappa) {}
  friend Couplings couplings_from_rsvd(double mu, double nu, double kappa);

  double mu_, nu_, kappa_;
};

// Throws kInvalidParameter naming the violated constraint.
Couplings couplings_from_rsvd(double mu, double nu, double kappa);

bool validate_chamber(const Vector& x, double margin = kChamberMargin);
void require_chamber(const Vector& x, const char* what, ErrorCode code = ErrorCode::kChamberViolation);
double chamber_margin(const Vector& x);

class PhasePointS {
 public:
  PhasePointS(Vector q, Vector p);
  const Vector& q() const noexcept { return q_; }
  const Vector& p() const noexcept { return p_; }
  int n() const noexcept { return static_cast<int>(q_.size()); }

 private:
  Vector q_, p_;
};

class PhasePointR {
 public:
  PhasePointR(Vector lambda, Vector theta);
  const Vector& lambda() const noexcept { return lambda_; }
  const Vector& theta() const noexcept { return theta_; }
  int n() const noexcept { return static_cast<int>(lambda_.size()); }

 private:
  Vector lambda_, theta_;
};

enum class Side { kPlus, kMinus };

inline double sign_of(Side s) { return s == Side::kPlus ? 1.0 : -1.0; }

class AsymptoticState {
 public:
  AsymptoticState(Vector x, Vector y, Side side);
  const Vector& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  Side side() const noexcept { return side_; }
  int n() const noexcept { return static_cast<int>(x_.size()); }

 private:
  Vector x_, y_;
  Side side_;
};

// Flat (x, y) packing used by Jacobians and Newton iterations.
Vector pack(const Vector& x, const Vector& y);
Vector pack(const PhasePointS& pt);
Vector pack(const PhasePointR& pt);
PhasePointS unpack_S(const Vector& v);
PhasePointR unpack_R(const Vector& v);

ComplexMatrix build_C(int n);
ComplexVector build_E(int n);
ComplexMatrix build_xi(const ComplexVector& V, const Couplings& c);
ComplexMatrix build_Q(const Vector& q);
ComplexMatrix build_Lambda(const Vector& lambda);

// a is zero-based.
Complex z_factor(int a, const Vector& lambda, const Couplings& c);
ComplexVector z_factors(const Vector& lambda, const Couplings& c);

struct AlphaBeta {
  double alpha;
  Complex beta;  // purely imaginary
};
AlphaBeta alpha_beta(double x, double kappa);

ComplexMatrix build_h(const Vector& lambda, const Couplings& c);
// Closed form [[α, −β], [β, α]] blockwise, using α² + β² = 1.
ComplexMatrix build_h_inv(const Vector& lambda, const Couplings& c);
// √(1 + κ²Λ⁻²) + iκCΛ⁻¹
ComplexMatrix h_inv_sq_closed_form(const Vector& lambda, const Couplings& c);

Vector delta_phase(const Vector& lambda, const Couplings& c);

bool is_hermitian(const ComplexMatrix& m, double tol);
bool in_group_G(const ComplexMatrix& y, double tol);
bool in_algebra_g(const ComplexMatrix& Y, double tol);

}  // namespace bcdual
