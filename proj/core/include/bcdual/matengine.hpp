#pragma once

#include <functional>
#include <limits>
#include <string>

#include "bcdual/core.hpp"

namespace bcdual::mat {

struct PrecisionConfig {
  enum class Mode { kDouble, kExtended };

  Mode mode = Mode::kDouble;
  int bits = 53;
  double tol_imag = 1e-8;
  double tol_residual = 1e-10;

  static PrecisionConfig double_precision();
  // bits is the storage width: up to 80 selects x87 long double, up to 128 quad.
  static PrecisionConfig extended(int bits);
  // "double" or "extended:<bits>"
  static PrecisionConfig parse(const std::string& text);
  std::string to_string() const;
  bool is_extended() const { return mode == Mode::kExtended; }
};

struct EigenResult {
  Vector values;          // descending
  ComplexMatrix vectors;  // unit columns aligned with values
  double residual = 0;
  double imag_max = 0;  // largest discarded imaginary part (general solver)
  double pairing_residual = std::numeric_limits<double>::quiet_NaN();
};

EigenResult eig_hermitian(const ComplexMatrix& m, const PrecisionConfig& prec = {});
EigenResult eig_general_real_spectrum(const ComplexMatrix& m, const PrecisionConfig& prec = {},
                                      bool check_pairing = false);

ComplexMatrix sqrt_posdef(const ComplexMatrix& m, const PrecisionConfig& prec = {});
ComplexMatrix inv_sqrt_posdef(const ComplexMatrix& m, const PrecisionConfig& prec = {});

struct MinorsResult {
  ComplexVector minors;
  bool singular = false;
  int first_singular = -1;  // zero-based block size index, −1 if none
};
MinorsResult leading_principal_minors(const ComplexMatrix& m, int k_max);

using VectorMap = std::function<Vector(const Vector&)>;
// Central differences; step <= 0 selects cbrt(eps)·max(1, |x_i|).
RealMatrix finite_diff_jacobian(const VectorMap& f, const Vector& x, double step = 0);

ComplexMatrix expm(const ComplexMatrix& m);

// Singular values of B·diag(exp(log_col_scale)) computed without forming the
// scaled product, via one-sided Jacobi. Singular values stay accurate relative
// to each column scale even when the scales span hundreds of orders of magnitude.
struct GradedSvd {
  Vector log_sigma;     // descending
  ComplexMatrix left;   // unit left singular vectors
  ComplexMatrix right;  // unitary, columns aligned with log_sigma
  int sweeps = 0;
};
GradedSvd graded_svd(const ComplexMatrix& b, const Vector& log_col_scale);

}  // namespace bcdual::mat
