#pragma once

#include <limits>
#include <optional>

#include "bcdual/core.hpp"
#include "bcdual/matengine.hpp"

namespace bcdual {

struct DualityDiagnostics {
  double spectrum_imag_max = 0;
  int newton_iters = 0;
  // weighted sup-norm of the (q, p) mismatch, see DualityOptions::tol
  double seed_error = std::numeric_limits<double>::quiet_NaN();
  double seed_time = std::numeric_limits<double>::quiet_NaN();
  double roundtrip_residual = std::numeric_limits<double>::quiet_NaN();
  double imag_residual = 0;
  double inversion_residual = std::numeric_limits<double>::quiet_NaN();
  double extended_seed_gap = std::numeric_limits<double>::quiet_NaN();
};

template <class Point>
struct DualityResult {
  Point point;
  DualityDiagnostics diagnostics;
};

enum class InverseMethod {
  kGraded,  // structured factorization, accurate for large |θ|
  kDirect,  // Hermitian eigensolve of the assembled matrix
};

struct DualityOptions {
  mat::PrecisionConfig precision;
  int max_iters = 25;
  double tol = 1e-10;  // q and p parts relative to max(1, |q|∞) and max(1, |p|∞)
  double seed_gap_product = 15;  // T·min gap
  int max_seed_steps = 400;
  std::optional<Vector> warm_start;  // θ guess that replaces the seed
  bool extended_seed_check = false;
  InverseMethod inverse = InverseMethod::kGraded;
};

// 𝒮⁻¹: (λ, θ) ↦ (q, p)
DualityResult<PhasePointS> dualize_R_to_S(const PhasePointR& pt, const Couplings& c, const DualityOptions& opts = {});
// 𝒮: (q, p) ↦ (λ, θ)
DualityResult<PhasePointR> dualize_S_to_R(const PhasePointS& pt, const Couplings& c, const DualityOptions& opts = {});

// Positive half of σ(L(q, p)), descending.
Vector action_variables(const PhasePointS& pt, const Couplings& c, const mat::PrecisionConfig& prec = {},
                        double* imag_max = nullptr);

// Unvalidated inverse map used inside Newton loops: returns packed (q, p) and
// the largest imaginary part dropped from the momentum quadratic forms.
struct RawInverse {
  Vector q, p;
  double imag = 0;
  double inversion = std::numeric_limits<double>::quiet_NaN();
};
RawInverse inverse_map_raw(const Vector& lambda, const Vector& theta, const Couplings& c,
                           InverseMethod method = InverseMethod::kGraded);

struct SeedResult {
  Vector theta;
  double time = 0;
  int steps = 0;
};
// Marches the Sutherland flow to a large time and reads θ off the asymptotes.
SeedResult asymptotic_seed(const PhasePointS& pt, const Vector& lambda, const Couplings& c,
                           const DualityOptions& opts = {});

// ‖JᵀΩJ − Ω‖_F for the finite-difference Jacobian of a map on (x, y) coordinates.
double symplecticity_certificate(const mat::VectorMap& map, const Vector& x, double step);

}  // namespace bcdual
