#include "detail/extended.hpp"

#include "detail/eigen_impl.hpp"
#include "detail/float128.hpp"
#include "detail/kernels.hpp"

namespace bcdual::detail {

Tier tier_for_bits(int bits) {
  if (bits < 64) fail(ErrorCode::kInvalidParameter, "extended precision needs at least 64 bits");
  if (bits <= 80) return Tier::kLongDouble;
  if (bits <= 128) return Tier::kQuad;
  fail(ErrorCode::kInvalidParameter, "extended precision above 128 bits is not available");
}

void hermitian_spectrum_ext(Tier tier, const ComplexMatrix& m, Vector& values, ComplexMatrix& vectors) {
  if (tier == Tier::kLongDouble)
    hermitian_spectrum<long double>(m, values, vectors);
  else
    hermitian_spectrum<quad>(m, values, vectors);
}

void general_spectrum_ext(Tier tier, const ComplexMatrix& m, ComplexVector& values, ComplexMatrix& vectors) {
  if (tier == Tier::kLongDouble)
    general_spectrum<long double>(m, values, vectors);
  else
    general_spectrum<quad>(m, values, vectors);
}

template <class Real>
static Vector march(const Vector& q0, const Vector& p0, double mu, double nu, double kappa, double T, int steps) {
  const Eigen::Index n = q0.size();
  RVec<Real> q(n), p(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    q(a) = Real(q0(a));
    p(a) = Real(p0(a));
  }
  const CouplingsT<Real> c{Real(mu), Real(nu), Real(kappa)};
  const Real dt = Real(T) / Real(steps);
  for (int k = 0; k < steps; ++k) flow_step_S<Real>(q, p, dt, c);
  Vector out(n);
  for (Eigen::Index a = 0; a < n; ++a) out(a) = static_cast<double>(q(a));
  return out;
}

Vector march_positions_ext(Tier tier, const Vector& q, const Vector& p, double mu, double nu, double kappa, double T,
                           int steps) {
  if (tier == Tier::kLongDouble) return march<long double>(q, p, mu, nu, kappa, T, steps);
  return march<quad>(q, p, mu, nu, kappa, T, steps);
}

}  // namespace bcdual::detail
