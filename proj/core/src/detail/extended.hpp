#pragma once

#include "bcdual/core.hpp"

namespace bcdual::detail {

enum class Tier { kLongDouble, kQuad };
Tier tier_for_bits(int bits);

void hermitian_spectrum_ext(Tier tier, const ComplexMatrix& m, Vector& values, ComplexMatrix& vectors);
void general_spectrum_ext(Tier tier, const ComplexMatrix& m, ComplexVector& values, ComplexMatrix& vectors);

// Marches the spectral flow from (q, p) to time T in extended arithmetic and
// returns q(T).
Vector march_positions_ext(Tier tier, const Vector& q, const Vector& p, double mu, double nu, double kappa,
                           double T, int steps);

}  // namespace bcdual::detail
