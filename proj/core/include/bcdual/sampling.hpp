#pragma once

#include <random>
#include <vector>

#include "bcdual/core.hpp"

namespace bcdual::sampling {

// Reference distribution for property checks. Gaps are kept comparable to |μ|;
// much tighter clusters make 𝒜 too ill-conditioned for double-precision checks.
struct SamplerConfig {
  double gap_lo = 0.5;
  double gap_hi = 1.5;
  double momentum = 1.5;  // p uniform in [−momentum, momentum]
  double angle = 1.0;     // θ uniform in [−angle, angle]
};

Vector random_chamber(std::mt19937_64& rng, int n, const SamplerConfig& cfg = {});
PhasePointS random_point_S(std::mt19937_64& rng, int n, const SamplerConfig& cfg = {});
PhasePointR random_point_R(std::mt19937_64& rng, int n, const SamplerConfig& cfg = {});

// Three coupling sets: generic, κ = 0, and ν = κ.
std::vector<Couplings> reference_couplings();

}  // namespace bcdual::sampling
