#include "bcdual/sampling.hpp"

namespace bcdual::sampling {

Vector random_chamber(std::mt19937_64& rng, int n, const SamplerConfig& cfg) {
  if (n < 1) fail(ErrorCode::kInvalidInput, "n must be at least 1");
  std::uniform_real_distribution<double> gap(cfg.gap_lo, cfg.gap_hi);
  Vector x(n);
  double acc = 0;
  for (int a = n - 1; a >= 0; --a) {
    acc += gap(rng);
    x(a) = acc;
  }
  return x;
}

PhasePointS random_point_S(std::mt19937_64& rng, int n, const SamplerConfig& cfg) {
  Vector q = random_chamber(rng, n, cfg);
  std::uniform_real_distribution<double> mom(-cfg.momentum, cfg.momentum);
  Vector p(n);
  for (int a = 0; a < n; ++a) p(a) = mom(rng);
  return PhasePointS(q, p);
}

PhasePointR random_point_R(std::mt19937_64& rng, int n, const SamplerConfig& cfg) {
  Vector lambda = random_chamber(rng, n, cfg);
  std::uniform_real_distribution<double> ang(-cfg.angle, cfg.angle);
  Vector theta(n);
  for (int a = 0; a < n; ++a) theta(a) = ang(rng);
  return PhasePointR(lambda, theta);
}

std::vector<Couplings> reference_couplings() {
  return {couplings_from_rsvd(-1.0, 2.0, 0.5), couplings_from_rsvd(-0.5, 1.3, 0.0),
          couplings_from_rsvd(-1.5, 0.8, 0.8)};
}

}  // namespace bcdual::sampling
