#include <gtest/gtest.h>

#include <bcdual/duality.hpp>
#include <bcdual/laxops.hpp>
#include <bcdual/sampling.hpp>

using namespace bcdual;

namespace {

double sup(const Vector& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Duality, SingleParticleClosedForm) {
  // λ = 2, θ = 0, ν = 2, κ = 0: q = ½ ln(1 + √2)
  const Couplings c = couplings_from_rsvd(-1, 2, 0);
  const PhasePointS s = dualize_R_to_S(PhasePointR(Vector::Constant(1, 2.0), Vector::Zero(1)), c).point;
  EXPECT_NEAR(s.q()(0), 0.44068679350977151262, 1e-12);
  EXPECT_NEAR(s.p()(0), 0, 1e-12);
}

TEST(Duality, ActionVariablesAreTheDualPositions) {
  std::mt19937_64 rng(21);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  for (int n = 1; n <= 4; ++n) {
    const PhasePointS s = sampling::random_point_S(rng, n);
    EXPECT_LT(sup(action_variables(s, c) - dualize_S_to_R(s, c).point.lambda()), 1e-10);
  }
}

TEST(Duality, RoundTripsBothWays) {
  std::mt19937_64 rng(22);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n = 1; n <= 6; ++n) {
      const PhasePointS s = sampling::random_point_S(rng, n);
      const auto fwd = dualize_S_to_R(s, c);
      EXPECT_LE(fwd.diagnostics.newton_iters, 10);
      const PhasePointS back = dualize_R_to_S(fwd.point, c).point;
      EXPECT_LT(std::max(sup(back.q() - s.q()), sup(back.p() - s.p())), 1e-8) << "n=" << n;

      const PhasePointR r = sampling::random_point_R(rng, n);
      const PhasePointR again = dualize_S_to_R(dualize_R_to_S(r, c).point, c).point;
      EXPECT_LT(std::max(sup(again.lambda() - r.lambda()), sup(again.theta() - r.theta())), 1e-8) << "n=" << n;
    }
}

TEST(Duality, WarmStartConvergesQuickly) {
  std::mt19937_64 rng(23);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const PhasePointS s = sampling::random_point_S(rng, 3);
  const auto cold = dualize_S_to_R(s, c);
  DualityOptions warm;
  warm.warm_start = cold.point.theta();
  const auto w = dualize_S_to_R(s, c, warm);
  EXPECT_LE(w.diagnostics.newton_iters, 2);
  EXPECT_LT(sup(w.point.theta() - cold.point.theta()), 1e-10);
}

TEST(Duality, InverseMethodsAgree) {
  std::mt19937_64 rng(24);
  const Couplings c = couplings_from_rsvd(-1.5, 0.8, 0.8);
  for (int n = 1; n <= 4; ++n) {
    const PhasePointR r = sampling::random_point_R(rng, n);
    const RawInverse g = inverse_map_raw(r.lambda(), r.theta(), c, InverseMethod::kGraded);
    const RawInverse d = inverse_map_raw(r.lambda(), r.theta(), c, InverseMethod::kDirect);
    EXPECT_LT(std::max(sup(g.q - d.q), sup(g.p - d.p)), 1e-9);
  }
}

TEST(Duality, DualSpectrumMatchesPositions) {
  std::mt19937_64 rng(25);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const PhasePointS s = sampling::random_point_S(rng, 3);
  const Vector ev = mat::eig_hermitian(build_lax_R(dualize_S_to_R(s, c).point, c).abc).values;
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(ev(a) / std::exp(2 * s.q()(a)), 1, 1e-10);
}

TEST(Duality, Symplectic) {
  std::mt19937_64 rng(26);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  for (int n = 1; n <= 3; ++n) {
    const PhasePointS s = sampling::random_point_S(rng, n);
    auto f = [&c](const Vector& x) { return pack(dualize_S_to_R(unpack_S(x), c).point); };
    EXPECT_LT(symplecticity_certificate(f, pack(s), 1e-5), 1e-5);
    const PhasePointR r = sampling::random_point_R(rng, n);
    auto g = [&c](const Vector& x) { return pack(dualize_R_to_S(unpack_R(x), c).point); };
    EXPECT_LT(symplecticity_certificate(g, pack(r), 1e-5), 1e-5);
  }
}

TEST(Duality, CertificateFlagsNonSymplecticMap) {
  auto squash = [](const Vector& x) { return Vector(2 * x); };
  EXPECT_GT(symplecticity_certificate(squash, Vector::Ones(4), 1e-5), 1);
}

TEST(Duality, ExtendedPrecisionAgrees) {
  std::mt19937_64 rng(27);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const PhasePointS s = sampling::random_point_S(rng, 3);
  DualityOptions ext;
  ext.precision = mat::PrecisionConfig::extended(128);
  const PhasePointR a = dualize_S_to_R(s, c).point, b = dualize_S_to_R(s, c, ext).point;
  EXPECT_LT(std::max(sup(a.lambda() - b.lambda()), sup(a.theta() - b.theta())), 1e-9);
}
