#include <gtest/gtest.h>

#include <bcdual/sampling.hpp>
#include <bcdual/scattering.hpp>

using namespace bcdual;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST(Fit, ExactLine) {
  std::vector<double> t;
  RealMatrix x(20, 1);
  for (int k = 0; k < 20; ++k) {
    t.push_back(10 + 0.5 * k);
    x(k, 0) = -1.5 * t.back() + 0.25;
  }
  const AsymptoticFit f = fit_linear_asymptote(t, x);
  EXPECT_NEAR(f.slope(0), -1.5, 1e-12);
  EXPECT_NEAR(f.intercept(0), 0.25, 1e-11);
}

TEST(Fit, DecayingCorrection) {
  // 2t + 3 + e^{−t} on [10, 20]
  std::vector<double> t;
  RealMatrix x(41, 1);
  for (int k = 0; k <= 40; ++k) {
    t.push_back(10 + 0.25 * k);
    x(k, 0) = 2 * t.back() + 3 + std::exp(-t.back());
  }
  const AsymptoticFit f = fit_linear_asymptote(t, x);
  EXPECT_NEAR(f.slope(0), 2, 1e-6);
  EXPECT_NEAR(f.intercept(0), 3, 1e-6);
}

TEST(Fit, InsufficientSamples) {
  try {
    fit_linear_asymptote({1, 2, 3}, RealMatrix::Zero(3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientSamples);
  }
}

TEST(Extrapolate, PolynomialInInverseTime) {
  std::vector<double> t;
  RealMatrix x(30, 1);
  for (int k = 0; k < 30; ++k) {
    t.push_back(5 + k);
    x(k, 0) = 0.7 + 2 / t.back() - 3 / (t.back() * t.back());
  }
  EXPECT_NEAR(extrapolate_limit(t, x)(0), 0.7, 1e-10);
}

TEST(WaveMapS, SingleParticlePullback) {
  // the point with λ = 2, θ = 0 at ν = 2, κ = 0 has x₊ = ½Δ = ¼ ln 2
  const Couplings c = couplings_from_rsvd(-1, 2, 0);
  const PhasePointS s(Vector::Constant(1, 0.44068679350977151262), Vector::Zero(1));
  const AsymptoticState plus = wave_map_S(s, c, Side::kPlus);
  EXPECT_NEAR(plus.y()(0), 2, 1e-10);
  EXPECT_NEAR(plus.x()(0), 0.17328679513998632735, 1e-10);
  const AsymptoticState minus = wave_map_S(s, c, Side::kMinus);
  EXPECT_NEAR(minus.y()(0), -2, 1e-10);
  EXPECT_NEAR(minus.x()(0), 0.17328679513998632735, 1e-10);
}

TEST(ScatteringMapS, SingleParticleExample) {
  const Couplings c = couplings_from_rsvd(-1, 2, 0);
  const AsymptoticState out = scattering_map_S(AsymptoticState(Vector::Zero(1), Vector::Constant(1, -2), Side::kMinus), c);
  EXPECT_EQ(out.side(), Side::kPlus);
  EXPECT_NEAR(out.x()(0), 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(out.y()(0), 2, 1e-15);
}

TEST(ScatteringMapS, RequiresIncomingState) {
  const Couplings c = couplings_from_rsvd(-1, 2, 0);
  EXPECT_THROW(scattering_map_S(AsymptoticState(Vector::Zero(1), Vector::Constant(1, 2), Side::kPlus), c), Error);
}

TEST(ScatteringMapR, RawExampleAndInvolution) {
  const Vector xy = vec({1, 2, -3, -4});
  EXPECT_EQ(scattering_map_R(xy), vec({-1, -2, 3, 4}));
  EXPECT_EQ(scattering_map_R(scattering_map_R(xy)), xy);
}

TEST(ScatteringMapR, NegatesOrderedState) {
  const AsymptoticState out = scattering_map_R(AsymptoticState(vec({1, 2}), vec({-2, -1}), Side::kMinus));
  EXPECT_EQ(out.x(), vec({-1, -2}));
  EXPECT_EQ(out.y(), vec({2, 1}));
}

TEST(Composition, WaveMapsFactorThroughScattering) {
  std::mt19937_64 rng(41);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n = 1; n <= 3; ++n) {
      const PhasePointS s = sampling::random_point_S(rng, n);
      const AsymptoticState out = scattering_map_S(wave_map_S(s, c, Side::kMinus), c);
      const AsymptoticState wp = wave_map_S(s, c, Side::kPlus);
      EXPECT_LT((out.x() - wp.x()).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((out.y() - wp.y()).cwiseAbs().maxCoeff(), 1e-8);
      const PhasePointR r = sampling::random_point_R(rng, n);
      const AsymptoticState outr = scattering_map_R(wave_map_R(r, c, Side::kMinus));
      const AsymptoticState wpr = wave_map_R(r, c, Side::kPlus);
      EXPECT_LT((outr.x() - wpr.x()).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((outr.y() - wpr.y()).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(DeltaDecomposition, SumsToPhaseShift) {
  std::mt19937_64 rng(42);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const Vector lam = sampling::random_chamber(rng, 4);
  const DeltaDecomposition d = decompose_delta(lam, c);
  EXPECT_LT((d.total() - delta_phase(lam, c)).cwiseAbs().maxCoeff(), 1e-14);
  for (int a = 0; a < 4; ++a) EXPECT_EQ(d.two_body(a, a), 0);
}

TEST(Decay, Synthetic) {
  std::vector<double> t, pos, mom;
  for (int k = 0; k < 40; ++k) {
    t.push_back(2 + 0.25 * k);
    pos.push_back(std::exp(-2 * t.back()));
    mom.push_back(0.5 * std::exp(-2 * t.back()));
  }
  const DecayReport r = analyze_exponential_decay(t, pos, mom, 1e-14);
  EXPECT_TRUE(r.pass) << r.reason;
  EXPECT_NEAR(r.rate_estimate, 2, 1e-9);

  std::vector<double> grow(pos.rbegin(), pos.rend());
  EXPECT_FALSE(analyze_exponential_decay(t, grow, grow, 1e-14).pass);
}

TEST(Decay, SutherlandBothSides) {
  std::mt19937_64 rng(43);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const PhasePointS s = sampling::random_point_S(rng, 2);
  for (Side side : {Side::kPlus, Side::kMinus}) {
    const DecayReport r = verify_decay_rates_S(s, c, side);
    EXPECT_TRUE(r.pass) << r.reason;
    EXPECT_GT(r.rate_estimate, 0);
  }
}

TEST(Decay, RsvdBothSides) {
  std::mt19937_64 rng(44);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const PhasePointR r = sampling::random_point_R(rng, 2);
  for (Side side : {Side::kPlus, Side::kMinus}) {
    const DecayReport d = verify_decay_rates_R(r, c, side);
    EXPECT_TRUE(d.pass) << d.reason;
    EXPECT_LE(d.worst_ratio, 2);
  }
}
