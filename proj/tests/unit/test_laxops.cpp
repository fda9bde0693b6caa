#include <gtest/gtest.h>

#include <bcdual/laxops.hpp>
#include <bcdual/matengine.hpp>
#include <bcdual/sampling.hpp>

#include "oracles.hpp"

using namespace bcdual;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Potential, Values) {
  EXPECT_NEAR(w_potential(1.0), 1.0 / (std::sinh(1.0) * std::sinh(1.0)), 1e-15);
  const double h = 1e-6;
  EXPECT_NEAR(w_potential_prime(0.8), (w_potential(0.8 + h) - w_potential(0.8 - h)) / (2 * h), 1e-8);
}

TEST(HamiltonianS, Frozen) {
  // mpmath, 30 digits
  const PhasePointS pt(vec({1.5, 0.7}), vec({0.3, -0.2}));
  EXPECT_NEAR(hamiltonian_S(pt, couplings_from_rsvd(-1, 2, 0.5)), 2.6838015559297718076, 1e-13);
}

TEST(HamiltonianR, Frozen) {
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const Vector lam = vec({2, 1});
  const PhasePointR pt(lam, vec({0.3, -0.4}));
  EXPECT_NEAR(hamiltonian_R(pt, c), 15.879743979122190621, 1e-12);
  EXPECT_NEAR(v_factor(0, lam, c), 3.9175530911810528037, 1e-13);
  EXPECT_NEAR(v_factor(1, lam, c), 6.7185481235821247103, 1e-13);
}

TEST(Hamiltonians, MatchOracles) {
  std::mt19937_64 rng(11);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n = 1; n <= 6; ++n) {
      const PhasePointS s = sampling::random_point_S(rng, n);
      const PhasePointR r = sampling::random_point_R(rng, n);
      EXPECT_LT(rel(hamiltonian_S(s, c), double(oracle::hamiltonian_S(s.q(), s.p(), c.mu(), c.nu(), c.kappa()))), 1e-13);
      EXPECT_LT(rel(hamiltonian_R(r, c), double(oracle::hamiltonian_R(r.lambda(), r.theta(), c.mu(), c.nu(), c.kappa()))),
                1e-13);
    }
}

TEST(Lax, EnergyFromTrace) {
  std::mt19937_64 rng(12);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n : {1, 2, 3, 4, 6, 8}) {
      const PhasePointS s = sampling::random_point_S(rng, n);
      const ComplexMatrix L = build_lax_S(s, c).L;
      EXPECT_LT(rel(0.25 * (L * L).trace().real(), hamiltonian_S(s, c)), 1e-10);
      const PhasePointR r = sampling::random_point_R(rng, n);
      const ComplexMatrix A = build_acal(r.lambda(), r.theta(), c);
      EXPECT_LT(rel(0.5 * (A * h_inv_sq_closed_form(r.lambda(), c)).trace().real(), hamiltonian_R(r, c)), 1e-10);
    }
}

TEST(Lax, AcalIsPositiveDefinite) {
  std::mt19937_64 rng(13);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  for (int n = 1; n <= 5; ++n) {
    const PhasePointR r = sampling::random_point_R(rng, n);
    const ComplexMatrix A = build_acal(r.lambda(), r.theta(), c);
    EXPECT_TRUE(is_hermitian(A, 1e-12 * A.norm()));
    EXPECT_GT(mat::eig_hermitian(A).values.minCoeff(), 0);
    const AcalRoots roots = acal_roots(r.lambda(), r.theta(), c);
    EXPECT_LT((roots.root * roots.root - A).norm(), 1e-10 * A.norm());
    EXPECT_LT((roots.root * roots.inv_root - ComplexMatrix::Identity(2 * n, 2 * n)).norm(), 1e-10);
  }
}

TEST(Lax, MomentumMapResiduals) {
  std::mt19937_64 rng(14);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n : {1, 2, 3, 4, 6}) {
      EXPECT_LT(momentum_residual_S(sampling::random_point_S(rng, n), c), 1e-9);
      EXPECT_LT(momentum_residual_R(sampling::random_point_R(rng, n), c), 1e-9);
    }
}

TEST(Lax, EmbeddingsLieInGroupAndAlgebra) {
  std::mt19937_64 rng(15);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  const Embedding e = embed_S(sampling::random_point_S(rng, 3), c);
  EXPECT_TRUE(in_group_G(e.y, 1e-10));
  EXPECT_TRUE(in_algebra_g(e.Y, 1e-10));
}

TEST(Lax, RsvdSpectrumComesInInversePairs) {
  std::mt19937_64 rng(16);
  const Couplings c = couplings_from_rsvd(-0.5, 1.3, 0);
  for (int n = 1; n <= 4; ++n) {
    const Vector ev = mat::eig_hermitian(build_lax_R(sampling::random_point_R(rng, n), c).abc).values;
    for (int k = 0; k < n; ++k) EXPECT_NEAR(ev(k) * ev(2 * n - 1 - k), 1, 1e-10);
  }
}

TEST(Minors, CauchyIdentityHolds) {
  std::mt19937_64 rng(17);
  for (const Couplings& c : sampling::reference_couplings())
    for (int n : {1, 2, 3, 4, 6}) {
      const MinorCheck m = cauchy_minor_check(sampling::random_point_R(rng, n), c);
      ASSERT_FALSE(m.singular);
      EXPECT_LT(m.max_identity(), 1e-10);
      EXPECT_LT(m.max_closed_form(), 1e-10);
    }
}

TEST(Minors, CorruptedPhaseShiftIsDetected) {
  std::mt19937_64 rng(18);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  auto flipped = [](const Vector& l, const Couplings& cc) { return Vector(-delta_phase(l, cc)); };
  const MinorCheck m = cauchy_minor_check(sampling::random_point_R(rng, 3), c, flipped);
  EXPECT_GT(m.max_identity(), 1e-3);
}
