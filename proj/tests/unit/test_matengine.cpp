#include <gtest/gtest.h>

#include <bcdual/laxops.hpp>
#include <bcdual/matengine.hpp>
#include <bcdual/sampling.hpp>

using namespace bcdual;

namespace {

ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m + m.adjoint();
}

}  // namespace

TEST(Precision, Parse) {
  EXPECT_FALSE(mat::PrecisionConfig::parse("double").is_extended());
  EXPECT_EQ(mat::PrecisionConfig::parse("extended:80").bits, 80);
  EXPECT_EQ(mat::PrecisionConfig::parse("extended:128").to_string(), "extended:128");
  EXPECT_THROW(mat::PrecisionConfig::parse("extended:512"), Error);
  EXPECT_THROW(mat::PrecisionConfig::parse("extended:32"), Error);
  EXPECT_THROW(mat::PrecisionConfig::parse("single"), Error);
}

TEST(EigHermitian, SortedWithSmallResidual) {
  std::mt19937_64 rng(2);
  for (int n : {1, 3, 8}) {
    const ComplexMatrix m = random_hermitian(rng, n);
    const mat::EigenResult e = mat::eig_hermitian(m);
    for (int k = 0; k + 1 < n; ++k) EXPECT_GE(e.values(k), e.values(k + 1));
    const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LT((rec - m).norm(), 1e-12 * m.norm());
    EXPECT_LE(e.residual, 1e-10);
  }
}

TEST(EigHermitian, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 1;
  try {
    mat::eig_hermitian(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
  }
}

TEST(EigGeneral, PairedSpectrumOfLax) {
  std::mt19937_64 rng(4);
  const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  for (int n = 1; n <= 4; ++n) {
    const PhasePointS pt = sampling::random_point_S(rng, n);
    const ComplexMatrix L = lax_matrix_S(pt.q(), pt.p(), c);
    ASSERT_TRUE(in_algebra_g(L, 1e-12));
    const mat::EigenResult e = mat::eig_general_real_spectrum(L, {}, true);
    EXPECT_LT(e.pairing_residual, 1e-12);
    for (int k = 0; k < n; ++k) EXPECT_NEAR(e.values(k), -e.values(2 * n - 1 - k), 1e-12 * e.values(0));
  }
}

TEST(EigGeneral, RejectsComplexSpectrum) {
  ComplexMatrix m(2, 2);
  m << 0, 1, -1, 0;
  EXPECT_THROW(mat::eig_general_real_spectrum(m), Error);
}

TEST(Extended, MatchesDouble) {
  std::mt19937_64 rng(6);
  for (int bits : {80, 128}) {
    const ComplexMatrix m = random_hermitian(rng, 5);
    const Vector d = mat::eig_hermitian(m).values;
    const Vector e = mat::eig_hermitian(m, mat::PrecisionConfig::extended(bits)).values;
    EXPECT_LT((d - e).cwiseAbs().maxCoeff(), 1e-13 * d.cwiseAbs().maxCoeff());
  }
}

TEST(PosDef, SquareRoots) {
  std::mt19937_64 rng(8);
  ComplexMatrix m = random_hermitian(rng, 4);
  m = m * m + ComplexMatrix::Identity(4, 4);
  const ComplexMatrix r = mat::sqrt_posdef(m), ri = mat::inv_sqrt_posdef(m);
  EXPECT_LT((r * r - m).norm(), 1e-12 * m.norm());
  EXPECT_LT((r * ri - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
  ComplexMatrix neg = -ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(mat::sqrt_posdef(neg), Error);
}

TEST(Minors, KnownMatrix) {
  ComplexMatrix m(3, 3);
  m << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const mat::MinorsResult r = mat::leading_principal_minors(m, 3);
  EXPECT_NEAR(r.minors(0).real(), 2, 1e-14);
  EXPECT_NEAR(r.minors(1).real(), 3, 1e-14);
  EXPECT_NEAR(r.minors(2).real(), 4, 1e-14);
  EXPECT_FALSE(r.singular);
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(1, 1) = 1;
  const mat::MinorsResult z = mat::leading_principal_minors(s, 2);
  EXPECT_TRUE(z.singular);
  EXPECT_EQ(z.first_singular, 0);
}

TEST(FiniteDifference, LinearMapIsExact) {
  RealMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const RealMatrix j = mat::finite_diff_jacobian([&](const Vector& x) { return Vector(a * x); }, Vector::Ones(2));
  EXPECT_LT((j - a).norm(), 1e-9);
}

TEST(Expm, Diagonal) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = Complex(0, 1);
  const ComplexMatrix e = mat::expm(d);
  EXPECT_NEAR(std::abs(e(0, 0) - std::exp(1.5)), 0, 1e-13);
  EXPECT_NEAR(std::abs(e(1, 1) - std::exp(Complex(0, 1))), 0, 1e-14);
}

TEST(GradedSvd, HugeColumnScales) {
  // B = I with column scales far outside the double range
  const Vector scale = (Vector(3) << 900, 10, -900).finished();
  const mat::GradedSvd s = mat::graded_svd(ComplexMatrix::Identity(3, 3), scale);
  EXPECT_NEAR(s.log_sigma(0), 900, 1e-12 * 900);
  EXPECT_NEAR(s.log_sigma(1), 10, 1e-12);
  EXPECT_NEAR(s.log_sigma(2), -900, 1e-12 * 900);
}

TEST(GradedSvd, MatchesPlainSvd) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  ComplexMatrix b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) b(i, j) = Complex(g(rng), g(rng));
  const Vector scale = (Vector(4) << 3, 1, -1, -2).finished();
  const mat::GradedSvd s = mat::graded_svd(b, scale);
  const Eigen::JacobiSVD<ComplexMatrix> ref(b * scale.array().exp().matrix().cast<Complex>().asDiagonal());
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.log_sigma(k), std::log(ref.singularValues()(k)), 1e-12);
}
