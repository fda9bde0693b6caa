#pragma once

#include <Eigen/Eigenvalues>

#include "bcdual/core.hpp"
#include "detail/kernels.hpp"

namespace bcdual::detail {

template <class Real>
CMat<Real> widen(const ComplexMatrix& m) {
  CMat<Real> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.size(); ++i) out(i) = std::complex<Real>(Real(m(i).real()), Real(m(i).imag()));
  return out;
}

template <class Real>
ComplexMatrix narrow(const CMat<Real>& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.size(); ++i)
    out(i) = Complex(static_cast<double>(m(i).real()), static_cast<double>(m(i).imag()));
  return out;
}

// Unsorted spectrum of a Hermitian matrix in the requested arithmetic.
template <class Real>
void hermitian_spectrum(const ComplexMatrix& m, Vector& values, ComplexMatrix& vectors) {
  CMat<Real> w = widen<Real>(m);
  w = (w + w.adjoint().eval()) / Real(2);
  Eigen::SelfAdjointEigenSolver<CMat<Real>> es(w);
  if (es.info() != Eigen::Success) fail(ErrorCode::kConvergence, "Hermitian eigensolver did not converge");
  values.resize(m.rows());
  for (Eigen::Index k = 0; k < m.rows(); ++k) values(k) = static_cast<double>(es.eigenvalues()(k));
  vectors = narrow<Real>(es.eigenvectors());
}

template <class Real>
void general_spectrum(const ComplexMatrix& m, ComplexVector& values, ComplexMatrix& vectors) {
  Eigen::ComplexEigenSolver<CMat<Real>> es(widen<Real>(m));
  if (es.info() != Eigen::Success) fail(ErrorCode::kConvergence, "general eigensolver did not converge");
  values = narrow<Real>(CMat<Real>(es.eigenvalues()));
  vectors = narrow<Real>(es.eigenvectors());
}

}  // namespace bcdual::detail
