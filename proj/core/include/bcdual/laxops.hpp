#pragma once

#include <functional>

#include "bcdual/core.hpp"

namespace bcdual {

struct SutherlandLax {
  ComplexMatrix L;
  ComplexMatrix A;  // Hermitian block, diagonal = p
  ComplexMatrix B;  // anti-Hermitian block
};

struct RsvdLax {
  ComplexMatrix acal;  // 𝒜(λ, θ)
  ComplexMatrix abc;   // h⁻¹ 𝒜 h⁻¹
  ComplexVector fvec;  // ℱ
  ComplexVector vvec;  // 𝒜^{-1/2} ℱ
  double min_eigenvalue = 0;
};

double w_potential(double x);
double w_potential_prime(double x);

double hamiltonian_S(const PhasePointS& pt, const Couplings& c);
SutherlandLax build_lax_S(const PhasePointS& pt, const Couplings& c);
// L with p on the diagonal, skipping the phase-point validation of q
ComplexMatrix lax_matrix_S(const Vector& q, const Vector& p, const Couplings& c);

// Hermitian powers 𝒜^{1/2} and 𝒜^{-1/2} from a graded factorization of 𝒜.
struct AcalRoots {
  ComplexMatrix root, inv_root;
  ComplexMatrix vectors;  // eigenvectors of 𝒜
  Vector log_sqrt;        // ½ ln of the eigenvalues of 𝒜, descending
};
AcalRoots acal_roots(const Vector& lambda, const Vector& theta, const Couplings& c);

double v_factor(int a, const Vector& lambda, const Couplings& c);
double hamiltonian_R(const PhasePointR& pt, const Couplings& c);
ComplexMatrix build_acal(const Vector& lambda, const Vector& theta, const Couplings& c);
RsvdLax build_lax_R(const PhasePointR& pt, const Couplings& c);

struct Embedding {
  ComplexMatrix y;
  ComplexMatrix Y;
  ComplexMatrix rho;
  ComplexMatrix y_inv;
  // y·Y·y⁻¹ when the embedding can form it more accurately than the raw product
  ComplexMatrix conjugated;
};

Embedding embed_S(const PhasePointS& pt, const Couplings& c);
Embedding embed_R(const PhasePointR& pt, const Couplings& c);

struct MomentumResidual {
  double conjugated = 0;  // ‖(yYy⁻¹)_𝔨 + ρ‖
  double intrinsic = 0;   // ‖Y_𝔨 + iκC‖
  double value() const { return std::max(conjugated, intrinsic); }
};

ComplexMatrix anti_hermitian_part(const ComplexMatrix& m);
MomentumResidual momentum_residual(const Embedding& e, const Couplings& c);
double momentum_residual_S(const PhasePointS& pt, const Couplings& c);
double momentum_residual_R(const PhasePointR& pt, const Couplings& c);

using PhaseShiftFn = std::function<Vector(const Vector&, const Couplings&)>;

struct MinorCheck {
  Vector identity_residual;  // ln m_a + 2θ_a − Δ_a(λ)
  Vector closed_form_error;  // relative error of the Cauchy formula for det M^(a)
  bool singular = false;
  double max_identity() const { return identity_residual.cwiseAbs().maxCoeff(); }
  double max_closed_form() const { return closed_form_error.cwiseAbs().maxCoeff(); }
};

// delta replaces the phase-shift function, which lets tests corrupt it.
MinorCheck cauchy_minor_check(const PhasePointR& pt, const Couplings& c, const PhaseShiftFn& delta = delta_phase);

}  // namespace bcdual
