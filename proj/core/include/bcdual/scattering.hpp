#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bcdual/core.hpp"
#include "bcdual/dynamics.hpp"
#include "bcdual/laxops.hpp"

namespace bcdual {

enum class DecayModel {
  kExponential,  // ln|residual| linear in t
  kPower,        // ln|residual| linear in ln t
};

struct AsymptoticFit {
  Vector slope, intercept;
  double decay_rate_estimate = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> times;
  RealMatrix residuals;  // rows follow times
};

struct FitOptions {
  DecayModel decay = DecayModel::kExponential;
  // Fraction of the samples, counted from the far end, that the line is fitted on.
  double window_fraction = 0.5;
  // Residuals below this are treated as noise when estimating the rate.
  double noise_floor = 1e-12;
};

// Least-squares lines through the columns of x, one per coordinate.
AsymptoticFit fit_linear_asymptote(const std::vector<double>& times, const RealMatrix& x, const FitOptions& opts = {});
// Position fit on the samples with sign(t) matching side and |t| >= horizon.
AsymptoticFit fit_linear_asymptote(const Trajectory& traj, Side side, double horizon, const FitOptions& opts = {});

// Limits as |t| → ∞ of the columns of x, from least-squares polynomials of the given degree in 1/t.
Vector extrapolate_limit(const std::vector<double>& times, const RealMatrix& x, int degree = 5);

AsymptoticState wave_map_S(const PhasePointS& pt, const Couplings& c, Side side,
                           const DualityOptions& opts = {});
AsymptoticState scattering_map_S(const AsymptoticState& in, const Couplings& c,
                                 const PhaseShiftFn& delta = delta_phase);
AsymptoticState wave_map_R(const PhasePointR& pt, const Couplings& c, Side side,
                           const DualityOptions& opts = {});
AsymptoticState scattering_map_R(const AsymptoticState& in);
// (x, y) ↦ (−x, −y) on all of R^2n, without the ordering check.
Vector scattering_map_R(const Vector& xy);

// Δ(λ) split into one-body terms and the pair terms of each ordered pair.
struct DeltaDecomposition {
  Vector one_body;
  RealMatrix two_body;  // (a, b) entry is the contribution of particle b to Δ_a
  Vector total() const;
};
DeltaDecomposition decompose_delta(const Vector& lambda, const Couplings& c);

struct DecayOptions {
  double horizon = 0;  // 0 selects the default for the model
  int samples = 49;    // per window [T, 4T]
  double noise_floor = 1e-11;
  DualityOptions duality;
};

struct DecayReport {
  Model model = Model::kSutherland;
  Side side = Side::kPlus;
  bool pass = false;
  std::string reason;
  double horizon = 0;
  std::vector<double> times;             // |t|
  std::vector<double> position_residual;  // sup over particles
  std::vector<double> momentum_residual;
  std::vector<double> v_residual;  // RSvD only: sup_a |v_a(λ(t)) − 1|
  // Sutherland
  double rate_estimate = std::numeric_limits<double>::quiet_NaN();
  // RSvD: window sups of t·|λ-res|, t²·|θ-res|, t²·|v − 1| over [T, 4T] and [2T, 8T]
  double lambda_scaled[2] = {0, 0};
  double theta_scaled[2] = {0, 0};
  double v_scaled[2] = {0, 0};
  double worst_ratio = std::numeric_limits<double>::quiet_NaN();
};

// Default fit horizons: 8 / min gap of λ, and 20 / min gap of the RSvD asymptotic velocities 2 sinh 2q.
double sutherland_horizon(const Vector& lambda);
double rsvd_horizon(const Vector& q);

DecayReport verify_decay_rates_S(const PhasePointS& pt, const Couplings& c, Side side, const DecayOptions& opts = {});
DecayReport verify_decay_rates_R(const PhasePointR& pt, const Couplings& c, Side side, const DecayOptions& opts = {});

// Exponential-decay analysis of precomputed residual samples, as used by verify_decay_rates_S.
DecayReport analyze_exponential_decay(const std::vector<double>& times, const std::vector<double>& position_residual,
                                      const std::vector<double>& momentum_residual, double noise_floor);
// Power-law stability analysis on two windows, as used by verify_decay_rates_R.
DecayReport analyze_power_decay(const std::vector<double>& times, const std::vector<double>& lambda_residual,
                                const std::vector<double>& theta_residual, const std::vector<double>& v_residual,
                                double horizon);

}  // namespace bcdual
