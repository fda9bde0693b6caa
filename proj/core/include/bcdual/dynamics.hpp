#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "bcdual/core.hpp"
#include "bcdual/duality.hpp"

namespace bcdual {

class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);
  // steps points from tmin to tmax inclusive
  static TimeGrid uniform(double tmin, double tmax, int steps);

  const std::vector<double>& times() const noexcept { return times_; }
  int size() const noexcept { return static_cast<int>(times_.size()); }
  double operator[](int i) const { return times_[static_cast<std::size_t>(i)]; }
  int nearest_to_zero() const;

 private:
  std::vector<double> times_;
};

enum class Model { kSutherland, kRsvd };
enum class Method { kDuality, kOde };
enum class Observables { kFull, kLambdaOnly };

const char* to_string(Model m);
const char* to_string(Method m);

struct StepDiagnostics {
  double energy = std::numeric_limits<double>::quiet_NaN();
  int newton_iters = 0;
  double roundtrip_residual = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
  Model model = Model::kSutherland;
  Method method = Method::kDuality;
  Observables observables = Observables::kFull;
  TimeGrid grid{{0.0}};
  RealMatrix positions;  // rows are grid points; q or λ
  RealMatrix momenta;    // p or θ; empty in lambda_only mode
  std::vector<StepDiagnostics> steps;
  double energy0 = std::numeric_limits<double>::quiet_NaN();
  double max_energy_drift = std::numeric_limits<double>::quiet_NaN();  // relative to max(1, |H0|)

  int n() const { return static_cast<int>(positions.cols()); }
  bool has_momenta() const { return momenta.size() > 0; }
  PhasePointS state_S(int i) const;
  PhasePointR state_R(int i) const;
};

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double chamber_eps = kChamberMargin;
  double initial_step = 1e-3;
  long max_steps = 5'000'000;
};

struct SolveOptions {
  Method method = Method::kDuality;
  Observables observables = Observables::kFull;
  OdeOptions ode;
  DualityOptions duality;
  // Sequential continuation for RSvD full mode; false gives independent cold starts.
  bool warm_start = true;
  int threads = 1;
};

Trajectory solve_sutherland(const PhasePointS& pt0, const TimeGrid& grid, const Couplings& c,
                            const SolveOptions& opts = {});
Trajectory solve_rsvd(const PhasePointR& pt0, const TimeGrid& grid, const Couplings& c,
                      const SolveOptions& opts = {});

struct PhaseVelocity {
  Vector dx, dy;
};
PhaseVelocity ode_rhs_S(const PhasePointS& pt, const Couplings& c);
PhaseVelocity ode_rhs_R(const PhasePointR& pt, const Couplings& c);
// ∂H^R/∂λ
Vector hamiltonian_R_gradient_lambda(const Vector& lambda, const Vector& theta, const Couplings& c);

// Sutherland: positive spectrum of L at each state. RSvD: q of 𝒮⁻¹ at each state.
RealMatrix conserved_actions(const Trajectory& traj, const Couplings& c);

// Sup-norm distance over all stored coordinates; grids must match.
double trajectory_distance(const Trajectory& a, const Trajectory& b);

namespace ode {

using Rhs = std::function<Vector(double, const Vector&)>;
// Called after each accepted step with the new state; returning false aborts.
using StepGuard = std::function<bool(const Vector&)>;

// Integrates from t0 to each target in order (targets monotone away from t0),
// landing exactly on every target with an adaptive Dormand–Prince 5(4) pair.
std::vector<Vector> integrate(const Rhs& f, double t0, const Vector& y0, const std::vector<double>& targets,
                              const OdeOptions& opts, const StepGuard& guard = {});

}  // namespace ode

}  // namespace bcdual
