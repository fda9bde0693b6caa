#include "bcdual/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bcdual/laxops.hpp"
#include "ode_detail.hpp"

namespace bcdual {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) fail(ErrorCode::kInvalidInput, "time grid is empty");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i])) fail(ErrorCode::kInvalidInput, "time grid has a non-finite entry");
    if (i > 0 && !(times_[i] > times_[i - 1])) fail(ErrorCode::kInvalidInput, "time grid must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double tmin, double tmax, int steps) {
  if (steps < 2) fail(ErrorCode::kInvalidInput, "steps must be at least 2");
  if (!(tmin < tmax)) fail(ErrorCode::kInvalidInput, "tmin must be below tmax");
  std::vector<double> t(static_cast<std::size_t>(steps));
  const double h = (tmax - tmin) / (steps - 1);
  for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = tmin + i * h;
  t.back() = tmax;
  return TimeGrid(std::move(t));
}

int TimeGrid::nearest_to_zero() const {
  int best = 0;
  for (int i = 1; i < size(); ++i)
    if (std::abs((*this)[i]) < std::abs((*this)[best])) best = i;
  return best;
}

const char* to_string(Model m) { return m == Model::kSutherland ? "sutherland" : "rsvd"; }
const char* to_string(Method m) { return m == Method::kDuality ? "duality" : "ode"; }

PhasePointS Trajectory::state_S(int i) const {
  if (model != Model::kSutherland) fail(ErrorCode::kInvalidInput, "trajectory is not a Sutherland trajectory");
  return PhasePointS(positions.row(i).transpose(), momenta.row(i).transpose());
}

PhasePointR Trajectory::state_R(int i) const {
  if (model != Model::kRsvd) fail(ErrorCode::kInvalidInput, "trajectory is not an RSvD trajectory");
  if (!has_momenta()) fail(ErrorCode::kInvalidInput, "lambda-only trajectory has no angles");
  return PhasePointR(positions.row(i).transpose(), momenta.row(i).transpose());
}

namespace {

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr first;
  std::mutex m;
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!first) first = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

// Splits grid indices into the t >= 0 part (ascending) and t < 0 part (descending).
void split_grid(const TimeGrid& g, std::vector<int>& fwd, std::vector<int>& bwd) {
  for (int i = 0; i < g.size(); ++i) (g[i] >= 0 ? fwd : bwd).push_back(i);
  std::reverse(bwd.begin(), bwd.end());
}

Trajectory make_trajectory(Model model, const SolveOptions& opts, const TimeGrid& grid, int n, bool momenta) {
  Trajectory tr;
  tr.model = model;
  tr.method = opts.method;
  tr.observables = opts.observables;
  tr.grid = grid;
  tr.positions.resize(grid.size(), n);
  if (momenta) tr.momenta.resize(grid.size(), n);
  tr.steps.resize(static_cast<std::size_t>(grid.size()));
  return tr;
}

void finish_energy(Trajectory& tr, const Couplings& c, double h0) {
  tr.energy0 = h0;
  if (!tr.has_momenta()) return;
  double drift = 0;
  for (int i = 0; i < tr.grid.size(); ++i) {
    const double h = tr.model == Model::kSutherland ? hamiltonian_S(tr.state_S(i), c) : hamiltonian_R(tr.state_R(i), c);
    tr.steps[static_cast<std::size_t>(i)].energy = h;
    drift = std::max(drift, std::abs(h - h0));
  }
  tr.max_energy_drift = drift / std::max(1.0, std::abs(h0));
}

void integrate_grid(Trajectory& tr, const ode::Rhs& f, const Vector& y0, int n, const OdeOptions& opts) {
  std::vector<int> fwd, bwd;
  split_grid(tr.grid, fwd, bwd);
  auto guard = [&](const Vector& y) { return validate_chamber(y.head(n), opts.chamber_eps); };
  for (const auto* side : {&fwd, &bwd}) {
    std::vector<double> targets;
    for (int i : *side) targets.push_back(tr.grid[i]);
    const std::vector<Vector> ys = ode::integrate(f, 0.0, y0, targets, opts, guard);
    for (std::size_t k = 0; k < side->size(); ++k) {
      tr.positions.row((*side)[k]) = ys[k].head(n).transpose();
      tr.momenta.row((*side)[k]) = ys[k].tail(n).transpose();
    }
  }
}

}  // namespace

Trajectory solve_sutherland(const PhasePointS& pt0, const TimeGrid& grid, const Couplings& c, const SolveOptions& opts) {
  const int n = pt0.n();
  Trajectory tr = make_trajectory(Model::kSutherland, opts, grid, n, true);

  if (opts.method == Method::kOde) {
    auto f = [&c, n](double, const Vector& y) {
      return pack(y.tail(n), detail::sutherland_force(y.head(n), c));
    };
    integrate_grid(tr, f, pack(pt0), n, opts.ode);
  } else {
    const DualityResult<PhasePointR> dual = dualize_S_to_R(pt0, c, opts.duality);
    const Vector& lambda = dual.point.lambda();
    parallel_for(grid.size(), opts.threads, [&](int i) {
      const double t = grid[i];
      if (t == 0) {
        tr.positions.row(i) = pt0.q().transpose();
        tr.momenta.row(i) = pt0.p().transpose();
        return;
      }
      const PhasePointR moved(lambda, dual.point.theta() - t * lambda);
      const PhasePointS s = dualize_R_to_S(moved, c, opts.duality).point;
      tr.positions.row(i) = s.q().transpose();
      tr.momenta.row(i) = s.p().transpose();
    });
  }
  finish_energy(tr, c, hamiltonian_S(pt0, c));
  return tr;
}

namespace {

PhasePointS shifted_dual(const PhasePointS& qp, double t) {
  Vector p = qp.p();
  for (Eigen::Index a = 0; a < p.size(); ++a) p(a) -= 2 * t * std::sinh(2 * qp.q()(a));
  return PhasePointS(qp.q(), p);
}

}  // namespace

Trajectory solve_rsvd(const PhasePointR& pt0, const TimeGrid& grid, const Couplings& c, const SolveOptions& opts) {
  const int n = pt0.n();
  const bool lambda_only = opts.method == Method::kDuality && opts.observables == Observables::kLambdaOnly;
  Trajectory tr = make_trajectory(Model::kRsvd, opts, grid, n, !lambda_only);
  if (opts.method == Method::kOde) tr.observables = Observables::kFull;

  if (opts.method == Method::kOde) {
    auto f = [&c, n](double, const Vector& y) {
      const Vector lam = y.head(n), th = y.tail(n);
      return pack(detail::rsvd_lambda_velocity(lam, th, c), -detail::rsvd_lambda_gradient(lam, th, c));
    };
    integrate_grid(tr, f, pack(pt0), n, opts.ode);
  } else {
    const PhasePointS qp = dualize_R_to_S(pt0, c, opts.duality).point;
    auto store = [&](int i, const Vector& lambda, const Vector* theta) {
      tr.positions.row(i) = lambda.transpose();
      if (theta) tr.momenta.row(i) = theta->transpose();
    };
    auto solve_cold = [&](int i) {
      const double t = grid[i];
      if (t == 0) return store(i, pt0.lambda(), &pt0.theta());
      if (lambda_only) return store(i, action_variables(shifted_dual(qp, t), c, opts.duality.precision), nullptr);
      const DualityResult<PhasePointR> r = dualize_S_to_R(shifted_dual(qp, t), c, opts.duality);
      tr.steps[static_cast<std::size_t>(i)].newton_iters = r.diagnostics.newton_iters;
      tr.steps[static_cast<std::size_t>(i)].roundtrip_residual = r.diagnostics.roundtrip_residual;
      store(i, r.point.lambda(), &r.point.theta());
    };

    if (lambda_only || !opts.warm_start) {
      parallel_for(grid.size(), opts.threads, solve_cold);
    } else {
      std::vector<int> fwd, bwd;
      split_grid(grid, fwd, bwd);
      for (const auto* side : {&fwd, &bwd}) {
        PhasePointR prev = pt0;
        double tprev = 0;
        for (int i : *side) {
          const double t = grid[i];
          if (t == 0) {
            store(i, pt0.lambda(), &pt0.theta());
            continue;
          }
          // linear predictor from the angle velocity at the previous point
          const Vector dtheta = -detail::rsvd_lambda_gradient(prev.lambda(), prev.theta(), c);
          DualityOptions o = opts.duality;
          o.warm_start = Vector(prev.theta() + (t - tprev) * dtheta);
          DualityResult<PhasePointR> r = [&] {
            try {
              return dualize_S_to_R(shifted_dual(qp, t), c, o);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::kNewtonFailure && e.code() != ErrorCode::kSeedFailure) throw;
              return dualize_S_to_R(shifted_dual(qp, t), c, opts.duality);
            }
          }();
          tr.steps[static_cast<std::size_t>(i)].newton_iters = r.diagnostics.newton_iters;
          tr.steps[static_cast<std::size_t>(i)].roundtrip_residual = r.diagnostics.roundtrip_residual;
          store(i, r.point.lambda(), &r.point.theta());
          prev = r.point;
          tprev = t;
        }
      }
    }
  }
  finish_energy(tr, c, hamiltonian_R(pt0, c));
  return tr;
}

RealMatrix conserved_actions(const Trajectory& traj, const Couplings& c) {
  const int n = traj.n();
  RealMatrix out(traj.grid.size(), n);
  for (int i = 0; i < traj.grid.size(); ++i) {
    if (traj.model == Model::kSutherland) {
      out.row(i) = action_variables(traj.state_S(i), c).transpose();
    } else {
      out.row(i) = dualize_R_to_S(traj.state_R(i), c).point.q().transpose();
    }
  }
  return out;
}

double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  if (a.grid.times() != b.grid.times() || a.n() != b.n())
    fail(ErrorCode::kInvalidInput, "trajectories live on different grids");
  double d = (a.positions - b.positions).cwiseAbs().maxCoeff();
  if (a.has_momenta() && b.has_momenta()) d = std::max(d, (a.momenta - b.momenta).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace bcdual
