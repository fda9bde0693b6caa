#include <cmath>
#include <random>
#include <sstream>

#include <bcdual/duality.hpp>
#include <bcdual/dynamics.hpp>
#include <bcdual/laxops.hpp>
#include <bcdual/matengine.hpp>
#include <bcdual/sampling.hpp>
#include <bcdual/scattering.hpp>

#include "verify.hpp"

namespace bcdual::cli {

namespace {

const std::vector<Couplings>& couplings() {
  static const std::vector<Couplings> c = sampling::reference_couplings();
  return c;
}

CheckResult bound(double value, double threshold, std::string detail = {}) {
  return {value <= threshold, value, threshold, std::move(detail)};
}

// Runs fn(rng, n, couplings) count times for each n, cycling through the coupling sets,
// and returns the largest value it reports.
template <class Fn>
double worst_over(const VerifyOptions& o, std::initializer_list<int> ns, int count, Fn&& fn) {
  std::mt19937_64 rng(o.seed);
  double worst = 0;
  for (int n : ns)
    for (int k = 0; k < count; ++k) {
      const double v = fn(rng, n, couplings()[static_cast<std::size_t>(k) % couplings().size()]);
      if (!(v <= worst)) worst = v;  // keeps NaN
    }
  return worst;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// core ------------------------------------------------------------------

CheckResult coupling_validation(const VerifyOptions&) {
  int bad = 0;
  auto rejects = [&](double mu, double nu, double kappa) {
    try {
      couplings_from_rsvd(mu, nu, kappa);
      ++bad;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidParameter) ++bad;
    }
  };
  rejects(1, 1, 0);
  rejects(-1, 0, 0);
  rejects(-1, 1, -0.5);
  try {
    const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
    if (c.g_sq() != 1 || c.g1_sq() != 0.5 || c.g2_sq() != 1.125) ++bad;
  } catch (const Error&) {
    ++bad;
  }
  return bound(bad, 0, "invalid couplings rejected, derived couplings exact");
}

CheckResult alpha_beta_identities(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> ux(0.05, 20), uk(0, 3);
  double worst = 0;
  for (int k = 0; k < 200; ++k) {
    const double x = ux(rng), ka = uk(rng);
    const AlphaBeta ab = alpha_beta(x, ka);
    const Complex a(ab.alpha, 0), b = ab.beta;
    worst = std::max({worst, std::abs(a * a + b * b - 1.0), std::abs(a * a - b * b - std::sqrt(1 + ka * ka / (x * x))) / std::sqrt(1 + ka * ka / (x * x)),
                      std::abs(2.0 * a * b - Complex(0, ka / x)) / std::max(1e-300, ka / x)});
  }
  return bound(worst, 1e-13);
}

CheckResult h_inverse_square(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 4, 8}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const Vector lam = sampling::random_chamber(rng, n);
                            const ComplexMatrix hi = build_h(lam, c).inverse();
                            const ComplexMatrix direct = hi * hi;
                            return (h_inv_sq_closed_form(lam, c) - direct).norm() / direct.norm();
                          }),
               1e-12);
}

CheckResult xi_antihermitian(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 3, 6}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            std::normal_distribution<double> g;
                            ComplexVector v(2 * n);
                            for (int i = 0; i < 2 * n; ++i) v(i) = Complex(g(rng), g(rng));
                            const ComplexMatrix x = build_xi(v, c);
                            return (x + x.adjoint()).norm() / std::max(1.0, x.norm());
                          }),
               1e-14);
}

CheckResult delta_pair_cancellation(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 6}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const Vector lam = sampling::random_chamber(rng, n);
                            const double m4 = 4 * c.mu() * c.mu();
                            double expect = 0;
                            for (int a = 0; a < n; ++a) {
                              expect += 0.5 * std::log1p(c.nu() * c.nu() / (lam(a) * lam(a))) +
                                        0.5 * std::log1p(c.kappa() * c.kappa() / (lam(a) * lam(a)));
                              for (int b = 0; b < n; ++b)
                                if (b != a) expect += 0.5 * std::log1p(m4 / ((lam(a) + lam(b)) * (lam(a) + lam(b))));
                            }
                            return rel(delta_phase(lam, c).sum(), expect);
                          }),
               1e-13);
}

CheckResult eig_residual(const VerifyOptions& o) {
  return bound(worst_over(o, {2, 4, 8}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings&) {
                            std::normal_distribution<double> g;
                            ComplexMatrix m(n, n);
                            for (int i = 0; i < n; ++i)
                              for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
                            m = (m + m.adjoint()).eval();
                            const mat::EigenResult e = mat::eig_hermitian(m);
                            const ComplexMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
                            return (rec - m).norm() / m.norm();
                          }),
               1e-10);
}

CheckResult spectrum_pairing(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 3, 6}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS pt = sampling::random_point_S(rng, n);
                            const ComplexMatrix L = lax_matrix_S(pt.q(), pt.p(), c);
                            if (!in_algebra_g(L, 1e-12)) return std::numeric_limits<double>::infinity();
                            return mat::eig_general_real_spectrum(L, {}, true).pairing_residual;
                          }),
               1e-10);
}

CheckResult extended_agreement(const VerifyOptions& o) {
  return bound(worst_over(o, {2, 4}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR pt = sampling::random_point_R(rng, n);
                            const ComplexMatrix a = build_lax_R(pt, c).abc;
                            const Vector d = mat::eig_hermitian(a).values;
                            const Vector e = mat::eig_hermitian(a, mat::PrecisionConfig::extended(128)).values;
                            return (d - e).cwiseAbs().maxCoeff() / d.cwiseAbs().maxCoeff();
                          }),
               1e-13);
}

// lax -------------------------------------------------------------------

CheckResult energy_S(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 6, 8}, 10,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS pt = sampling::random_point_S(rng, n);
                            const ComplexMatrix L = build_lax_S(pt, c).L;
                            return rel(0.25 * (L * L).trace().real(), hamiltonian_S(pt, c));
                          }),
               1e-10);
}

CheckResult energy_R(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 6, 8}, 10,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR pt = sampling::random_point_R(rng, n);
                            const ComplexMatrix A = build_acal(pt.lambda(), pt.theta(), c);
                            return rel(0.5 * (A * h_inv_sq_closed_form(pt.lambda(), c)).trace().real(),
                                       hamiltonian_R(pt, c));
                          }),
               1e-10);
}

CheckResult momentum_S(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 6}, 8,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            return momentum_residual_S(sampling::random_point_S(rng, n), c);
                          }),
               1e-9);
}

CheckResult momentum_R(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 6}, 8,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            return momentum_residual_R(sampling::random_point_R(rng, n), c);
                          }),
               1e-9);
}

CheckResult bc_spectrum_inversion(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 5,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR pt = sampling::random_point_R(rng, n);
                            const Vector ev = mat::eig_hermitian(build_lax_R(pt, c).abc).values;
                            const int N = 2 * n;
                            double w = 0;
                            for (int k = 0; k < n; ++k) w = std::max(w, std::abs(ev(k) * ev(N - 1 - k) - 1));
                            return w;
                          }),
               1e-10);
}

CheckResult minor_check(const VerifyOptions& o, bool identity) {
  PhaseShiftFn delta = delta_phase;
  if (o.fault == "delta-sign") delta = [](const Vector& l, const Couplings& c) { return Vector(-delta_phase(l, c)); };
  return bound(worst_over(o, {1, 2, 3, 4, 6}, 6,
                          [&](std::mt19937_64& rng, int n, const Couplings& c) {
                            const MinorCheck m = cauchy_minor_check(sampling::random_point_R(rng, n), c, delta);
                            if (m.singular) return std::numeric_limits<double>::infinity();
                            return identity ? m.max_identity() : m.max_closed_form();
                          }),
               1e-10);
}

// duality ---------------------------------------------------------------

CheckResult roundtrip_s2r2s(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 5, 6}, 4,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS pt = sampling::random_point_S(rng, n);
                            const PhasePointS back = dualize_R_to_S(dualize_S_to_R(pt, c).point, c).point;
                            return (pack(back) - pack(pt)).cwiseAbs().maxCoeff();
                          }),
               1e-8);
}

CheckResult roundtrip_r2s2r(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4, 5, 6}, 4,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR pt = sampling::random_point_R(rng, n);
                            const PhasePointR back = dualize_S_to_R(dualize_R_to_S(pt, c).point, c).point;
                            return (pack(back) - pack(pt)).cwiseAbs().maxCoeff();
                          }),
               1e-8);
}

CheckResult newton_iterations(const VerifyOptions& o) {
  int total = 0, slow = 0;
  worst_over(o, {1, 2, 3, 4, 6}, 4, [&](std::mt19937_64& rng, int n, const Couplings& c) {
    ++total;
    if (dualize_S_to_R(sampling::random_point_S(rng, n), c).diagnostics.newton_iters > 10) ++slow;
    return 0.0;
  });
  const double frac = static_cast<double>(slow) / total;
  std::ostringstream os;
  os << slow << " of " << total << " solves needed more than 10 iterations";
  return bound(frac, 0.05, os.str());
}

CheckResult action_variables_check(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 4,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS pt = sampling::random_point_S(rng, n);
                            const Vector lam = dualize_S_to_R(pt, c).point.lambda();
                            // independent route: quad-precision eigensolve of L
                            const Vector ext = mat::eig_general_real_spectrum(lax_matrix_S(pt.q(), pt.p(), c),
                                                                              mat::PrecisionConfig::extended(128))
                                                   .values.head(n);
                            return (lam - ext).cwiseAbs().maxCoeff() / std::max(1.0, lam(0));
                          }),
               1e-10);
}

CheckResult bc_spectrum_at_dual(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 4,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS pt = sampling::random_point_S(rng, n);
                            const PhasePointR d = dualize_S_to_R(pt, c).point;
                            const Vector ev = mat::eig_hermitian(build_lax_R(d, c).abc).values;
                            double w = 0;
                            for (int a = 0; a < n; ++a) w = std::max(w, std::abs(ev(a) / std::exp(2 * pt.q()(a)) - 1));
                            return w;
                          }),
               1e-10);
}

double forward_certificate(const PhasePointS& pt, const Couplings& c) {
  auto f = [&c](const Vector& x) { return pack(dualize_S_to_R(unpack_S(x), c).point); };
  return symplecticity_certificate(f, pack(pt), 1e-5);
}

double inverse_certificate(const PhasePointR& pt, const Couplings& c) {
  auto f = [&c](const Vector& x) { return pack(dualize_R_to_S(unpack_R(x), c).point); };
  return symplecticity_certificate(f, pack(pt), 1e-5);
}

CheckResult symplectic_forward(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            return forward_certificate(sampling::random_point_S(rng, n), c);
                          }),
               1e-5);
}

CheckResult symplectic_inverse(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            return inverse_certificate(sampling::random_point_R(rng, n), c);
                          }),
               1e-5);
}

CheckResult n1_closed_form(const VerifyOptions&) {
  const Couplings c = couplings_from_rsvd(-1, 2, 0);
  Vector lam(1), th(1);
  lam << 2;
  th << 0;
  const PhasePointS s = dualize_R_to_S(PhasePointR(lam, th), c).point;
  const double q = 0.5 * std::log(1 + std::sqrt(2.0));
  return bound(std::max(std::abs(s.q()(0) - q), std::abs(s.p()(0))), 1e-12, "lambda=2, theta=0, nu=2, kappa=0");
}

// dynamics --------------------------------------------------------------

CheckResult energy_conservation(const VerifyOptions& o) {
  const TimeGrid grid = TimeGrid::uniform(-10, 10, 41);
  return bound(worst_over(o, {1, 2, 4}, 2,
                          [&](std::mt19937_64& rng, int n, const Couplings& c) {
                            double w = 0;
                            const PhasePointS s = sampling::random_point_S(rng, n);
                            const PhasePointR r = sampling::random_point_R(rng, n);
                            for (Method m : {Method::kDuality, Method::kOde}) {
                              SolveOptions so;
                              so.method = m;
                              w = std::max(w, solve_sutherland(s, grid, c, so).max_energy_drift);
                              w = std::max(w, solve_rsvd(r, grid, c, so).max_energy_drift);
                            }
                            return w;
                          }),
               1e-8);
}

double method_distance_S(std::mt19937_64& rng, int n, const Couplings& c) {
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 41);
  const PhasePointS s = sampling::random_point_S(rng, n);
  SolveOptions ode;
  ode.method = Method::kOde;
  return trajectory_distance(solve_sutherland(s, grid, c), solve_sutherland(s, grid, c, ode));
}

double method_distance_R(std::mt19937_64& rng, int n, const Couplings& c) {
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 41);
  const PhasePointR r = sampling::random_point_R(rng, n);
  SolveOptions ode;
  ode.method = Method::kOde;
  return trajectory_distance(solve_rsvd(r, grid, c), solve_rsvd(r, grid, c, ode));
}

CheckResult method_agreement_S(const VerifyOptions& o) { return bound(worst_over(o, {1, 2, 3}, 3, method_distance_S), 1e-6); }
CheckResult method_agreement_R(const VerifyOptions& o) { return bound(worst_over(o, {1, 2, 3}, 3, method_distance_R), 1e-6); }

CheckResult conserved(const VerifyOptions& o) {
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 21);
  return bound(worst_over(o, {2, 3}, 2,
                          [&](std::mt19937_64& rng, int n, const Couplings& c) {
                            SolveOptions ode;
                            ode.method = Method::kOde;
                            double w = 0;
                            for (const Trajectory& tr : {solve_sutherland(sampling::random_point_S(rng, n), grid, c, ode),
                                                         solve_rsvd(sampling::random_point_R(rng, n), grid, c)}) {
                              const RealMatrix a = conserved_actions(tr, c);
                              for (int i = 0; i < a.rows(); ++i) w = std::max(w, (a.row(i) - a.row(0)).cwiseAbs().maxCoeff());
                            }
                            return w;
                          }),
               1e-8);
}

CheckResult eigenvalue_flow_S(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS s0 = sampling::random_point_S(rng, n);
                            const TimeGrid grid({-2, -1, 0.5, 2});
                            const Trajectory tr = solve_sutherland(s0, grid, c);
                            const PhasePointR d = dualize_S_to_R(s0, c).point;
                            const int N = 2 * n;
                            const ComplexMatrix A = build_acal(d.lambda(), d.theta(), c);
                            const ComplexMatrix Lam = build_Lambda(d.lambda());
                            const ComplexMatrix C = build_C(n);
                            const ComplexMatrix Li = Lam.diagonal().cwiseInverse().asDiagonal();
                            double w = 0;
                            for (int i = 0; i < grid.size(); ++i) {
                              ComplexMatrix D = ComplexMatrix::Zero(N, N);
                              for (int k = 0; k < N; ++k) {
                                const double l = Lam(k, k).real();
                                D(k, k) = std::sqrt(1 + c.kappa() * c.kappa() / (l * l)) * std::exp(2 * grid[i] * l);
                              }
                              const ComplexMatrix M = A * D + Complex(0, c.kappa()) * A * C * Li;
                              const Vector ev = mat::eig_general_real_spectrum(M).values;
                              Vector ref(N);
                              for (int a = 0; a < n; ++a) {
                                ref(a) = std::exp(2 * tr.positions(i, a));
                                ref(N - 1 - a) = std::exp(-2 * tr.positions(i, a));
                              }
                              w = std::max(w, (ev - ref).cwiseAbs().maxCoeff() / ref(0));
                            }
                            return w;
                          }),
               1e-8);
}

CheckResult eigenvalue_flow_R(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR r0 = sampling::random_point_R(rng, n);
                            const TimeGrid grid({-2, -1, 0.5, 2});
                            const Trajectory tr = solve_rsvd(r0, grid, c);
                            const ComplexMatrix abc = build_lax_R(r0, c).abc;
                            const ComplexMatrix X = build_h(r0.lambda(), c) * build_Lambda(r0.lambda()) * build_h_inv(r0.lambda(), c);
                            const ComplexMatrix B = abc - abc.inverse();
                            const int N = 2 * n;
                            double w = 0;
                            for (int i = 0; i < grid.size(); ++i) {
                              const Vector ev = mat::eig_general_real_spectrum(X - grid[i] * B).values;
                              Vector ref(N);
                              for (int a = 0; a < n; ++a) {
                                ref(a) = tr.positions(i, a);
                                ref(N - 1 - a) = -tr.positions(i, a);
                              }
                              w = std::max(w, (ev - ref).cwiseAbs().maxCoeff() / ref(0));
                            }
                            return w;
                          }),
               1e-8);
}

CheckResult time_reversal(const VerifyOptions& o) {
  return bound(worst_over(o, {2, 3}, 2,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const TimeGrid grid = TimeGrid::uniform(-3, 3, 13);
                            const PhasePointS s = sampling::random_point_S(rng, n);
                            const PhasePointR r = sampling::random_point_R(rng, n);
                            const Trajectory a = solve_sutherland(s, grid, c);
                            const Trajectory b = solve_sutherland(PhasePointS(s.q(), -s.p()), grid, c);
                            const Trajectory e = solve_rsvd(r, grid, c);
                            const Trajectory f = solve_rsvd(PhasePointR(r.lambda(), -r.theta()), grid, c);
                            double w = 0;
                            for (int i = 0; i < grid.size(); ++i) {
                              const int j = grid.size() - 1 - i;
                              w = std::max(w, (a.positions.row(i) - b.positions.row(j)).cwiseAbs().maxCoeff());
                              w = std::max(w, (e.positions.row(i) - f.positions.row(j)).cwiseAbs().maxCoeff());
                            }
                            return w;
                          }),
               1e-8);
}

CheckResult rhs_gradient(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR r = sampling::random_point_R(rng, n);
                            const Vector g = hamiltonian_R_gradient_lambda(r.lambda(), r.theta(), c);
                            double w = 0;
                            for (int a = 0; a < n; ++a) {
                              const double h = 1e-5 * std::max(1.0, r.lambda()(a));
                              Vector lp = r.lambda(), lm = r.lambda();
                              lp(a) += h;
                              lm(a) -= h;
                              const double fd = (hamiltonian_R(PhasePointR(lp, r.theta()), c) -
                                                 hamiltonian_R(PhasePointR(lm, r.theta()), c)) / (2 * h);
                              w = std::max(w, std::abs(fd - g(a)) / std::max(1.0, std::abs(g(a))));
                            }
                            return w;
                          }),
               1e-7);
}

// scattering ------------------------------------------------------------

double composition_S(const PhasePointS& s, const Couplings& c) {
  const AsymptoticState out = scattering_map_S(wave_map_S(s, c, Side::kMinus), c);
  const AsymptoticState wp = wave_map_S(s, c, Side::kPlus);
  return std::max((out.x() - wp.x()).cwiseAbs().maxCoeff(), (out.y() - wp.y()).cwiseAbs().maxCoeff());
}

CheckResult composition_S_check(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            return composition_S(sampling::random_point_S(rng, n), c);
                          }),
               1e-10);
}

CheckResult composition_R_check(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointR r = sampling::random_point_R(rng, n);
                            const AsymptoticState out = scattering_map_R(wave_map_R(r, c, Side::kMinus));
                            const AsymptoticState wp = wave_map_R(r, c, Side::kPlus);
                            return std::max((out.x() - wp.x()).cwiseAbs().maxCoeff(), (out.y() - wp.y()).cwiseAbs().maxCoeff());
                          }),
               1e-10);
}

struct SutherlandFits {
  AsymptoticState wm, wp;
  AsymptoticFit fm, fp;
  Vector pm, pp;  // mean momenta over the fit windows
};

SutherlandFits sutherland_fits(const PhasePointS& s, const Couplings& c) {
  const AsymptoticState wp = wave_map_S(s, c, Side::kPlus);
  const AsymptoticState wm = wave_map_S(s, c, Side::kMinus);
  const double T = sutherland_horizon(wp.y());
  std::vector<double> t;
  for (int k = 32; k >= 0; --k) t.push_back(-T * (1 + k / 32.0));
  for (int k = 0; k <= 32; ++k) t.push_back(T * (1 + k / 32.0));
  const Trajectory tr = solve_sutherland(s, TimeGrid(t), c);
  // momentum asymptotes: the latest sample on each side
  return {wm, wp, fit_linear_asymptote(tr, Side::kMinus, T), fit_linear_asymptote(tr, Side::kPlus, T),
          tr.momenta.row(0).transpose(), tr.momenta.row(tr.grid.size() - 1).transpose()};
}

CheckResult fit_agreement(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const SutherlandFits f = sutherland_fits(sampling::random_point_S(rng, n), c);
                            return std::max({(f.fp.intercept - f.wp.x()).cwiseAbs().maxCoeff(),
                                             (f.fp.slope - f.wp.y()).cwiseAbs().maxCoeff(),
                                             (f.fm.intercept - f.wm.x()).cwiseAbs().maxCoeff(),
                                             (f.fm.slope - f.wm.y()).cwiseAbs().maxCoeff()});
                          }),
               1e-6);
}

CheckResult pure_soliton(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3, 4}, 2,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS s = sampling::random_point_S(rng, n);
                            const SutherlandFits f = sutherland_fits(s, c);
                            const Vector lam = action_variables(s, c);
                            return std::max({(f.pp - lam).cwiseAbs().maxCoeff(), (f.pm + lam).cwiseAbs().maxCoeff(),
                                             (f.fp.slope - lam).cwiseAbs().maxCoeff(),
                                             (f.fm.slope + lam).cwiseAbs().maxCoeff()});
                          }),
               1e-6);
}

CheckResult factorization(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const SutherlandFits f = sutherland_fits(sampling::random_point_S(rng, n), c);
                            const Vector shift = f.fp.intercept + f.fm.intercept;
                            return (shift - decompose_delta(f.wp.y(), c).total()).cwiseAbs().maxCoeff();
                          }),
               1e-6);
}

CheckResult decay_S(const VerifyOptions& o) {
  int bad = 0, total = 0;
  std::string why;
  worst_over(o, {1, 2, 3}, 3, [&](std::mt19937_64& rng, int n, const Couplings& c) {
    const PhasePointS s = sampling::random_point_S(rng, n);
    for (Side side : {Side::kPlus, Side::kMinus}) {
      ++total;
      const DecayReport r = verify_decay_rates_S(s, c, side);
      if (!r.pass) {
        ++bad;
        why = r.reason;
      }
    }
    return 0.0;
  });
  return bound(bad, 0, why.empty() ? std::to_string(total) + " decay reports passed" : why);
}

CheckResult decay_R(const VerifyOptions& o) {
  double worst = 0;
  std::string why;
  worst_over(o, {1, 2, 3}, 2, [&](std::mt19937_64& rng, int n, const Couplings& c) {
    const PhasePointR r = sampling::random_point_R(rng, n);
    for (Side side : {Side::kPlus, Side::kMinus}) {
      const DecayReport d = verify_decay_rates_R(r, c, side);
      if (!d.pass) why = d.reason;
      worst = std::max(worst, d.pass ? d.worst_ratio : std::numeric_limits<double>::infinity());
    }
    return 0.0;
  });
  return bound(worst, 2.0, why.empty() ? "largest change of a scaled residual sup under T -> 2T" : why);
}

CheckResult symplectic_maps(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const PhasePointS s = sampling::random_point_S(rng, n);
                            const AsymptoticState wm = wave_map_S(s, c, Side::kMinus);
                            auto fs = [&c, n](const Vector& v) {
                              const AsymptoticState out = scattering_map_S(AsymptoticState(v.head(n), v.tail(n), Side::kMinus), c);
                              return pack(out.x(), out.y());
                            };
                            auto fr = [n](const Vector& v) {
                              const AsymptoticState out = scattering_map_R(AsymptoticState(v.head(n), v.tail(n), Side::kMinus));
                              return pack(out.x(), out.y());
                            };
                            const Vector x = pack(wm.x(), wm.y());
                            return std::max(symplecticity_certificate(fs, x, 1e-5), symplecticity_certificate(fr, x, 1e-5));
                          }),
               1e-5);
}

CheckResult zero_delta_consistency(const VerifyOptions& o) {
  return bound(worst_over(o, {1, 2, 3}, 3,
                          [](std::mt19937_64& rng, int n, const Couplings& c) {
                            const Vector lam = sampling::random_chamber(rng, n);
                            std::normal_distribution<double> g;
                            Vector x(n);
                            for (int a = 0; a < n; ++a) x(a) = g(rng);
                            const AsymptoticState in(x, -lam, Side::kMinus);
                            auto zero = [](const Vector& l, const Couplings&) { return Vector(Vector::Zero(l.size())); };
                            const AsymptoticState s = scattering_map_S(in, c, zero), r = scattering_map_R(in);
                            return std::max((s.x() - r.x()).cwiseAbs().maxCoeff(), (s.y() - r.y()).cwiseAbs().maxCoeff());
                          }),
               0.0);
}

CheckResult synthetic_decay(const VerifyOptions&) {
  // residuals exactly e^{−1.5 t}: the analysis must pass and recover the rate
  std::vector<double> t, pos, mom;
  for (int k = 0; k < 40; ++k) {
    t.push_back(2 + 0.25 * k);
    pos.push_back(3 * std::exp(-1.5 * t.back()));
    mom.push_back(std::exp(-1.5 * t.back()));
  }
  const DecayReport r = analyze_exponential_decay(t, pos, mom, 1e-14);
  return {r.pass && std::abs(r.rate_estimate - 1.5) <= 1e-9, std::abs(r.rate_estimate - 1.5), 1e-9, r.reason};
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> checks = {
      {"core.coupling_validation", "core", coupling_validation},
      {"core.alpha_beta_identities", "core", alpha_beta_identities},
      {"core.h_inverse_square", "core", h_inverse_square},
      {"core.xi_antihermitian", "core", xi_antihermitian},
      {"core.delta_pair_cancellation", "core", delta_pair_cancellation},
      {"core.eig_residual", "core", eig_residual},
      {"core.spectrum_pairing", "core", spectrum_pairing},
      {"core.extended_agreement", "core", extended_agreement},
      {"lax.energy_sutherland", "lax", energy_S},
      {"lax.energy_rsvd", "lax", energy_R},
      {"lax.momentum_sutherland", "lax", momentum_S},
      {"lax.momentum_rsvd", "lax", momentum_R},
      {"lax.bc_spectrum_inversion", "lax", bc_spectrum_inversion},
      {"lax.minor_identity", "lax", [](const VerifyOptions& o) { return minor_check(o, true); }},
      {"lax.minor_closed_form", "lax", [](const VerifyOptions& o) { return minor_check(o, false); }},
      {"duality.roundtrip_s2r2s", "duality", roundtrip_s2r2s},
      {"duality.roundtrip_r2s2r", "duality", roundtrip_r2s2r},
      {"duality.newton_iterations", "duality", newton_iterations},
      {"duality.action_variables", "duality", action_variables_check},
      {"duality.bc_spectrum", "duality", bc_spectrum_at_dual},
      {"duality.symplectic_forward", "duality", symplectic_forward},
      {"duality.symplectic_inverse", "duality", symplectic_inverse},
      {"duality.n1_closed_form", "duality", n1_closed_form},
      {"dynamics.energy_conservation", "dynamics", energy_conservation},
      {"dynamics.method_agreement_sutherland", "dynamics", method_agreement_S},
      {"dynamics.method_agreement_rsvd", "dynamics", method_agreement_R},
      {"dynamics.conserved_actions", "dynamics", conserved},
      {"dynamics.eigenvalue_flow_sutherland", "dynamics", eigenvalue_flow_S},
      {"dynamics.eigenvalue_flow_rsvd", "dynamics", eigenvalue_flow_R},
      {"dynamics.time_reversal", "dynamics", time_reversal},
      {"dynamics.rhs_gradient", "dynamics", rhs_gradient},
      {"scattering.composition_sutherland", "scattering", composition_S_check},
      {"scattering.composition_rsvd", "scattering", composition_R_check},
      {"scattering.fit_agreement", "scattering", fit_agreement},
      {"scattering.pure_soliton", "scattering", pure_soliton},
      {"scattering.factorization", "scattering", factorization},
      {"scattering.decay_sutherland", "scattering", decay_S},
      {"scattering.decay_rsvd", "scattering", decay_R},
      {"scattering.symplectic_maps", "scattering", symplectic_maps},
      {"scattering.zero_delta_consistency", "scattering", zero_delta_consistency},
      {"scattering.synthetic_decay", "scattering", synthetic_decay},
  };
  return checks;
}

}  // namespace bcdual::cli
