// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include <bcdual/duality.hpp>
#include <bcdual/dynamics.hpp>
#include <bcdual/laxops.hpp>
#include <bcdual/sampling.hpp>
#include <bcdual/scattering.hpp>

#include "oracles.hpp"

using namespace bcdual;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<Couplings>& couplings() {
  static const std::vector<Couplings> c = sampling::reference_couplings();
  return c;
}

const Couplings& coupling_for(int k) { return couplings()[static_cast<std::size_t>(k) % couplings().size()]; }

double sup(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// keeps NaN
void worsen(double& w, double v) {
  if (!(v <= w)) w = v;
}

struct Outcome {
  bool pass;
  std::string summary;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// 1 and 2 share the sample set
struct PullbackSample {
  double energy = 0, momentum = 0, seconds = 0;
};

PullbackSample pullback_sample() {
  PullbackSample out;
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  int k = 0;
  for (int n : {1, 2, 3, 4, 6})
    for (int i = 0; i < 100; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      const PhasePointR r = sampling::random_point_R(rng, n);
      const ComplexMatrix L = build_lax_S(s, c).L;
      const double hs = double(oracle::hamiltonian_S(s.q(), s.p(), c.mu(), c.nu(), c.kappa()));
      worsen(out.energy, rel(0.25 * (L * L).trace().real(), hs));
      const ComplexMatrix A = build_acal(r.lambda(), r.theta(), c);
      const double hr = double(oracle::hamiltonian_R(r.lambda(), r.theta(), c.mu(), c.nu(), c.kappa()));
      worsen(out.energy, rel(0.5 * (A * h_inv_sq_closed_form(r.lambda(), c)).trace().real(), hr));
      worsen(out.momentum, momentum_residual_S(s, c));
      worsen(out.momentum, momentum_residual_R(r, c));
    }
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

Outcome criterion3() {
  std::mt19937_64 rng(103);
  double closed = 0, ident = 0;
  int singular = 0, k = 0;
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i < 30; ++i, ++k) {
      const MinorCheck m = cauchy_minor_check(sampling::random_point_R(rng, n), coupling_for(k));
      if (m.singular) {
        ++singular;
        continue;
      }
      worsen(closed, m.max_closed_form());
      worsen(ident, m.max_identity());
    }
  return {singular == 0 && closed <= 1e-10 && ident <= 1e-10,
          "closed form " + fmt(closed) + ", ln m + 2theta - Delta " + fmt(ident) + " (<= 1e-10), singular " +
              std::to_string(singular) + ", 180 points n<=6"};
}

Outcome criterion4() {
  std::mt19937_64 rng(104);
  double s2r2s = 0, r2s2r = 0;
  int total = 0, fast = 0, k = 0;
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i < 50; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      const auto fwd = dualize_S_to_R(s, c);
      ++total;
      fast += fwd.diagnostics.newton_iters <= 10;
      const PhasePointS back = dualize_R_to_S(fwd.point, c).point;
      worsen(s2r2s, std::max(sup(back.q() - s.q()), sup(back.p() - s.p())));
      const PhasePointR r = sampling::random_point_R(rng, n);
      const PhasePointR again = dualize_S_to_R(dualize_R_to_S(r, c).point, c).point;
      worsen(r2s2r, std::max(sup(again.lambda() - r.lambda()), sup(again.theta() - r.theta())));
    }
  const double frac = double(fast) / total;
  return {s2r2s <= 1e-8 && r2s2r <= 1e-8 && frac >= 0.95,
          "S^-1 S " + fmt(s2r2s) + ", S S^-1 " + fmt(r2s2r) + " (<= 1e-8), Newton <= 10 iterations in " +
              std::to_string(fast) + "/" + std::to_string(total)};
}

Outcome criterion5() {
  std::mt19937_64 rng(105);
  double fwd = 0, inv = 0, ss = 0, sr = 0;
  int k = 0;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 20; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      const PhasePointR r = sampling::random_point_R(rng, n);
      worsen(fwd, symplecticity_certificate(
                      [&c](const Vector& x) { return pack(dualize_S_to_R(unpack_S(x), c).point); }, pack(s), 1e-5));
      worsen(inv, symplecticity_certificate(
                      [&c](const Vector& x) { return pack(dualize_R_to_S(unpack_R(x), c).point); }, pack(r), 1e-5));
      const AsymptoticState wm = wave_map_S(s, c, Side::kMinus);
      const Vector in = pack(wm.x(), wm.y());
      worsen(ss, symplecticity_certificate(
                     [&c, n](const Vector& v) {
                       const AsymptoticState o = scattering_map_S(AsymptoticState(v.head(n), v.tail(n), Side::kMinus), c);
                       return pack(o.x(), o.y());
                     },
                     in, 1e-5));
      worsen(sr, symplecticity_certificate(
                     [n](const Vector& v) {
                       const AsymptoticState o = scattering_map_R(AsymptoticState(v.head(n), v.tail(n), Side::kMinus));
                       return pack(o.x(), o.y());
                     },
                     in, 1e-5));
    }
  return {std::max({fwd, inv, ss, sr}) <= 1e-5, "S " + fmt(fwd) + ", S^-1 " + fmt(inv) + ", S^S " + fmt(ss) +
                                                      ", S^R " + fmt(sr) + " (<= 1e-5), 20 points per n<=3"};
}

Outcome criterion6() {
  std::mt19937_64 rng(106);
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 101);
  SolveOptions ode;
  ode.method = Method::kOde;
  double ds = 0, dr = 0, drift = 0;
  int k = 0;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 6; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      const PhasePointR r = sampling::random_point_R(rng, n);
      const Trajectory so = solve_sutherland(s, grid, c, ode), ro = solve_rsvd(r, grid, c, ode);
      worsen(ds, trajectory_distance(solve_sutherland(s, grid, c), so));
      worsen(dr, trajectory_distance(solve_rsvd(r, grid, c), ro));
      worsen(drift, std::max(so.max_energy_drift, ro.max_energy_drift));
    }
  return {ds <= 1e-6 && dr <= 1e-6 && drift <= 1e-8, "Sutherland " + fmt(ds) + ", RSvD " + fmt(dr) +
                                                          " (<= 1e-6), ODE drift " + fmt(drift) + " (<= 1e-8)"};
}

// Trajectory fits on ±[T, 2T] with T = 8 / min gap of λ.
struct SideFits {
  AsymptoticState wm, wp;
  AsymptoticFit fm, fp;
};

SideFits side_fits(const PhasePointS& s, const Couplings& c) {
  const AsymptoticState wp = wave_map_S(s, c, Side::kPlus);
  const AsymptoticState wm = wave_map_S(s, c, Side::kMinus);
  const double T = sutherland_horizon(wp.y());
  std::vector<double> t;
  for (int k = 32; k >= 0; --k) t.push_back(-T * (1 + k / 32.0));
  for (int k = 0; k <= 32; ++k) t.push_back(T * (1 + k / 32.0));
  const Trajectory tr = solve_sutherland(s, TimeGrid(t), c);
  return {wm, wp, fit_linear_asymptote(tr, Side::kMinus, T), fit_linear_asymptote(tr, Side::kPlus, T)};
}

Outcome criterion7() {
  std::mt19937_64 rng(107);
  int bad = 0, reports = 0, k = 0;
  double fit = 0, rate = std::numeric_limits<double>::infinity();
  std::string why;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 5; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      for (Side side : {Side::kPlus, Side::kMinus}) {
        ++reports;
        const DecayReport d = verify_decay_rates_S(s, c, side);
        if (!d.pass || !(d.rate_estimate > 0)) {
          ++bad;
          why = d.reason;
        }
        rate = std::min(rate, d.rate_estimate);
      }
      const SideFits f = side_fits(s, c);
      worsen(fit, std::max({sup(f.fp.intercept - f.wp.x()), sup(f.fp.slope - f.wp.y()), sup(f.fm.intercept - f.wm.x()),
                            sup(f.fm.slope - f.wm.y())}));
    }
  return {bad == 0 && fit <= 1e-6, std::to_string(reports - bad) + "/" + std::to_string(reports) +
                                       " monotone decays, min rate " + fmt(rate) + ", fit error " + fmt(fit) +
                                       " (<= 1e-6)" + (why.empty() ? "" : ", " + why)};
}

Outcome criterion8() {
  std::mt19937_64 rng(108);
  int bad = 0, reports = 0, k = 0;
  double ratio = 0;
  std::string why;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 4; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointR r = sampling::random_point_R(rng, n);
      for (Side side : {Side::kPlus, Side::kMinus}) {
        ++reports;
        const DecayReport d = verify_decay_rates_R(r, c, side);
        if (!d.pass) {
          ++bad;
          why = d.reason;
        }
        worsen(ratio, d.worst_ratio);
      }
    }
  return {bad == 0 && ratio <= 2, std::to_string(reports - bad) + "/" + std::to_string(reports) +
                                      " stable, worst window ratio " + fmt(ratio) + " (<= 2) for t|dlambda|, t^2|dtheta|, t^2|v-1|" +
                                      (why.empty() ? "" : ", " + why)};
}

Outcome criterion9() {
  std::mt19937_64 rng(109);
  double cs = 0, cr = 0, fac = 0;
  int k = 0;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 6; ++i, ++k) {
      const Couplings& c = coupling_for(k);
      const PhasePointS s = sampling::random_point_S(rng, n);
      const SideFits f = side_fits(s, c);
      const AsymptoticState out = scattering_map_S(f.wm, c);
      worsen(cs, std::max(sup(out.x() - f.wp.x()), sup(out.y() - f.wp.y())));
      worsen(fac, sup(f.fp.intercept + f.fm.intercept - decompose_delta(f.wp.y(), c).total()));
      const PhasePointR r = sampling::random_point_R(rng, n);
      const AsymptoticState outr = scattering_map_R(wave_map_R(r, c, Side::kMinus));
      const AsymptoticState wpr = wave_map_R(r, c, Side::kPlus);
      worsen(cr, std::max(sup(outr.x() - wpr.x()), sup(outr.y() - wpr.y())));
    }
  return {cs <= 1e-8 && cr <= 1e-8 && fac <= 1e-6, "S^S " + fmt(cs) + ", S^R " + fmt(cr) + " (<= 1e-8), fitted shift vs Delta " +
                                                       fmt(fac) + " (<= 1e-6)"};
}

Outcome criterion10(const std::string& tool) {
  if (tool.empty()) return {false, "no --tool path given"};
  const auto t0 = Clock::now();
  const std::string cmd = tool + " verify --suite all --no-timestamp > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code == 0 && secs <= 60, "exit " + std::to_string(code) + " in " + fmt(secs) + " s (<= 60 s)"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string tool;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--tool") == 0) tool = argv[i + 1];

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
  PullbackSample pb;
  criteria.push_back({"energy pullbacks", [&] {
                        pb = pullback_sample();
                        return Outcome{pb.energy <= 1e-10 && pb.seconds < 5,
                                       "relative " + fmt(pb.energy) + " (<= 1e-10), 100 points per n in {1,2,3,4,6}, " +
                                           fmt(pb.seconds) + " s (< 5 s)"};
                      }});
  criteria.push_back({"momentum map zero level", [&] {
                        return Outcome{pb.momentum <= 1e-9, "residual " + fmt(pb.momentum) + " (<= 1e-9)"};
                      }});
  criteria.push_back({"minor identities", criterion3});
  criteria.push_back({"duality roundtrips", criterion4});
  criteria.push_back({"symplecticity", criterion5});
  criteria.push_back({"solver cross-validation", criterion6});
  criteria.push_back({"Sutherland asymptotics", criterion7});
  criteria.push_back({"RSvD asymptotics", criterion8});
  criteria.push_back({"scattering maps", criterion9});
  criteria.push_back({"verify suite", [&] { return criterion10(tool); }});

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << "  "
              << o.summary << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
