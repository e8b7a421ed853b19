// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "properties.hpp"
#include "srgkit/analysis/canonical.hpp"
#include "srgkit/analysis/duffing.hpp"
#include "srgkit/error.hpp"
#include "srgkit/lang/pipeline.hpp"
#include "srgkit/lti/nyquist.hpp"
#include "srgkit/sim/simulate.hpp"
#include "srgkit/sim/state_space.hpp"

namespace {

using srg::Mode;
using srg::analysis::Verdict;
using srg::lti::parse_tf;

struct Tol {
  static constexpr double pitfall_radius = 0.05;  // relative, plain radius vs 2
  static constexpr double pitfall_runtime = 5.0;
  static constexpr double duffing_rm = 0.05;
  static constexpr double duffing_gain = 0.05;
  static constexpr double duffing_sim = 0.05;
  static constexpr double duffing_runtime = 60.0;
  static constexpr double appendix = 0.05;
  static constexpr double appendix_runtime = 10.0;
  static constexpr double pendulum_rm = 0.10;
  static constexpr double pendulum_touch = 1e-2;  // unshifted distance counted as zero
  static constexpr double pendulum_runtime = 60.0;
  static constexpr double saturation_rmin = 0.02;
  static constexpr double saturation_runtime = 60.0;
  static constexpr double properties_runtime = 900.0;
};

struct Check {
  std::vector<std::string> lines;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
  }
  void near_rel(double got, double want, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.6g (target %.6g, rel err %.2f%%, tol %.0f%%)", what.c_str(), got, want,
                  100.0 * std::abs(got - want) / std::abs(want), 100.0 * tol);
    expect(std::isfinite(got) && std::abs(got - want) <= tol * std::abs(want), buf);
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void pitfall(Check& c) {
  auto L = parse_tf("-2/(s^2+s+1)");
  auto v = srg::lti::nyquist_criterion(L);
  c.expect(v.n_p == 0 && v.n_n == 1 && v.n_z == 1,
           "nyquist n_p=" + std::to_string(v.n_p) + " n_n=" + std::to_string(v.n_n) + " n_z=" + std::to_string(v.n_z));
  srg::lang::OperatorTable t;
  t.add_lti("L", L);
  auto word = srg::lang::parse_expr("(1+L^-1)^-1");
  srg::lang::BoundOptions plain;
  plain.extended = false;
  plain.collapse = false;
  double r_plain = srg::geom::region_radius(srg::lang::srg_bound(word, t, Mode::Incremental, plain).region);
  c.near_rel(r_plain, 2.0, Tol::pitfall_radius, "plain radius");
  double r_ext = srg::geom::region_radius(srg::lang::srg_bound(word, t, Mode::Incremental).region);
  c.expect(!std::isfinite(r_ext), fmt("extended radius = %g (unbounded)", r_ext));
  auto rep = srg::lang::analyze_interconnection(word, t);
  c.expect(rep.verdict == Verdict::NoBound, std::string("extended verdict ") + srg::analysis::to_string(rep.verdict));
}

srg::lti::TransferFunction duffing_plant() {
  srg::lang::OperatorTable t;
  t.add_lti("G", parse_tf("1/(s^2+0.3*s-1)"));
  t.add_lti("K", parse_tf("5+5*s/(s/100+1)"));
  return srg::lang::fold_lti(srg::lang::parse_expr("(G^-1+K)^-1"), t);
}

void duffing(Check& c) {
  auto Gt = duffing_plant();
  auto cb = srg::nonlin::cubic_bounds(0.25);
  auto r = srg::analysis::lure(Gt, srg::nonlin::region_bound(cb.srg, cb.sg0, "cube"), Mode::NonIncremental);
  c.near_rel(r.r_m, 4.0, Tol::duffing_rm, "r_m with cubic bounds at amplitude 0.25");
  auto range = srg::geom::disk_region(0.0, 2.0);
  auto rr = srg::analysis::lure(Gt, srg::nonlin::region_bound(range, range, "range"), Mode::NonIncremental);
  c.near_rel(rr.gain_bound, 0.25, Tol::duffing_gain, "gain bound with SG_0 in D[0,2]");

  srg::sim::LoopSpec spec;
  spec.G = parse_tf("1/(s^2+0.3*s-1)");
  spec.K = parse_tf("5+5*s/(s/100+1)");
  spec.phi_plant = srg::nonlin::cubic(1.0, 1.0);
  spec.d = srg::sim::sum_signals(srg::sim::pulse_signal(5.0, 6.0, 1.0), srg::sim::pulse_signal(15.0, 20.0, -1.0));
  spec.T = 25.0;
  spec.h = 1e-4;
  auto tr = srg::sim::simulate_loop(spec);
  double y20 = tr.at("y")[std::size_t(std::llround(20.0 / spec.h))];
  c.expect(std::abs(y20) <= 0.25 * 1.0 * (1.0 + Tol::duffing_sim),
           fmt("simulated |y(20)| = %.6g <= %.6g", std::abs(y20), 0.25 * (1.0 + Tol::duffing_sim)));
}

void appendix(Check& c) {
  double b = srg::analysis::duffing_amplitude_bound(srg::analysis::DuffingParams{});
  c.near_rel(b, 0.25, Tol::appendix, "amplitude bound");
}

void pendulum(Check& c) {
  auto G = parse_tf("1/(s^2+s)");
  auto phi = srg::nonlin::sine();
  struct Case {
    const char* name;
    const char* K;
    double r_m;
  };
  for (const Case& k : {Case{"K1", "2+1/s+s/(s/10+1)", 0.19}, Case{"K2", "5+1/s+2*s/(s/10+1)", 0.81}}) {
    auto K = parse_tf(k.K);
    auto r = srg::analysis::controlled_lure(G, K, phi, 0.0, Mode::Incremental);
    c.expect(r.verdict == Verdict::StableBounded,
             std::string(k.name) + " verdict " + srg::analysis::to_string(r.verdict));
    c.near_rel(r.r_m, k.r_m, Tol::pendulum_rm, std::string(k.name) + " r_m");
    double d = srg::analysis::unshifted_distance(G, K, phi, Mode::Incremental);
    c.expect(d <= Tol::pendulum_touch,
             std::string(k.name) + fmt(" unshifted distance = %.3g <= %.0e", d, Tol::pendulum_touch));
  }
}

void saturation(Check& c) {
  srg::lang::OperatorTable t;
  auto G = parse_tf("3/((s-2)*(s/10+1))"), K = parse_tf("1/(s+1)");
  t.add_lti("G", G);
  t.add_lti("K", K);
  t.add_nonlinearity("phi1", srg::nonlin::saturation());
  t.add_nonlinearity("phi2", srg::nonlin::slope_increase());
  auto word = srg::lang::parse_expr("(1+((G^-1+phi2)^-1 phi1 K)^-1)^-1");
  for (Mode m : {Mode::Incremental, Mode::NonIncremental}) {
    std::string tag = m == Mode::Incremental ? "incremental" : "non-incremental";
    srg::lang::AnalyzeOptions opt;
    opt.mode = m;
    auto r = srg::lang::analyze_interconnection(word, t, opt);
    c.near_rel(r.rmin, 4.81, Tol::saturation_rmin, tag + " rmin");
    bool lin = r.linearization && r.linearization->stable;
    for (const auto& p : r.linearization ? r.linearization->poles : std::vector<srg::lti::Complex>{}) {
      lin = lin && p.real() < 0.0;
    }
    c.expect(lin, tag + " linearization at sector centers has all poles in the open left half-plane");
  }

  auto ssK = srg::sim::realize_state_space(K), ssG = srg::sim::realize_state_space(G);
  Eigen::MatrixXd AK = ssK.A, BK = ssK.B, CK = ssK.C, AG = ssG.A, BG = ssG.B, CG = ssG.C;
  const double L1 = 1.0, L2 = 2.0;
  double L = srg::lang::lipschitz_bound(AK, BK, CK, AG, BG, CG, L1, L2);
  auto sat = srg::nonlin::saturation();
  auto psi = srg::nonlin::slope_increase();
  const int nk = int(AK.rows()), ng = int(AG.rows());
  auto f = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd xk = x.head(nk), xg = x.tail(ng), out(nk + ng);
    out.head(nk) = AK * xk - BK * (CG * xg);
    out.tail(ng) = AG * xg + BG * (sat.eval((CK * xk)(0)) - psi.eval((CG * xg)(0)));
    return out;
  };
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    Eigen::VectorXd x(nk + ng), y(nk + ng);
    for (int j = 0; j < nk + ng; ++j) {
      x(j) = n(rng);
      y(j) = n(rng);
    }
    worst = std::max(worst, (f(x) - f(y)).norm() / (x - y).norm());
  }
  c.expect(worst <= L, fmt("sampled |f(x)-f(y)|/|x-y| max %.4g <= L = %.4g", worst, L));
  double dL1 = srg::lang::lipschitz_bound(AK, BK, CK, AG, BG, CG, L1 + 1.0, L2) - L;
  double dL2 = srg::lang::lipschitz_bound(AK, BK, CK, AG, BG, CG, L1, L2 + 1.0) - L;
  c.expect(std::abs(dL1 - BG.norm() * CK.norm()) < 1e-9 && std::abs(dL2 - BG.norm() * CG.norm()) < 1e-9,
           fmt("L affine in L1, L2 with slopes %.4g, %.4g", dL1, dL2));
}

void properties(Check& c) {
  for (const auto& o : {props::radius_equals_hinf(50, 11), props::bounded_iff_stable(50, 12),
                        props::empirical_containment(10, 500, 13), props::set_relations(20, 14),
                        props::word_gains(20, 15), props::circle_sweep(100, 16)}) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s: %d trials, %d failures, %d skipped, worst %.3g %s", o.name.c_str(), o.trials,
                  o.failures, o.skipped, o.worst, o.detail.c_str());
    c.expect(o.passed(), buf);
  }
}

struct Criterion {
  int id;
  const char* title;
  double runtime;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria");
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-6)")->check(CLI::Range(1, 6));
  app.add_flag("-v,--verbose", verbose, "print every sub-check");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "pitfall", Tol::pitfall_runtime, pitfall},
      {2, "duffing", Tol::duffing_runtime, duffing},
      {3, "duffing amplitude bound", Tol::appendix_runtime, appendix},
      {4, "pendulum", Tol::pendulum_runtime, pendulum},
      {5, "saturated lure", Tol::saturation_runtime, saturation},
      {6, "property suites", Tol::properties_runtime, properties},
  };
  bool all_ok = true;
  for (const auto& cr : all) {
    if (only && cr.id != only) continue;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < cr.runtime, fmt("runtime %.1f s < %.0f s", secs, cr.runtime));
    std::printf("%s criterion %d (%s) %.1f s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.title, secs);
    for (const auto& l : c.lines) {
      if (verbose || l.rfind("FAIL", 0) == 0) std::printf("    %s\n", l.c_str());
    }
    std::fflush(stdout);
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
