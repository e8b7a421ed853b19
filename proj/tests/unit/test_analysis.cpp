#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "srgkit/analysis/canonical.hpp"
#include "srgkit/analysis/duffing.hpp"
#include "srgkit/error.hpp"
#include "srgkit/lang/pipeline.hpp"

using namespace srg::analysis;
using srg::Mode;
using srg::lti::parse_tf;

TEST(Lure, FirstOrderLagWithSaturation) {
  // SRG(G)^-1 = {Re z >= 1}, -SRG(phi) = disk [-1, 0]: distance 1
  auto r = lure(parse_tf("1/(s+1)"), srg::nonlin::saturation(), Mode::Incremental);
  EXPECT_EQ(r.verdict, Verdict::StableBounded);
  EXPECT_NEAR(r.r_m, 1.0, 5e-3);
  EXPECT_NEAR(r.gain_bound, 1.0 / r.r_m, 1e-12);
}

TEST(Lure, OverlapGivesNoBound) {
  // -4/(s+1) closes an unstable loop with any gain in (0.25, 1]
  auto r = lure(parse_tf("-4/(s+1)"), srg::nonlin::saturation(), Mode::Incremental);
  EXPECT_NE(r.verdict, Verdict::StableBounded);
}

TEST(Circle, ClassicalMarginOfFirstOrderLag) {
  // Re G(jw) >= 0 > -1/k2 = -0.1
  auto v = classical_circle(parse_tf("1/(s+1)"), 0.0, 10.0);
  EXPECT_TRUE(v.stable);
  EXPECT_EQ(v.sector_case, 2);
  EXPECT_NEAR(v.margin, 0.1, 2e-3);
}

TEST(Circle, ClassicalRejectsLargeSector) {
  // k/(s+1)^3 is unstable for k > 8
  auto v = classical_circle(parse_tf("1/(s+1)^3"), 0.5, 10.0);
  EXPECT_FALSE(v.stable);
}

TEST(Circle, GeneralizedAgreesOnLag) {
  auto phi = srg::nonlin::linear(5.0);
  phi.sector = srg::nonlin::Interval{0.0, 10.0};
  phi.incr_sector = phi.sector;
  auto r = generalized_circle(parse_tf("1/(s+1)"), phi, Mode::NonIncremental);
  EXPECT_EQ(r.verdict, Verdict::StableBounded);
}

TEST(KappaSearch, PicksGridMaximumAndSkipsInadmissible) {
  auto fn = [](double k) {
    if (k > 0.8) throw srg::Error(srg::ErrorCode::KappaOutOfSector, "out");
    AnalysisReport r;
    r.verdict = Verdict::StableBounded;
    r.set_margin(1.0 - (k - 0.3) * (k - 0.3));
    return r;
  };
  auto res = kappa_search(fn, 0.0, 1.0, 11, 0.5);
  EXPECT_NEAR(res.kappa, 0.3, 1e-12);
  EXPECT_NEAR(res.r_m, 1.0, 1e-12);
  EXPECT_EQ(res.samples.size(), 9u);
}

TEST(Duffing, BoundCloseToQuarter) {
  double b = duffing_amplitude_bound(DuffingParams{});
  EXPECT_NEAR(b, 0.25, 0.05 * 0.25);
}

TEST(Duffing, ZeroDisturbanceZeroBound) {
  DuffingParams p;
  p.d_max = 0.0;
  EXPECT_EQ(duffing_amplitude_bound(p), 0.0);
}

TEST(Duffing, EnergyBalanceAlongTurn) {
  DuffingParams p;
  auto t = duffing_turn(p, 0.5);
  EXPECT_NEAR(t.energy_change, t.energy_work, 1e-6 * (1.0 + std::abs(t.energy_work)));
}

TEST(Lipschitz, BoundsSampledDifferenceQuotients) {
  // controller x_K' = A_K x_K - B_K C_G x_G, plant x_G' = A_G x_G + B_G (sat(C_K x_K) - psi(C_G x_G))
  Eigen::MatrixXd AK(1, 1), BK(1, 1), CK(1, 1), AG(2, 2), BG(2, 1), CG(1, 2);
  AK << -1;
  BK << 1;
  CK << 1;
  AG << 0, 1, -2, -0.5;
  BG << 0, 1;
  CG << 1, 0;
  const double L1 = 1.0, L2 = 2.0;
  double L = srg::lang::lipschitz_bound(AK, BK, CK, AG, BG, CG, L1, L2);
  auto sat = srg::nonlin::saturation();
  auto psi = srg::nonlin::slope_increase();
  auto f = [&](const Eigen::Vector3d& x) {
    Eigen::VectorXd xk = x.head(1), xg = x.tail(2);
    Eigen::Vector3d out;
    out.head(1) = AK * xk - BK * (CG * xg);
    double u = sat.eval((CK * xk)(0)), y = psi.eval((CG * xg)(0));
    out.tail(2) = AG * xg + BG * (u - y);
    return out;
  };
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    Eigen::Vector3d x(n(rng), n(rng), n(rng)), y(n(rng), n(rng), n(rng));
    worst = std::max(worst, (f(x) - f(y)).norm() / (x - y).norm());
  }
  EXPECT_LE(worst, L);
  EXPECT_GT(worst, 0.3 * L);
  // linear in L2 with slope ||B_G|| ||C_G||
  EXPECT_NEAR(srg::lang::lipschitz_bound(AK, BK, CK, AG, BG, CG, L1, L2 + 1.0) - L, 1.0, 1e-12);
}
