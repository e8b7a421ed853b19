#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "srgkit/error.hpp"
#include "srgkit/lti/nyquist.hpp"
#include "srgkit/lti/polynomial.hpp"
#include "srgkit/lti/srg.hpp"
#include "srgkit/lti/transfer_function.hpp"

using namespace srg::lti;
using srg::Error;
using srg::ErrorCode;

namespace {

// Eigenvalues of the companion matrix; independent of the iteration under test.
std::vector<Complex> companion_roots(const Poly& p) {
  int n = int(p.size()) - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p[i] / p[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

void sort_roots(std::vector<Complex>& r) {
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

const Complex kProbe[] = {{0.0, 0.3}, {0.5, 2.0}, {-0.2, 7.0}, {3.0, -1.0}};

}  // namespace

TEST(Polynomial, RootsMatchCompanionEigenvalues) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> deg(2, 7);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    Poly p(deg(rng) + 1);
    for (auto& x : p) x = c(rng);
    p.back() = 1.0 + std::abs(p.back());
    auto a = poly_roots(p), b = companion_roots(p);
    ASSERT_EQ(a.size(), b.size());
    sort_roots(a);
    sort_roots(b);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-7) << trial;
  }
}

TEST(Polynomial, ZeroRootsFactoredOut) {
  auto r = poly_roots({0.0, 0.0, 2.0, 1.0});  // s^2 (s + 2)
  sort_roots(r);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(std::abs(r[0] + 2.0), 0.0, 1e-12);
  EXPECT_EQ(r[1], Complex(0.0));
  EXPECT_EQ(r[2], Complex(0.0));
}

TEST(TransferFunction, ParserMatchesFactoredForm) {
  auto f = parse_tf("3*(s+1)/((s-2)*(s/10+1))");
  oracle::Factored g{30.0, {-1.0}, {2.0, -10.0}};
  for (auto s : kProbe) EXPECT_NEAR(std::abs(f(s) - g(s)), 0.0, 1e-10 * std::abs(g(s)));
  EXPECT_EQ(f.unstable_pole_count(), 1);
  EXPECT_FALSE(f.is_stable());
}

TEST(TransferFunction, ParseErrorsCarryCode) {
  for (const char* bad : {"1/(s+", "s^^2", "", "2*(s+1))", "x+1"}) {
    try {
      parse_tf(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
}

TEST(TransferFunction, ArithmeticIsPointwise) {
  auto f = parse_tf("(s+2)/(s^2+0.5*s+3)"), g = parse_tf("4/(s+1)");
  for (auto s : kProbe) {
    EXPECT_NEAR(std::abs(tf_add(f, g)(s) - (f(s) + g(s))), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(tf_sub(f, g)(s) - (f(s) - g(s))), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(tf_mul(f, g)(s) - f(s) * g(s)), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(tf_inverse(f)(s) - 1.0 / f(s)), 0.0, 1e-9 * std::abs(1.0 / f(s)));
    EXPECT_NEAR(std::abs(tf_scale(f, -2.5)(s) + 2.5 * f(s)), 0.0, 1e-10);
  }
}

TEST(TransferFunction, CancellationReducesDegree) {
  auto f = parse_tf("(s+1)/((s+1)*(s+2))");
  EXPECT_EQ(f.den_degree(), 1);
  EXPECT_NEAR(std::abs(f({0.0, 0.0}) - 0.5), 0.0, 1e-12);
}

TEST(TransferFunction, ImproperAtInfinity) {
  auto f = parse_tf("s+1");
  EXPECT_FALSE(f.is_proper());
  EXPECT_TRUE(std::isinf(std::abs(f.at_infinity())));
}

TEST(HInfinity, SecondOrderResonancePeak) {
  const double zeta = 0.2;
  auto f = parse_tf("1/(s^2+0.4*s+1)");
  double peak = 1.0 / (2.0 * zeta * std::sqrt(1.0 - zeta * zeta));
  EXPECT_NEAR(hinf_norm(f), peak, 1e-6 * peak);
}

TEST(Nyquist, ThirdOrderLoopRouthBoundary) {
  // k/(s+1)^3 in unity feedback is stable exactly for k < 8
  auto stable = nyquist_criterion(parse_tf("4/(s+1)^3"));
  EXPECT_EQ(stable.n_z, 0);
  auto unstable = nyquist_criterion(parse_tf("10/(s+1)^3"));
  EXPECT_EQ(unstable.n_p, 0);
  EXPECT_EQ(unstable.n_z, 2);
}

TEST(Nyquist, UnstableOpenLoopStabilized) {
  // 1 + 2/(s-1) = (s+1)/(s-1)
  auto v = nyquist_criterion(parse_tf("2/(s-1)"));
  EXPECT_EQ(v.n_p, 1);
  EXPECT_EQ(v.n_n, -1);
  EXPECT_EQ(v.n_z, 0);
}

TEST(Nyquist, IntegratorIndentation) {
  // 1 + 1/(s(s+1)): s^2 + s + 1, stable
  auto L = parse_tf("1/(s^2+s)");
  auto c = nyquist_curve(L);
  EXPECT_TRUE(c.reaches_infinity);
  EXPECT_EQ(c.indentations.size(), 1u);
  EXPECT_EQ(nyquist_criterion(L).n_z, 0);
}

TEST(Nyquist, CsvHasHeaderAndRows) {
  auto csv = nyquist_csv(nyquist_curve(parse_tf("1/(s+1)")));
  auto nl = csv.find('\n');
  ASSERT_NE(nl, std::string::npos);
  EXPECT_GT(std::count(csv.begin(), csv.end(), '\n'), 100);
}

TEST(LtiSrg, FirstOrderLagIsItsNyquistCircle) {
  // |z - 1/2| = 1/2 is a geodesic: the hull adds nothing
  auto r = srg_lti(parse_tf("1/(s+1)"));
  EXPECT_TRUE(srg::geom::contains(r, {0.5, 0.5}));
  EXPECT_TRUE(srg::geom::contains(r, {0.5 + 0.5 * std::cos(1.0), 0.5 * std::sin(1.0)}));
  EXPECT_FALSE(srg::geom::contains(r, {0.5, 0.3}));
  EXPECT_FALSE(srg::geom::contains(r, {0.5, 0.6}));
  EXPECT_NEAR(srg::geom::region_radius(r), 1.0, 1e-3);
}

TEST(LtiSrg, UnstableNeedsExtendedRegion) {
  auto f = parse_tf("1/(s-1)");
  EXPECT_THROW(srg_lti(f), Error);
  auto e = extended_srg(f);
  EXPECT_TRUE(std::isinf(srg::geom::region_radius(e)));
}

TEST(LtiSrg, ExtendedRegionOfStableSystemIsBounded) {
  auto f = parse_tf("(s+3)/(s^2+0.4*s+2)");
  auto plain = srg_lti(f), ext = extended_srg(f);
  EXPECT_NEAR(srg::geom::region_radius(ext), srg::geom::region_radius(plain), 1e-3 * hinf_norm(f));
}
