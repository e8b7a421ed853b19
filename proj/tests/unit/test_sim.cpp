#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "srgkit/error.hpp"
#include "srgkit/sim/empirical.hpp"
#include "srgkit/sim/simulate.hpp"
#include "srgkit/sim/state_space.hpp"
#include "srgkit/sim/word_sim.hpp"

using namespace srg::sim;
using srg::lti::Complex;
using srg::lti::parse_tf;

TEST(StateSpace, RealizationReproducesResponse) {
  for (const char* text : {"(s+2)/(s^2+0.5*s+3)", "(2*s^2+1)/(s^2+3*s+2)", "5/(s^3+2*s^2+3*s+1)"}) {
    auto f = parse_tf(text);
    auto ss = realize_state_space(f);
    EXPECT_EQ(ss.order(), f.den_degree());
    for (double w : {0.01, 0.3, 1.0, 7.0, 100.0}) {
      Complex s(0.0, w);
      EXPECT_NEAR(std::abs(ss.response(s) - f(s)), 0.0, 1e-10 * (1.0 + std::abs(f(s)))) << text << " w=" << w;
    }
  }
}

TEST(StateSpace, ImproperRejected) { EXPECT_THROW(realize_state_space(parse_tf("s+1")), srg::Error); }

TEST(Tustin, FirstOrderSineResponse) {
  // u = sin t from rest: y = (sin t - cos t + exp(-t)) / 2
  const double h = 1e-3;
  auto sys = tustin(realize_state_space(parse_tf("1/(s+1)")), h);
  double y = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double u = std::sin(k * h);
    y = sys.peek(u);
    sys.commit(u);
  }
  EXPECT_NEAR(y, 0.5 * (std::sin(1.0) - std::cos(1.0) + std::exp(-1.0)), 1e-6);
}

TEST(Tustin, InvertUndoesPeek) {
  auto sys = tustin(realize_state_space(parse_tf("(s+3)/(s+1)")), 1e-2);
  sys.commit(0.7);
  double u = sys.invert(0.25);
  EXPECT_NEAR(sys.peek(u), 0.25, 1e-12);
}

TEST(Loop, LinearFeedbackClosedForm) {
  // y' = -y + (1 - y): y = (1 - exp(-2t)) / 2
  auto tr = simulate_lure(parse_tf("1/(s+1)"), std::nullopt, srg::nonlin::linear(1.0), step_signal(0.0, 1.0),
                          zero_signal(), 2.0, 1e-3);
  const auto& y = tr.at("y");
  EXPECT_NEAR(y[1000], 0.5 * (1.0 - std::exp(-2.0)), 1e-9);
  EXPECT_NEAR(y.back(), 0.5 * (1.0 - std::exp(-4.0)), 1e-9);
}

TEST(Loop, ControllerAndActuatorPath) {
  // K = 2, G = 1/s, no nonlinearity in effect: y' = 2 (1 - y)
  LoopSpec spec;
  spec.G = parse_tf("1/s");
  spec.K = parse_tf("2");
  spec.phi_act = srg::nonlin::linear(1.0);
  spec.r = step_signal(0.0, 1.0);
  spec.T = 1.0;
  spec.h = 1e-3;
  auto tr = simulate_loop(spec);
  EXPECT_NEAR(tr.at("y").back(), 1.0 - std::exp(-2.0), 1e-9);
  EXPECT_NEAR(tr.at("e").back(), std::exp(-2.0), 1e-9);
}

TEST(Loop, DivergenceDetected) {
  try {
    simulate_lure(parse_tf("1/(s-1)"), std::nullopt, srg::nonlin::linear(0.0), step_signal(0.0, 1.0),
                  zero_signal(), 100.0, 1e-2);
    FAIL();
  } catch (const srg::Error& e) {
    EXPECT_EQ(e.code(), srg::ErrorCode::SimulationDiverged);
  }
}

TEST(Signals, StepPulseSum) {
  auto s = sum_signals(step_signal(1.0, 2.0), pulse_signal(2.0, 3.0, -1.0));
  EXPECT_EQ(s(0.5), 0.0);
  EXPECT_EQ(s(1.5), 2.0);
  EXPECT_EQ(s(2.5), 1.0);
  EXPECT_EQ(s(3.5), 2.0);
}

TEST(WordSim, FeedbackOfLag) {
  // (1 + G)^-1 with G = 1/(s+1) is (s+1)/(s+2): step response 1/2 + exp(-2t)/2
  srg::lang::OperatorTable t;
  t.add_lti("G", parse_tf("1/(s+1)"));
  const double h = 1e-3;
  WordSimulator sim(srg::lang::parse_expr("(1+G)^-1"), t, h);
  // step input: the bilinear map is off by a half sample, O(h)
  std::vector<double> u(2001, 1.0);
  auto y = sim.run(u);
  EXPECT_NEAR(y[1000], 0.5 + 0.5 * std::exp(-2.0), h);
  EXPECT_NEAR(y[2000], 0.5 + 0.5 * std::exp(-4.0), h);
}

TEST(WordSim, StaticChainEvaluatesPointwise) {
  srg::lang::OperatorTable t;
  t.add_nonlinearity("p", srg::nonlin::saturation());
  WordSimulator sim(srg::lang::parse_expr("2 p + 1"), t, 1e-3);
  EXPECT_DOUBLE_EQ(sim.step(0.25), 0.75);
  EXPECT_DOUBLE_EQ(sim.step(4.0), 6.0);
}

TEST(WordSim, NonlinearInverseSolved) {
  srg::lang::OperatorTable t;
  t.add_nonlinearity("p", srg::nonlin::slope_increase());
  WordSimulator sim(srg::lang::parse_expr("p^-1"), t, 1e-3);
  double x = sim.step(5.0);
  EXPECT_NEAR(srg::nonlin::slope_increase().eval(x), 5.0, 1e-9);
}

TEST(Empirical, InnerProductTrapezoid) {
  std::vector<double> ones(11, 1.0), ramp(11);
  for (int k = 0; k <= 10; ++k) ramp[k] = 0.1 * k;
  EXPECT_NEAR(inner(ones, ones, 0.1), 1.0, 1e-12);
  EXPECT_NEAR(inner(ramp, ones, 0.1), 0.5, 1e-12);
}

TEST(Empirical, InputsDeterministicWithZeroTail) {
  EmpiricalOptions o;
  o.T = 10.0;
  o.tail = 2.0;
  std::mt19937_64 a(9), b(9);
  auto u = random_input(a, o), v = random_input(b, o);
  EXPECT_EQ(u, v);
  ASSERT_EQ(u.size(), std::size_t(std::llround((o.T + o.tail) / o.h)) + 1);
  for (std::size_t k = u.size() - 1000; k < u.size(); ++k) EXPECT_EQ(u[k], 0.0);
}

TEST(Empirical, StaticGainRecovered) {
  EmpiricalOptions o;
  o.T = 20.0;
  auto runs = random_runs(static_system(srg::nonlin::linear(-3.0)), 4, o);
  EXPECT_NEAR(gain_estimate(runs, srg::Mode::Incremental, o.h), 3.0, 1e-9);
  auto pts = empirical_srg_samples(static_system(srg::nonlin::linear(-3.0)), 3, srg::Mode::Incremental, o);
  for (auto z : pts) EXPECT_NEAR(std::abs(z - Complex(-3.0, 0.0)), 0.0, 1e-9);
}
