#include "srgkit/analysis/duffing.hpp"

#include <array>
#include <cmath>

#include "srgkit/error.hpp"

namespace srg::analysis {

namespace {

using State = std::array<double, 2>;

void check(const DuffingParams& p) {
  if (!(p.alpha + p.k_p > 0) || !(p.delta + p.k_d > 0) || !(p.beta > 0))
    throw Error(ErrorCode::InvalidArgument, "duffing: need alpha + k_p > 0, delta + k_d > 0 and beta > 0");
}

}  // namespace

DuffingTurn duffing_turn(const DuffingParams& p, double M, double h) {
  check(p);
  const double a = p.alpha + p.k_p, c = p.delta + p.k_d, b = p.beta, d = p.d_max;
  auto f = [&](const State& x) -> State { return {x[1], -a * x[0] - b * x[0] * x[0] * x[0] - c * x[1] + d}; };
  auto H = [&](const State& x) { return 0.5 * x[1] * x[1] + 0.5 * a * x[0] * x[0] + 0.25 * b * std::pow(x[0], 4); };
  State x{-M, 0.0};
  const State x0 = x;
  DuffingTurn out;
  double t = 0.0;
  // settling time scale; the trajectory either turns or creeps towards equilibrium
  const double t_max = 200.0 + 50.0 * c / std::max(a, 1e-6);
  bool moving = false;
  double work = 0.0;
  auto power = [&](const State& s) { return -c * s[1] * s[1] + s[1] * d; };
  while (t < t_max) {
    const State k1 = f(x);
    const State k2 = f({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
    const State k3 = f({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
    const State k4 = f({x[0] + h * k3[0], x[1] + h * k3[1]});
    const State xn{x[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                   x[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
    if (!std::isfinite(xn[0]) || std::abs(xn[0]) > 1e9)
      throw Error(ErrorCode::SimulationDiverged, "duffing_turn: state diverged");
    if (xn[1] > 0) moving = true;
    if (moving && xn[1] <= 0) {
      // linear interpolation of the velocity zero
      const double s = x[1] / (x[1] - xn[1]);
      out.y_turn = x[0] + s * (xn[0] - x[0]);
      out.t_turn = t + s * h;
      out.crossed = true;
      work += 0.5 * s * h * (power(x) + power({out.y_turn, 0.0}));
      out.energy_work = work;
      out.energy_change = H({out.y_turn, 0.0}) - H(x0);
      return out;
    }
    work += 0.5 * h * (power(x) + power(xn));
    x = xn;
    t += h;
  }
  out.y_turn = x[0];
  out.t_turn = t;
  out.energy_work = work;
  out.energy_change = H(x) - H(x0);
  return out;
}

double duffing_amplitude_bound(const DuffingParams& p, double M_hi, double tol) {
  check(p);
  if (p.d_max == 0.0) return 0.0;
  auto g = [&](double M) { return duffing_turn(p, M).y_turn - M; };
  double lo = tol * 1e-3, hi = M_hi;
  double glo = g(lo), ghi = g(hi);
  if (!(glo > 0 && ghi < 0))
    throw Error(ErrorCode::NoSignChange, "duffing_amplitude_bound: y_turn(M) - M does not change sign on the bracket");
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm > 0)
      lo = mid;
    else
      hi = mid;
  }
  if (hi - lo > tol) throw Error(ErrorCode::NonConvergence, "duffing_amplitude_bound: bisection did not converge");
  return 0.5 * (lo + hi);
}

}  // namespace srg::analysis
