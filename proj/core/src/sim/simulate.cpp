#include "srgkit/sim/simulate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "srgkit/error.hpp"
#include "srgkit/sim/state_space.hpp"

namespace srg::sim {

Signal zero_signal() {
  return [](double) { return 0.0; };
}

Signal step_signal(double t0, double value) {
  return [=](double t) { return t >= t0 ? value : 0.0; };
}

Signal pulse_signal(double t0, double t1, double value) {
  return [=](double t) { return t >= t0 && t < t1 ? value : 0.0; };
}

Signal sum_signals(Signal a, Signal b) {
  return [a = std::move(a), b = std::move(b)](double t) { return a(t) + b(t); };
}

const std::vector<double>& Trajectory::at(const std::string& name) const {
  const auto it = signals.find(name);
  if (it == signals.end()) throw Error(ErrorCode::UnknownName, "trajectory has no signal '" + name + "'");
  return it->second;
}

std::string Trajectory::to_csv() const {
  std::ostringstream o;
  o.precision(10);
  o << "t";
  for (const auto& [name, v] : signals) o << ',' << name;
  o << '\n';
  for (std::size_t k = 0; k < t.size(); ++k) {
    o << t[k];
    for (const auto& [name, v] : signals) o << ',' << v[k];
    o << '\n';
  }
  return o.str();
}

Trajectory simulate_loop(const LoopSpec& spec) {
  if (!(spec.h > 0) || !(spec.T > 0)) throw Error(ErrorCode::InvalidArgument, "simulate: need T > 0 and h > 0");
  const StateSpace g = realize_state_space(spec.G);
  if (g.D != 0.0) throw Error(ErrorCode::InvalidArgument, "simulate: plant must be strictly proper");
  StateSpace k;
  const bool has_k = spec.K.has_value();
  if (has_k) {
    k = realize_state_space(*spec.K);
    if (spec.phi_ctrl && k.D != 0.0)
      throw Error(ErrorCode::InvalidArgument, "simulate: a controller with a nonlinear feedback must be strictly proper");
  }
  const int ng = g.order(), nk = has_k ? k.order() : 0;

  struct Out {
    double e, u, v, w, y;
  };
  auto outputs = [&](const Eigen::VectorXd& x, double t) {
    Out o{};
    o.y = g.C.dot(x.head(ng));
    const double dist = spec.d(t);
    double drive;
    if (has_k) {
      o.e = spec.r(t) - o.y;
      const Eigen::VectorXd xk = x.tail(nk);
      if (spec.phi_ctrl) {
        o.u = nk ? k.C.dot(xk) : 0.0;
      } else {
        o.u = (nk ? k.C.dot(xk) : 0.0) + k.D * o.e;
      }
      o.v = spec.phi_act ? spec.phi_act->eval(o.u) : o.u;
      drive = o.v + dist;
    } else {
      o.e = spec.r(t);
      o.u = o.v = o.e;
      drive = o.e + dist;
    }
    o.w = drive - (spec.phi_plant ? spec.phi_plant->eval(o.y) : 0.0);
    return o;
  };
  auto deriv = [&](const Eigen::VectorXd& x, double t) {
    const Out o = outputs(x, t);
    Eigen::VectorXd dx(ng + nk);
    dx.head(ng) = g.A * x.head(ng) + g.B * o.w;
    if (nk) {
      const double ein = spec.phi_ctrl ? o.e - spec.phi_ctrl->eval(o.u) : o.e;
      dx.tail(nk) = k.A * x.tail(nk) + k.B * ein;
    }
    return dx;
  };

  const std::size_t steps = std::size_t(std::llround(spec.T / spec.h));
  Trajectory tr;
  tr.h = spec.h;
  tr.t.reserve(steps + 1);
  for (const char* s : {"r", "d", "e", "u", "v", "y"}) tr.signals[s].reserve(steps + 1);
  auto record = [&](const Eigen::VectorXd& x, double t) {
    const Out o = outputs(x, t);
    tr.t.push_back(t);
    tr.signals["r"].push_back(spec.r(t));
    tr.signals["d"].push_back(spec.d(t));
    tr.signals["e"].push_back(o.e);
    tr.signals["u"].push_back(o.u);
    tr.signals["v"].push_back(o.v);
    tr.signals["y"].push_back(o.y);
  };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ng + nk);
  const double h = spec.h;
  record(x, 0.0);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = double(n) * h;
    const Eigen::VectorXd k1 = deriv(x, t);
    const Eigen::VectorXd k2 = deriv(x + 0.5 * h * k1, t + 0.5 * h);
    const Eigen::VectorXd k3 = deriv(x + 0.5 * h * k2, t + 0.5 * h);
    const Eigen::VectorXd k4 = deriv(x + h * k3, t + h);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || x.norm() > 1e9) {
      std::ostringstream o;
      o << "simulate: state norm exceeded 1e9 at t = " << t + h;
      throw Error(ErrorCode::SimulationDiverged, o.str());
    }
    record(x, double(n + 1) * h);
  }
  return tr;
}

Trajectory simulate_lure(const lti::TransferFunction& G, const std::optional<lti::TransferFunction>& K,
                         const nonlin::Nonlinearity& phi, Signal r, Signal d, double T, double h) {
  LoopSpec s;
  s.G = G;
  s.K = K;
  s.phi_plant = phi;
  s.r = std::move(r);
  s.d = std::move(d);
  s.T = T;
  s.h = h;
  return simulate_loop(s);
}

}  // namespace srg::sim
