#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srgkit/lti/transfer_function.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srg::sim {

using Signal = std::function<double(double)>;

Signal zero_signal();
Signal step_signal(double t0, double value);
// value on [t0, t1), zero elsewhere
Signal pulse_signal(double t0, double t1, double value);
Signal sum_signals(Signal a, Signal b);

struct Trajectory {
  double h = 0.0;
  std::vector<double> t;
  std::map<std::string, std::vector<double>> signals;

  std::size_t size() const { return t.size(); }
  const std::vector<double>& at(const std::string& name) const;
  std::string to_csv() const;
};

// Loop of a strictly proper plant G with optional pieces:
//   e = r - y                         (only with a controller K)
//   u = K(e - phi_ctrl(u))            (controller, possibly a Lur'e system itself)
//   v = phi_act(u)                    (actuator nonlinearity)
//   y = G(v + d - phi_plant(y))       (plant, possibly a Lur'e system itself)
// Without K the plant is driven directly: y = G(r + d - phi_plant(y)).
struct LoopSpec {
  lti::TransferFunction G;
  std::optional<lti::TransferFunction> K;
  std::optional<nonlin::Nonlinearity> phi_plant;
  std::optional<nonlin::Nonlinearity> phi_ctrl;
  std::optional<nonlin::Nonlinearity> phi_act;
  Signal r = zero_signal();
  Signal d = zero_signal();
  double T = 10.0;
  double h = 1e-3;
};

// Fixed-step RK4; aborts with SimulationDiverged when the state norm passes 1e9.
Trajectory simulate_loop(const LoopSpec& spec);

// Lur'e family shortcut: y = G(K(r - y) + d - phi(y)), or y = G(r + d - phi(y)) without K.
Trajectory simulate_lure(const lti::TransferFunction& G, const std::optional<lti::TransferFunction>& K,
                         const nonlin::Nonlinearity& phi, Signal r, Signal d, double T, double h);

}  // namespace srg::sim
