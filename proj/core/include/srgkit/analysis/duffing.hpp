#pragma once

namespace srg::analysis {

struct DuffingParams {
  double alpha = -1.0;
  double beta = 1.0;
  double delta = 0.3;
  double k_p = 5.0;
  double k_d = 5.0;
  double d_max = 1.0;
};

struct DuffingTurn {
  double y_turn = 0.0;   // first y with zero velocity after release
  double t_turn = 0.0;
  bool crossed = false;  // false: overdamped, y_turn is the supremum approached
  double energy_change = 0.0;  // H(end) - H(start)
  double energy_work = 0.0;    // integral of -delta*v^2 + v*d
};

// Integrates y'' = -a y - b y^3 - c y' + d_max from (-M, 0) with RK4 (h = 1e-4)
// until y' returns to zero.
DuffingTurn duffing_turn(const DuffingParams& p, double M, double h = 1e-4);

// Largest |y| the forced closed loop can reach: the fixed point y_turn(M) = M.
double duffing_amplitude_bound(const DuffingParams& p, double M_hi = 10.0, double tol = 1e-4);

}  // namespace srg::analysis
