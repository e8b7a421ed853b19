#pragma once

#include <Eigen/Dense>

#include "srgkit/lti/transfer_function.hpp"

namespace srg::sim {

using lti::Complex;

struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;
  double D = 0.0;

  int order() const { return int(A.rows()); }
  Complex response(Complex s) const;
};

// Controllable canonical form; a proper f splits into feedthrough plus a
// strictly proper remainder.
StateSpace realize_state_space(const lti::TransferFunction& f);

// Bilinear (Tustin) discretization with step h.
struct DiscreteSystem {
  Eigen::MatrixXd Ad;
  Eigen::VectorXd Bd;
  Eigen::RowVectorXd Cd;
  double Dd = 0.0;
  Eigen::VectorXd x;

  double peek(double u) const { return (x.size() ? Cd.dot(x) : 0.0) + Dd * u; }
  void commit(double u) {
    if (x.size()) x = Ad * x + Bd * u;
  }
  // input that produces output y at the current step
  double invert(double y) const;
  void reset() { x.setZero(); }
};

DiscreteSystem tustin(const StateSpace& ss, double h);

}  // namespace srg::sim
