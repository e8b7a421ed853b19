#include "srgkit/sim/state_space.hpp"

#include <cmath>

#include "srgkit/error.hpp"

namespace srg::sim {

Complex StateSpace::response(Complex s) const {
  const int n = order();
  if (n == 0) return D;
  Eigen::MatrixXcd M = s * Eigen::MatrixXcd::Identity(n, n) - A.cast<Complex>();
  Eigen::VectorXcd x = M.partialPivLu().solve(B.cast<Complex>());
  return (C.cast<Complex>() * x)(0) + D;
}

StateSpace realize_state_space(const lti::TransferFunction& f) {
  if (!f.is_proper()) throw Error(ErrorCode::InvalidArgument, "realize_state_space: improper transfer function");
  const auto& den = f.den();  // monic, ascending
  const int n = f.den_degree();
  lti::Poly num = f.num();
  num.resize(std::size_t(n + 1), 0.0);
  StateSpace ss;
  ss.D = num[n] / den[n];
  ss.A = Eigen::MatrixXd::Zero(n, n);
  ss.B = Eigen::VectorXd::Zero(n);
  ss.C = Eigen::RowVectorXd::Zero(n);
  if (n == 0) return ss;
  for (int i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) ss.A(n - 1, j) = -den[j] / den[n];
  ss.B(n - 1) = 1.0 / den[n];
  // remainder numerator num - D*den
  for (int j = 0; j < n; ++j) ss.C(j) = num[j] - ss.D * den[j];
  return ss;
}

double DiscreteSystem::invert(double y) const {
  if (Dd == 0.0) throw Error(ErrorCode::ZeroInverse, "invert: discrete system has no feedthrough");
  return (y - (x.size() ? Cd.dot(x) : 0.0)) / Dd;
}

DiscreteSystem tustin(const StateSpace& ss, double h) {
  DiscreteSystem d;
  const int n = ss.order();
  d.Dd = ss.D;
  d.x = Eigen::VectorXd::Zero(n);
  if (n == 0) return d;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd ima = I - 0.5 * h * ss.A;
  const auto lu = ima.partialPivLu();
  d.Ad = lu.solve(I + 0.5 * h * ss.A);
  d.Bd = lu.solve(h * ss.B);
  d.Cd = ima.transpose().partialPivLu().solve(ss.C.transpose()).transpose();
  d.Dd = ss.D + 0.5 * ss.C.dot(d.Bd);
  return d;
}

}  // namespace srg::sim
