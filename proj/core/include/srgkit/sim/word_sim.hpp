#pragma once

#include <memory>
#include <vector>

#include "srgkit/lang/expr.hpp"

namespace srg::sim {

// Sample-by-sample simulation of a word. LTI leaves use the Tustin
// discretization; inverses are solved per step, and the pattern
// (A + B^-1)^-1 is run as the feedback loop y = B(u - A(y)).
class WordSimulator {
 public:
  WordSimulator(const lang::ExprPtr& e, const lang::OperatorTable& t, double h);
  ~WordSimulator();
  WordSimulator(WordSimulator&&) noexcept;
  WordSimulator& operator=(WordSimulator&&) noexcept;

  double step(double u);
  std::vector<double> run(const std::vector<double>& u);
  void reset();

  struct Node;

 private:
  std::unique_ptr<Node> root_;
};

}  // namespace srg::sim
