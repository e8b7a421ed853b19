#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "srgkit/analysis/report.hpp"
#include "srgkit/calculus/srg_value.hpp"
#include "srgkit/lang/expr.hpp"

namespace srg::lang {

struct BoundOptions {
  bool extended = true;  // extended LTI SRGs at the leaves
  bool collapse = true;  // fold LTI-only subtrees first
  geom::GeomSettings geometry;
  lti::FrequencyGrid grid;
};

// Bottom-up evaluation of the word with SRGs substituted at the leaves.
calculus::SrgValue srg_bound(const ExprPtr& e, const OperatorTable& t, Mode mode, const BoundOptions& opt = {});

// Real center of the sector disk that governs the mode.
double default_kappa(const nonlin::Nonlinearity& phi, Mode mode);

// Every nonlinearity replaced by its gain kappa.
lti::TransferFunction linearize(const ExprPtr& e, const OperatorTable& t, const std::map<std::string, double>& kappa,
                                Mode mode = Mode::Incremental);

struct AnalyzeOptions {
  Mode mode = Mode::Incremental;
  BoundOptions bound;
  std::map<std::string, double> kappa;  // overrides of the default centers
  bool tau_continuous = false;          // user assertion
  bool tau_sweep = true;                // scaling-lift sweep for non-inflatable operators
  int tau_steps = 11;
};

analysis::AnalysisReport analyze_interconnection(const ExprPtr& e, const OperatorTable& t,
                                                 const AnalyzeOptions& opt = {});

// Lipschitz constant of the lifted closed-loop vector field of a controlled
// Lur'e chain with controller (A_K, B_K, C_K) and plant (A_G, B_G, C_G).
double lipschitz_bound(const Eigen::MatrixXd& AK, const Eigen::MatrixXd& BK, const Eigen::MatrixXd& CK,
                       const Eigen::MatrixXd& AG, const Eigen::MatrixXd& BG, const Eigen::MatrixXd& CG, double L1,
                       double L2);

}  // namespace srg::lang
