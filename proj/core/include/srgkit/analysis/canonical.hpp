#pragma once

#include <functional>

#include "srgkit/analysis/report.hpp"
#include "srgkit/lti/transfer_function.hpp"
#include "srgkit/nonlin/nonlinearity.hpp"

namespace srg::analysis {

struct CanonicalOptions {
  geom::GeomSettings geometry;
  lti::FrequencyGrid grid;
  bool sensitivity = true;  // also bound the sensitivity operator
};

// Feedback of G with phi in the return path.
AnalysisReport lure(const lti::TransferFunction& G, const nonlin::Nonlinearity& phi, Mode mode,
                    const CanonicalOptions& opt = {});

// Plant G driven by the static nonlinearity phi behind controller K.
AnalysisReport controlled_lure(const lti::TransferFunction& G, const lti::TransferFunction& K,
                               const nonlin::Nonlinearity& phi, double kappa, Mode mode,
                               const CanonicalOptions& opt = {});

// Nonlinear plant phi after the linear block G, in loop with controller K.
AnalysisReport lure_controller(const lti::TransferFunction& G, const lti::TransferFunction& K,
                               const nonlin::Nonlinearity& phi, double kappa, Mode mode,
                               const CanonicalOptions& opt = {});

// dist(-SRG(K^-1 phi), SRG'((GK)^-1)): the test without the kappa loop shift.
double unshifted_distance(const lti::TransferFunction& G, const lti::TransferFunction& K,
                          const nonlin::Nonlinearity& phi, Mode mode, const CanonicalOptions& opt = {});

AnalysisReport generalized_circle(const lti::TransferFunction& G, const nonlin::Nonlinearity& phi, Mode mode,
                                  const CanonicalOptions& opt = {});

struct CircleVerdict {
  bool stable = false;
  int sector_case = 0;  // 1: 0 < k1, 2: k1 = 0, 3: k1 < 0 < k2
  int n_p = 0;
  double margin = 0.0;  // distance from the Nyquist samples to the forbidden set
  std::string reason;
};

CircleVerdict classical_circle(const lti::TransferFunction& G, double k1, double k2, const lti::FrequencyGrid& grid = {});

struct KappaResult {
  double kappa = 0.0;
  double r_m = 0.0;
  std::vector<std::pair<double, double>> samples;  // (kappa, r_m)
};

// Maximizes r_m over an evenly spaced kappa grid; ties go to `center`.
// Grid points the case rejects (kappa outside the sector) are skipped.
KappaResult kappa_search(const std::function<AnalysisReport(double)>& analysis_case, double lo, double hi, int n,
                         double center);

}  // namespace srg::analysis
