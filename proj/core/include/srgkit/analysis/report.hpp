#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srgkit/geom/region.hpp"
#include "srgkit/lti/nyquist.hpp"
#include "srgkit/mode.hpp"

namespace srg::analysis {

enum class Verdict { StableBounded, NoBound, Inconclusive, InconclusiveUnstableLinearization };
enum class DomainQualifier { Full, DomOnly };

const char* to_string(Verdict v);
const char* to_string(DomainQualifier d);

struct NamedRegion {
  std::string name;
  geom::Region region;
};

struct LinearizationInfo {
  std::string tf;
  std::vector<lti::Complex> poles;
  bool stable = false;          // direct pole check
  bool bounded_srg = false;     // finite radius of the extended SRG
  std::map<std::string, double> kappa;
};

struct AnalysisReport {
  std::string kind;
  std::string word;
  Mode mode = Mode::Incremental;
  double r_m = std::numeric_limits<double>::quiet_NaN();
  double gain_bound = std::numeric_limits<double>::infinity();
  double rmin = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::Inconclusive;
  DomainQualifier domain = DomainQualifier::DomOnly;
  std::optional<LinearizationInfo> linearization;
  std::optional<lti::NyquistVerdict> nyquist;
  std::map<std::string, double> values;
  std::vector<NamedRegion> regions;
  std::vector<std::string> notes;

  // Sets r_m and the reciprocal gain bound together.
  void set_margin(double margin);
};

std::string report_to_json(const AnalysisReport& r, int indent = 2);

}  // namespace srg::analysis
