#include "srgkit/analysis/report.hpp"

#include <cmath>

#include "json.hpp"

namespace srg::analysis {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::StableBounded: return "STABLE_BOUNDED";
    case Verdict::NoBound: return "NO_BOUND";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::InconclusiveUnstableLinearization: return "INCONCLUSIVE_UNSTABLE_LINEARIZATION";
  }
  return "?";
}

const char* to_string(DomainQualifier d) { return d == DomainQualifier::Full ? "FULL" : "DOM_ONLY"; }

void AnalysisReport::set_margin(double margin) {
  r_m = margin;
  gain_bound = margin > 0 ? 1.0 / margin : std::numeric_limits<double>::infinity();
}

namespace {

nlohmann::json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r, int indent) {
  nlohmann::json j;
  j["kind"] = r.kind;
  if (!r.word.empty()) j["word"] = r.word;
  j["mode"] = to_string(r.mode);
  j["verdict"] = to_string(r.verdict);
  j["domain_qualifier"] = to_string(r.domain);
  j["r_m"] = num(r.r_m);
  j["gain_bound"] = num(r.gain_bound);
  j["bound"] = {{"rmin", num(r.rmin)}};
  if (r.linearization) {
    const auto& l = *r.linearization;
    auto poles = nlohmann::json::array();
    for (const auto& p : l.poles) poles.push_back({p.real(), p.imag()});
    j["linearization"] = {{"tf", l.tf}, {"poles", poles}, {"stable", l.stable},
                          {"bounded_extended_srg", l.bounded_srg}, {"kappa", l.kappa}};
  }
  if (r.nyquist)
    j["nyquist"] = {{"n_p", r.nyquist->n_p}, {"n_n", r.nyquist->n_n}, {"n_z", r.nyquist->n_z}};
  nlohmann::json vals = nlohmann::json::object();
  for (const auto& [k, v] : r.values) vals[k] = num(v);
  j["values"] = vals;
  auto regs = nlohmann::json::array();
  for (const auto& nr : r.regions) {
    const double rad = geom::region_radius(nr.region);
    regs.push_back({{"name", nr.name}, {"radius", num(rad)}, {"contains_infinity", nr.region.contains_infinity()}});
  }
  j["regions"] = regs;
  j["diagnostics"] = r.notes;
  return j.dump(indent);
}

}  // namespace srg::analysis
