#include "srgkit/analysis/canonical.hpp"

#include <cmath>
#include <sstream>

#include "srgkit/calculus/srg_value.hpp"
#include "srgkit/error.hpp"
#include "srgkit/lti/srg.hpp"

namespace srg::analysis {

using calculus::SrgValue;
using geom::Region;
using geom::Complex;
using lti::TransferFunction;

namespace {

// distances below this are treated as touching
constexpr double kTouch = 1e-6;

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

void check_kappa(const nonlin::Nonlinearity& phi, double kappa, Mode mode, const geom::GeomSettings& s) {
  std::optional<nonlin::Interval> iv;
  if (mode == Mode::Incremental)
    iv = phi.incr_sector;
  else
    iv = phi.sector ? phi.sector : phi.incr_sector;
  bool ok;
  if (iv)
    ok = iv->contains(kappa);
  else
    ok = geom::contains(nonlin::srg_static(phi, mode, s), Complex(kappa, 0.0));
  if (!ok)
    throw Error(ErrorCode::KappaOutOfSector,
                "kappa = " + fmt(kappa) + " is not in the real part of the region of '" + phi.label + "'");
}

void require_bounded(const SrgValue& v, const char* what) {
  if (v.region.contains_infinity())
    throw Error(ErrorCode::UnboundedComposite, std::string(what) + ": the composite bound '" + v.provenance +
                                                   "' is unbounded");
}

// Shared tail of the two controller cases.
AnalysisReport shifted_case(const char* kind, const TransferFunction& L0, const SrgValue& composite, Mode mode,
                            double kappa, const CanonicalOptions& opt) {
  AnalysisReport rep;
  rep.kind = kind;
  rep.mode = mode;
  rep.values["kappa"] = kappa;
  rep.notes.push_back("L0 = " + L0.to_string());
  const Region l0 = lti::extended_srg(L0, opt.geometry, opt.grid);
  const SrgValue l0inv = calculus::srg_inv(calculus::lti_value(l0, mode, "L0"));
  const SrgValue lhs = calculus::srg_shift(l0inv);
  const Region rhs = geom::scale_region(-1.0, composite.region);
  const double r_m = geom::region_distance(lhs.region, rhs);
  rep.regions.push_back({"1 + SRG'(L0)^-1", lhs.region});
  rep.regions.push_back({"-composite", rhs});
  rep.values["distance"] = r_m;
  if (r_m > kTouch) {
    rep.verdict = Verdict::StableBounded;
    rep.set_margin(r_m);
  } else {
    rep.verdict = Verdict::NoBound;
    rep.set_margin(0.0);
  }
  if (opt.sensitivity && rep.verdict == Verdict::StableBounded) {
    try {
      const SrgValue s = calculus::srg_inv(calculus::srg_shift(calculus::srg_inv(calculus::srg_sum(l0inv, composite))));
      rep.regions.push_back({"sensitivity", s.region});
      rep.values["sensitivity_gain"] = geom::region_radius(s.region);
    } catch (const Error& e) {
      rep.notes.push_back(std::string("sensitivity bound unavailable: ") + e.what());
    }
  }
  rep.domain = DomainQualifier::DomOnly;
  return rep;
}

SrgValue nonlinear_value(const nonlin::Nonlinearity& phi, double kappa, Mode mode, const geom::GeomSettings& s) {
  Region r = nonlin::srg_static(phi, mode, s);
  if (kappa != 0.0) r = geom::translate_region(r, -kappa);
  return calculus::leaf_value(r, mode, kappa != 0.0 ? "(" + phi.label + " - " + fmt(kappa) + ")" : phi.label);
}

}  // namespace

AnalysisReport lure(const TransferFunction& G, const nonlin::Nonlinearity& phi, Mode mode,
                    const CanonicalOptions& opt) {
  AnalysisReport rep;
  rep.kind = "lure";
  rep.mode = mode;
  const Region p = nonlin::srg_static(phi, mode, opt.geometry);
  if (p.zero_area() && !p.is_disk())
    throw Error(ErrorCode::EmptyRegion, "lure: region of '" + phi.label + "' is degenerate");
  if (!geom::usable(p.chord_flag()))
    rep.notes.push_back("region of '" + phi.label + "' lacks a verified chord property");
  const Region gi = geom::mobius_inverse(lti::extended_srg(G, opt.geometry, opt.grid));
  const Region neg = geom::scale_region(-1.0, p);
  const double r_m = geom::region_distance(gi, neg);
  rep.regions.push_back({"SRG'(G)^-1", gi});
  rep.regions.push_back({"-SRG(phi)", neg});
  rep.values["distance"] = r_m;
  if (r_m > kTouch) {
    rep.verdict = Verdict::StableBounded;
    rep.set_margin(r_m);
  } else {
    rep.verdict = Verdict::NoBound;
    rep.set_margin(0.0);
  }
  return rep;
}

AnalysisReport controlled_lure(const TransferFunction& G, const TransferFunction& K, const nonlin::Nonlinearity& phi,
                               double kappa, Mode mode, const CanonicalOptions& opt) {
  check_kappa(phi, kappa, mode, opt.geometry);
  if (K.is_zero()) throw Error(ErrorCode::ZeroInverse, "controlled_lure: K has a zero numerator");
  const TransferFunction GK = lti::tf_mul(G, K);
  const TransferFunction L0 = lti::tf_mul(GK, lti::tf_inverse(lti::tf_add(lti::tf_scale(G, kappa), 1.0)));
  const SrgValue kinv = calculus::srg_inv(calculus::lti_value(lti::extended_srg(K, opt.geometry, opt.grid), mode, "K"));
  const SrgValue comp = calculus::srg_prod(kinv, nonlinear_value(phi, kappa, mode, opt.geometry));
  require_bounded(comp, "controlled_lure");
  return shifted_case("controlled_lure", L0, comp, mode, kappa, opt);
}

AnalysisReport lure_controller(const TransferFunction& G, const TransferFunction& K, const nonlin::Nonlinearity& phi,
                               double kappa, Mode mode, const CanonicalOptions& opt) {
  check_kappa(phi, kappa, mode, opt.geometry);
  if (G.is_zero()) throw Error(ErrorCode::ZeroInverse, "lure_controller: G has a zero numerator");
  const TransferFunction GK = lti::tf_mul(G, K);
  const TransferFunction L0 = lti::tf_mul(GK, lti::tf_inverse(lti::tf_add(lti::tf_scale(K, kappa), 1.0)));
  const SrgValue ginv = calculus::srg_inv(calculus::lti_value(lti::extended_srg(G, opt.geometry, opt.grid), mode, "G"));
  const SrgValue comp = calculus::srg_prod(nonlinear_value(phi, kappa, mode, opt.geometry), ginv);
  require_bounded(comp, "lure_controller");
  return shifted_case("lure_controller", L0, comp, mode, kappa, opt);
}

double unshifted_distance(const TransferFunction& G, const TransferFunction& K, const nonlin::Nonlinearity& phi,
                          Mode mode, const CanonicalOptions& opt) {
  const SrgValue kinv = calculus::srg_inv(calculus::lti_value(lti::extended_srg(K, opt.geometry, opt.grid), mode, "K"));
  const SrgValue comp = calculus::srg_prod(kinv, nonlinear_value(phi, 0.0, mode, opt.geometry));
  const Region gk_inv = geom::mobius_inverse(lti::extended_srg(lti::tf_mul(G, K), opt.geometry, opt.grid));
  return geom::region_distance(geom::scale_region(-1.0, comp.region), gk_inv);
}

AnalysisReport generalized_circle(const TransferFunction& G, const nonlin::Nonlinearity& phi, Mode mode,
                                  const CanonicalOptions& opt) {
  AnalysisReport rep;
  rep.kind = "generalized_circle";
  rep.mode = mode;
  const Region p = nonlin::srg_static(phi, mode, opt.geometry);
  const Region g = lti::extended_srg(G, opt.geometry, opt.grid);
  const Region gi = geom::mobius_inverse(g);
  if (!geom::usable(p.chord_flag()) && !geom::usable(geom::chord_property_check(gi)))
    rep.notes.push_back("neither SRG'(G)^-1 nor the nonlinearity region has a verified chord property");
  // inverse form of the condition
  const Region forbidden = geom::mobius_inverse(geom::scale_region(-1.0, p));
  const double d_inv = geom::region_distance(g, forbidden);
  const double r_m = geom::region_distance(gi, geom::scale_region(-1.0, p));
  rep.values["inverse_form_distance"] = d_inv;
  rep.values["distance"] = r_m;
  rep.regions.push_back({"SRG'(G)", g});
  rep.regions.push_back({"-SRG(phi)^-1", forbidden});
  if (r_m > kTouch && d_inv > 0.0) {
    rep.verdict = Verdict::StableBounded;
    rep.set_margin(r_m);
  } else {
    rep.verdict = Verdict::NoBound;
    rep.set_margin(0.0);
    if ((r_m > kTouch) != (d_inv > 0.0)) rep.notes.push_back("inverse and distance forms disagree at this resolution");
  }
  return rep;
}

CircleVerdict classical_circle(const TransferFunction& G0, double k1, double k2, const lti::FrequencyGrid& grid) {
  if (!(k1 < k2)) throw Error(ErrorCode::InvalidInterval, "classical_circle: need k1 < k2");
  TransferFunction G = G0;
  if (k2 <= 0.0) {
    // mirror: phi in [k1, k2] around G is -phi in [-k2, -k1] around -G
    G = lti::tf_scale(G0, -1.0);
    const double t = k1;
    k1 = -k2;
    k2 = -t;
  }
  CircleVerdict v;
  v.n_p = G.unstable_pole_count();
  const lti::NyquistCurve c = lti::nyquist_curve(G, grid);
  std::vector<Complex> pts;
  for (const Complex& z : c.samples)
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) pts.push_back(z);
  if (k1 > 0.0) {
    v.sector_case = 1;
    const double a = -1.0 / k1, b = -1.0 / k2;
    const double ctr = 0.5 * (a + b), rho = 0.5 * (b - a);
    double m = INFINITY;
    for (const Complex& z : pts) m = std::min(m, std::abs(z - ctr) - rho);
    v.margin = m;
    if (!(m > 0.0)) {
      v.reason = "Nyquist curve meets the critical disk";
      return v;
    }
    const double w = lti::winding_number_raw(c, Complex(ctr, 0.0));
    const int N = int(std::lround(w));
    v.stable = N == -v.n_p;
    v.reason = "critical disk encircled " + std::to_string(-N) + " time(s) counterclockwise, n_p = " +
               std::to_string(v.n_p);
    return v;
  }
  if (v.n_p > 0) {
    v.sector_case = k1 == 0.0 ? 2 : 3;
    v.reason = "open-loop unstable";
    return v;
  }
  if (k1 == 0.0) {
    v.sector_case = 2;
    if (c.reaches_infinity) {
      v.reason = "Nyquist curve is unbounded";
      return v;
    }
    double m = INFINITY;
    for (const Complex& z : pts) m = std::min(m, z.real() + 1.0 / k2);
    v.margin = m;
    v.stable = m > 0.0;
    v.reason = v.stable ? "Re G(jw) > -1/k2" : "Re G(jw) reaches -1/k2";
    return v;
  }
  v.sector_case = 3;
  if (c.reaches_infinity) {
    v.reason = "Nyquist curve is unbounded";
    return v;
  }
  const double a = -1.0 / k2, b = -1.0 / k1;
  const double ctr = 0.5 * (a + b), rho = 0.5 * (b - a);
  double m = INFINITY;
  for (const Complex& z : pts) m = std::min(m, rho - std::abs(z - ctr));
  v.margin = m;
  v.stable = m > 0.0;
  v.reason = v.stable ? "Nyquist curve inside the open disk" : "Nyquist curve leaves the disk";
  return v;
}

KappaResult kappa_search(const std::function<AnalysisReport(double)>& analysis_case, double lo, double hi, int n,
                         double center) {
  if (n < 1 || !(lo <= hi)) throw Error(ErrorCode::InvalidArgument, "kappa_search: empty grid");
  KappaResult best;
  bool any = false;
  for (int k = 0; k < n; ++k) {
    const double kappa = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    double r;
    try {
      const AnalysisReport rep = analysis_case(kappa);
      r = rep.verdict == Verdict::StableBounded ? rep.r_m : 0.0;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::KappaOutOfSector) continue;
      throw;
    }
    best.samples.emplace_back(kappa, r);
    const bool better = !any || r > best.r_m + 1e-12 ||
                        (std::abs(r - best.r_m) <= 1e-12 && std::abs(kappa - center) < std::abs(best.kappa - center));
    if (better) {
      best.kappa = kappa;
      best.r_m = r;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::KappaOutOfSector, "kappa_search: no admissible kappa on the grid");
  return best;
}

}  // namespace srg::analysis
