#include "srgkit/lang/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "srgkit/error.hpp"
#include "srgkit/lti/srg.hpp"

namespace srg::lang {

using calculus::SrgValue;

namespace {

SrgValue eval(const ExprPtr& e, const OperatorTable& t, Mode mode, const BoundOptions& opt) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Var: {
      const Operator& op = t.at(e->name);
      if (op.kind == Operator::Kind::Lti) {
        const auto& tf = op.tf;
        if (opt.extended) return calculus::lti_value(lti::extended_srg(tf, opt.geometry, opt.grid), mode, e->name);
        return calculus::leaf_value(lti::srg_lti(tf, opt.geometry, opt.grid), mode, e->name);
      }
      return calculus::leaf_value(nonlin::srg_static(op.nl, mode, opt.geometry), mode, e->name);
    }
    case K::Scale: return calculus::srg_scale(e->alpha, eval(e->a, t, mode, opt));
    case K::Inv: return calculus::srg_inv(eval(e->a, t, mode, opt));
    case K::Sum: return calculus::srg_sum(eval(e->a, t, mode, opt), eval(e->b, t, mode, opt));
    case K::Prod: return calculus::srg_prod(eval(e->a, t, mode, opt), eval(e->b, t, mode, opt));
  }
  throw Error(ErrorCode::InvalidArgument, "srg_bound: malformed word");
}

nonlin::Interval governing_interval(const nonlin::Nonlinearity& phi, Mode mode) {
  if (mode == Mode::Incremental) {
    if (phi.incr_sector) return *phi.incr_sector;
  } else {
    if (phi.sector) return *phi.sector;
    if (phi.incr_sector) return *phi.incr_sector;
  }
  if (phi.declared_srg || phi.declared_sg0)
    throw Error(ErrorCode::NotLinearizable, "'" + phi.label + "' is known only through a region bound");
  throw Error(ErrorCode::MissingSector, "'" + phi.label + "' has no sector for " + to_string(mode) + " analysis");
}

double max_singular(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

SrgValue srg_bound(const ExprPtr& e, const OperatorTable& t, Mode mode, const BoundOptions& opt) {
  check_names(e, t);
  if (!opt.collapse) return eval(e, t, mode, opt);
  const Collapsed c = collapse_lti(e, t);
  SrgValue v = eval(c.expr, c.table, mode, opt);
  v.provenance = print_expr(e);
  return v;
}

double default_kappa(const nonlin::Nonlinearity& phi, Mode mode) { return governing_interval(phi, mode).center(); }

lti::TransferFunction linearize(const ExprPtr& e, const OperatorTable& t, const std::map<std::string, double>& kappa,
                                Mode mode) {
  check_names(e, t);
  OperatorTable lin;
  for (const auto& n : expr_names(e)) {
    if (n == kIdentity) continue;
    const Operator& op = t.at(n);
    if (op.kind == Operator::Kind::Lti) {
      lin.add_lti(n, op.tf);
      continue;
    }
    if (op.kind == Operator::Kind::Region)
      throw Error(ErrorCode::NotLinearizable, "linearize: '" + n + "' is known only through a region bound");
    const nonlin::Interval iv = governing_interval(op.nl, mode);
    const auto it = kappa.find(n);
    const double k = it != kappa.end() ? it->second : iv.center();
    if (!iv.contains(k)) {
      std::ostringstream o;
      o << "linearize: kappa = " << k << " for '" << n << "' lies outside [" << iv.lo << ", " << iv.hi << "]";
      throw Error(ErrorCode::KappaOutOfSector, o.str());
    }
    lin.add_lti(n, lti::TransferFunction::constant(k));
  }
  return fold_lti(e, lin);
}

analysis::AnalysisReport analyze_interconnection(const ExprPtr& e, const OperatorTable& t, const AnalyzeOptions& opt) {
  using analysis::Verdict;
  check_names(e, t);
  analysis::AnalysisReport rep;
  rep.kind = "interconnection";
  rep.word = print_expr(e);
  rep.mode = opt.mode;

  // linearization and its stability, checked two ways
  analysis::LinearizationInfo li;
  std::vector<std::string> nl_names;
  for (const auto& n : expr_names(e)) {
    if (n == kIdentity || t.at(n).kind == Operator::Kind::Lti) continue;
    nl_names.push_back(n);
    const auto it = opt.kappa.find(n);
    if (t.at(n).kind == Operator::Kind::Nonlinear)
      li.kappa[n] = it != opt.kappa.end() ? it->second : default_kappa(t.at(n).nl, opt.mode);
  }
  const lti::TransferFunction lin = linearize(e, t, li.kappa, opt.mode);
  li.tf = lin.to_string();
  li.poles = lin.poles();
  li.stable = lin.is_stable() && lin.is_proper();
  const geom::Region ext = lti::extended_srg(lin, opt.bound.geometry, opt.bound.grid);
  li.bounded_srg = std::isfinite(geom::region_radius(ext));
  bool disagreement = li.stable != li.bounded_srg;
  if (disagreement)
    rep.notes.push_back("linearization: pole check and extended-SRG radius disagree; geometry resolution too coarse");
  if (!li.stable) {
    int unstable = 0;
    for (const auto& p : li.poles)
      if (p.real() >= -lti::kPoleTolerance) ++unstable;
    rep.notes.push_back("linearization has " + std::to_string(unstable) + " pole(s) with nonnegative real part");
  }
  for (const auto& d : lin.diagnostics()) rep.notes.push_back(d);
  rep.linearization = li;

  // bound C(R)
  double rmin = INFINITY;
  try {
    const SrgValue c = srg_bound(e, t, opt.mode, opt.bound);
    rmin = geom::region_radius(c.region);
    rep.regions.push_back({"C(R)", c.region});
  } catch (const Error& err) {
    rep.notes.push_back(std::string("bound evaluation failed: ") + err.what());
    rep.verdict = Verdict::Inconclusive;
    rep.rmin = NAN;
    return rep;
  }
  rep.rmin = rmin;

  if (!li.stable) {
    rep.verdict = nl_names.empty() ? Verdict::NoBound : Verdict::InconclusiveUnstableLinearization;
    rep.set_margin(0.0);
  } else if (!std::isfinite(rmin)) {
    rep.verdict = Verdict::NoBound;
    rep.set_margin(0.0);
  } else if (disagreement) {
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = Verdict::StableBounded;
    rep.set_margin(1.0 / rmin);
    rep.gain_bound = rmin;
  }

  // domain qualifier
  bool all_inflatable = true;
  for (const auto& n : nl_names) all_inflatable = all_inflatable && t.at(n).nl.inflatable;
  if (rep.verdict == Verdict::StableBounded && opt.tau_continuous) {
    if (all_inflatable) {
      rep.domain = analysis::DomainQualifier::Full;
    } else if (opt.tau_sweep) {
      bool finite = true;
      for (int k = 0; k < opt.tau_steps && finite; ++k) {
        const double tau = double(k) / std::max(1, opt.tau_steps - 1);
        OperatorTable lifted = t;
        for (const auto& n : nl_names) {
          Operator& op = lifted.mutable_at(n);
          if (op.kind == Operator::Kind::Region) {
            finite = false;
            break;
          }
          nonlin::Nonlinearity phi = op.nl;
          phi.inflatable = true;
          phi.lift_kind = nonlin::LiftKind::Scaling;
          op.nl = nonlin::lift_at(phi, tau);
        }
        if (!finite) break;
        try {
          finite = std::isfinite(geom::region_radius(srg_bound(e, lifted, opt.mode, opt.bound).region));
        } catch (const Error&) {
          finite = false;
        }
      }
      rep.notes.push_back(std::string("tau sweep with scaling lift: ") + (finite ? "bounded for all steps" : "unbounded at some step"));
      if (finite) rep.domain = analysis::DomainQualifier::Full;
    }
  }
  if (!opt.tau_continuous) rep.notes.push_back("tau-continuity not asserted: conclusion holds on dom(R)");
  return rep;
}

double lipschitz_bound(const Eigen::MatrixXd& AK, const Eigen::MatrixXd& BK, const Eigen::MatrixXd& CK,
                       const Eigen::MatrixXd& AG, const Eigen::MatrixXd& BG, const Eigen::MatrixXd& CG, double L1,
                       double L2) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(AK.rows() + AG.rows(), AK.cols() + AG.cols());
  A.topLeftCorner(AK.rows(), AK.cols()) = AK;
  A.bottomRightCorner(AG.rows(), AG.cols()) = AG;
  const double s_bkcg = (BK.cols() == CG.rows()) ? max_singular(BK * CG) : max_singular(BK) * max_singular(CG);
  return max_singular(A) * (1.0 + s_bkcg) + max_singular(BG) * (L1 * max_singular(CK) + L2 * max_singular(CG));
}

}  // namespace srg::lang
