#include "srgkit/nonlin/nonlinearity.hpp"

#include <algorithm>
#include <cmath>

#include "srgkit/error.hpp"

namespace srg {

Mode parse_mode(const std::string& text) {
  if (text == "incremental" || text == "srg") return Mode::Incremental;
  if (text == "non-incremental" || text == "nonincremental" || text == "sg0") return Mode::NonIncremental;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + text + "'");
}

}  // namespace srg

namespace srg::nonlin {

namespace {

Nonlinearity with_sectors(std::string label, std::function<double(double)> f, Interval sec, Interval inc) {
  Nonlinearity n;
  n.label = std::move(label);
  n.eval = std::move(f);
  n.sector = sec;
  n.incr_sector = inc;
  n.lipschitz = std::max(std::abs(inc.lo), std::abs(inc.hi));
  n.inflatable = true;
  n.lift_kind = LiftKind::Affine;
  n.lift_kappa = inc.center();
  return n;
}

}  // namespace

Nonlinearity saturation(double level) {
  if (!(level > 0)) throw Error(ErrorCode::InvalidArgument, "saturation: level must be positive");
  auto n = with_sectors("saturation", [level](double x) { return std::clamp(x, -level, level); }, {0, 1}, {0, 1});
  n.lift_kind = LiftKind::Scaling;
  n.lift_kappa = 0.0;
  return n;
}

Nonlinearity deadzone(double width) {
  if (!(width >= 0)) throw Error(ErrorCode::InvalidArgument, "deadzone: width must be nonnegative");
  auto n = with_sectors("deadzone", [width](double x) {
    if (std::abs(x) <= width) return 0.0;
    return x - std::copysign(width, x);
  }, {0, 1}, {0, 1});
  n.lift_kind = LiftKind::Scaling;
  n.lift_kappa = 0.0;
  return n;
}

Nonlinearity sine(double gain) {
  // sin(x)/x ranges over roughly [-0.2172, 1]
  auto n = with_sectors("sin", [gain](double x) { return gain * std::sin(x); },
                        {gain >= 0 ? -0.2173 * gain : gain, gain >= 0 ? gain : -0.2173 * gain},
                        {-std::abs(gain), std::abs(gain)});
  n.lift_kind = LiftKind::Scaling;
  n.lift_kappa = 0.0;
  return n;
}

Nonlinearity cubic(double beta, double amplitude) {
  if (!(beta > 0) || !(amplitude > 0)) throw Error(ErrorCode::InvalidArgument, "cubic: beta and amplitude must be positive");
  const double a2 = amplitude * amplitude;
  auto n = with_sectors("cubic", [beta](double x) { return beta * x * x * x; }, {0, beta * a2}, {0, 3 * beta * a2});
  n.lift_kind = LiftKind::Scaling;
  n.lift_kappa = 0.0;
  return n;
}

Nonlinearity slope_increase() {
  auto n = with_sectors("slope_increase", [](double x) {
    if (std::abs(x) <= 1.0) return x;
    return 2.0 * x - std::copysign(1.0, x);
  }, {1, 2}, {1, 2});
  n.lift_kind = LiftKind::Affine;
  n.lift_kappa = 1.0;
  return n;
}

Nonlinearity linear(double k) {
  auto n = with_sectors("linear", [k](double x) { return k * x; }, {k, k}, {k, k});
  n.lift_kappa = k;
  return n;
}

Nonlinearity tabulated(std::vector<double> xs, std::vector<double> ys, std::string label) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "tabulated: need at least two (x, y) pairs of equal length");
  for (std::size_t k = 1; k < xs.size(); ++k)
    if (!(xs[k] > xs[k - 1])) throw Error(ErrorCode::InvalidArgument, "tabulated: x values must increase");
  auto f = [xs, ys](double x) {
    std::size_t k = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
    k = std::clamp<std::size_t>(k, 1, xs.size() - 1);
    const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return ys[k - 1] + t * (ys[k] - ys[k - 1]);
  };
  Nonlinearity n;
  n.label = std::move(label);
  n.eval = f;
  const double lo = std::min(xs.front(), -1e-9), hi = std::max(xs.back(), 1e-9);
  const auto est = sector_estimate(n, lo, hi, 4001);
  n.sector = est.sector;
  n.incr_sector = est.incr_sector;
  n.lipschitz = std::max(std::abs(est.incr_sector.lo), std::abs(est.incr_sector.hi));
  n.inflatable = true;
  n.lift_kind = LiftKind::Affine;
  n.lift_kappa = est.incr_sector.center();
  return n;
}

Nonlinearity region_bound(const geom::Region& srg_region, std::optional<geom::Region> sg0, std::string label) {
  Nonlinearity n;
  n.label = std::move(label);
  n.eval = [](double) { return 0.0; };
  n.declared_srg = srg_region;
  n.declared_sg0 = std::move(sg0);
  n.inflatable = false;
  n.lift_kind = LiftKind::Custom;
  return n;
}

geom::Region srg_static(const Nonlinearity& phi, Mode mode, const geom::GeomSettings& s) {
  if (mode == Mode::Incremental) {
    if (phi.declared_srg) return *phi.declared_srg;
    if (phi.incr_sector) return geom::disk_region(phi.incr_sector->lo, phi.incr_sector->hi, s);
    throw Error(ErrorCode::MissingSector, "srg_static: '" + phi.label + "' has no incremental sector");
  }
  if (phi.declared_sg0) return *phi.declared_sg0;
  if (phi.sector) return geom::disk_region(phi.sector->lo, phi.sector->hi, s);
  if (phi.incr_sector) return geom::disk_region(phi.incr_sector->lo, phi.incr_sector->hi, s);
  if (phi.declared_srg) return *phi.declared_srg;
  throw Error(ErrorCode::MissingSector, "srg_static: '" + phi.label + "' has no sector");
}

SectorEstimate sector_estimate(const Nonlinearity& phi, double a, double b, int n) {
  if (!(a < 0 && b > 0)) throw Error(ErrorCode::InvalidArgument, "sector_estimate: need a < 0 < b");
  n = std::max(n, 3);
  std::vector<double> xs(n), ys(n);
  for (int k = 0; k < n; ++k) {
    xs[k] = a + (b - a) * k / (n - 1);
    ys[k] = phi.eval(xs[k]);
  }
  SectorEstimate e;
  e.sector = {INFINITY, -INFINITY};
  e.incr_sector = {INFINITY, -INFINITY};
  const double excl = 1e-6 * (b - a);
  for (int k = 0; k < n; ++k) {
    if (std::abs(xs[k]) <= excl) continue;
    const double r = ys[k] / xs[k];
    e.sector.lo = std::min(e.sector.lo, r);
    e.sector.hi = std::max(e.sector.hi, r);
  }
  const double hz = 1e-7 * (b - a);
  const double slope0 = (phi.eval(hz) - phi.eval(-hz)) / (2 * hz);
  e.sector.lo = std::min(e.sector.lo, slope0);
  e.sector.hi = std::max(e.sector.hi, slope0);
  // chord slopes are averages of adjacent slopes, so adjacent pairs suffice
  for (int k = 1; k < n; ++k) {
    const double q = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - 1]);
    e.incr_sector.lo = std::min(e.incr_sector.lo, q);
    e.incr_sector.hi = std::max(e.incr_sector.hi, q);
  }
  return e;
}

CubicBounds cubic_bounds(double A, const geom::GeomSettings& s, double beta) {
  if (!(A > 0)) throw Error(ErrorCode::InvalidArgument, "cubic_bounds: amplitude must be positive");
  if (std::isinf(A)) {
    const auto half = geom::right_half_plane(s);
    return {half, half};
  }
  const double a2 = beta * A * A;
  return {geom::right_half_disk(a2, s), geom::disk_region(-3 * a2, 3 * a2, s)};
}

Nonlinearity lift_at(const Nonlinearity& phi, double tau) {
  if (!phi.inflatable) throw Error(ErrorCode::NotInflatable, "lift_at: '" + phi.label + "' is not inflatable");
  if (!(tau >= 0.0 && tau <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lift_at: tau must lie in [0, 1]");
  if (tau == 1.0) return phi;
  Nonlinearity out = phi;
  out.label = phi.label + "@" + std::to_string(tau);
  const auto f = phi.eval;
  auto map_interval = [&](const Interval& iv, double k) {
    return Interval{k + tau * (iv.lo - k), k + tau * (iv.hi - k)};
  };
  auto map_region = [&](const geom::Region& r, double k) {
    if (tau == 0.0) return geom::point_region(k, r.settings());
    return geom::translate_region(geom::scale_region(tau, geom::translate_region(r, -k)), k);
  };
  double k = 0.0;
  switch (phi.lift_kind) {
    case LiftKind::Affine:
      k = phi.lift_kappa;
      out.eval = [f, k, tau](double x) { return k * x + tau * (f(x) - k * x); };
      break;
    case LiftKind::Scaling:
      out.eval = [f, tau](double x) { return tau * f(x); };
      break;
    case LiftKind::Custom:
      if (!phi.custom_lift) throw Error(ErrorCode::NotInflatable, "lift_at: '" + phi.label + "' has no lift map");
      out.eval = phi.custom_lift(tau);
      return out;  // original bounds stay valid by nesting
  }
  if (phi.sector) out.sector = map_interval(*phi.sector, k);
  if (phi.incr_sector) out.incr_sector = map_interval(*phi.incr_sector, k);
  if (phi.declared_srg) out.declared_srg = map_region(*phi.declared_srg, k);
  if (phi.declared_sg0) out.declared_sg0 = map_region(*phi.declared_sg0, k);
  out.lipschitz = out.incr_sector ? std::max(std::abs(out.incr_sector->lo), std::abs(out.incr_sector->hi)) : phi.lipschitz;
  return out;
}

}  // namespace srg::nonlin
