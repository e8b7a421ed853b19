#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srgkit/geom/region.hpp"
#include "srgkit/mode.hpp"

namespace srg::nonlin {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double center() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 1e-12) const { return x >= lo - tol && x <= hi + tol; }
  bool contains(const Interval& o, double tol = 1e-12) const { return contains(o.lo, tol) && contains(o.hi, tol); }
};

enum class LiftKind { Affine, Scaling, Custom };

// Static map applied pointwise in time.
struct Nonlinearity {
  std::function<double(double)> eval;
  std::optional<Interval> sector;       // k1 <= phi(x)/x <= k2
  std::optional<Interval> incr_sector;  // k1 <= (phi(x)-phi(y))/(x-y) <= k2
  double lipschitz = 0.0;
  bool inflatable = false;
  LiftKind lift_kind = LiftKind::Scaling;
  double lift_kappa = 0.0;  // AFFINE center
  std::string label;
  // Operators known only through a bound on their graph (e.g. time-varying gains).
  std::optional<geom::Region> declared_srg;
  std::optional<geom::Region> declared_sg0;
  // Custom lift: tau -> map
  std::function<std::function<double(double)>(double)> custom_lift;
};

Nonlinearity saturation(double level = 1.0);
Nonlinearity deadzone(double width);
Nonlinearity sine(double gain = 1.0);
// beta*x^3 restricted to |x| <= amplitude
Nonlinearity cubic(double beta, double amplitude);
// x for |x| <= 1, 2x - sign(x) beyond
Nonlinearity slope_increase();
Nonlinearity linear(double k);
// Piecewise-linear interpolation; extrapolates with the end slopes.
Nonlinearity tabulated(std::vector<double> xs, std::vector<double> ys, std::string label = "table");
// Operator given only by a declared region; eval is the zero map.
Nonlinearity region_bound(const geom::Region& srg, std::optional<geom::Region> sg0, std::string label);

// Disk bound from the sector data matching the mode.
geom::Region srg_static(const Nonlinearity& phi, Mode mode, const geom::GeomSettings& s = {});

struct SectorEstimate {
  Interval sector;
  Interval incr_sector;
};
SectorEstimate sector_estimate(const Nonlinearity& phi, double a, double b, int n = 2001);

struct CubicBounds {
  geom::Region sg0;
  geom::Region srg;
};
// Bounds for beta*x^3 on signals with |x| <= A (beta = 1 by default).
CubicBounds cubic_bounds(double A, const geom::GeomSettings& s = {}, double beta = 1.0);

Nonlinearity lift_at(const Nonlinearity& phi, double tau);

}  // namespace srg::nonlin
