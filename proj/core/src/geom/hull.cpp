#include <algorithm>
#include <cmath>

#include "geom/internal.hpp"
#include "srgkit/error.hpp"

namespace srg::geom {

namespace detail {

Complex to_klein(Complex z) {
  if (z.imag() < 0) z = std::conj(z);
  const double r = std::abs(z);
  if (!std::isfinite(r) || r >= kInfinityModulus) return {1.0, 0.0};
  const Complex j(0.0, 1.0);
  const Complex w = (z - j) / (z + j);
  return 2.0 * w / (1.0 + std::norm(w));
}

Complex from_klein(Complex k) {
  const double m2 = std::min(1.0, std::norm(k));
  const Complex w = k / (1.0 + std::sqrt(1.0 - m2));
  const Complex j(0.0, 1.0);
  const Complex den = 1.0 - w;
  if (std::abs(den) < 1.0 / kInfinityModulus) return {kInfinityModulus, 0.0};
  return j * (1.0 + w) / den;
}

namespace {
inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }
}  // namespace

bool klein_contains(const std::vector<Complex>& poly, Complex z, double eps) {
  const Complex p = to_klein(z);
  const int m = int(poly.size());
  if (m == 0) return false;
  if (m == 1) return std::abs(p - poly[0]) <= eps;
  if (m == 2) {
    const Complex ab = poly[1] - poly[0];
    const double L = std::norm(ab);
    double t = ((p - poly[0]) * std::conj(ab)).real() / L;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (poly[0] + t * ab)) <= eps;
  }
  // tolerances are distances to the supporting lines
  auto side = [](Complex a, Complex b, Complex q) {
    const Complex ab = b - a;
    const double L = std::abs(ab);
    return L > 0 ? cross(ab, q - a) / L : 0.0;
  };
  // fan from an interior point; a fan from a vertex breaks down when its
  // neighbours crowd together near the ideal boundary
  const Complex c = (poly[0] + poly[m / 3] + poly[(2 * m) / 3]) / 3.0;
  const double a0 = std::arg(poly[0] - c);
  auto rel = [&](Complex q) {
    double t = std::arg(q - c) - a0;
    while (t < 0) t += 2.0 * M_PI;
    while (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
    return t;
  };
  const double tp = rel(p);
  int lo = 0, hi = m;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (rel(poly[mid]) <= tp)
      lo = mid;
    else
      hi = mid;
  }
  return side(poly[lo], poly[(lo + 1) % m], p) >= -eps;
}

}  // namespace detail

std::vector<Complex> arc_min(Complex z1, Complex z2, int samples) {
  if (z1 == z2) return {z1};
  samples = std::max(2, samples);
  std::vector<Complex> out;
  out.reserve(samples);
  const double dx = z2.real() - z1.real();
  if (std::abs(dx) <= 1e-14 * (1.0 + std::abs(z1) + std::abs(z2))) {
    for (int k = 0; k < samples; ++k) out.push_back(z1 + (z2 - z1) * (double(k) / (samples - 1)));
    return out;
  }
  const double x = (std::norm(z2) - std::norm(z1)) / (2.0 * dx);
  const double rho = std::abs(z1 - x);
  const double a1 = std::arg(z1 - x);
  const double a2 = std::arg(z2 - x);
  for (int k = 0; k < samples; ++k) {
    const double t = double(k) / (samples - 1);
    out.push_back(x + std::polar(rho, a1 + t * (a2 - a1)));
  }
  out.front() = z1;
  out.back() = z2;
  return out;
}

Region real_interval(double lo, double hi, const GeomSettings& s) {
  if (lo > hi) throw Error(ErrorCode::InvalidInterval, "real_interval: lo > hi");
  if (lo == hi) return disk_region(lo, hi, s);
  Raster r(s.raster, false);
  std::vector<Curve> curves;
  Curve c;
  const int m = std::max(2, s.boundary_samples / 2);
  for (int k = 0; k < m; ++k) c.points.emplace_back(lo + (hi - lo) * k / (m - 1), 0.0);
  for (int k = m - 2; k > 0; --k) c.points.emplace_back(lo + (hi - lo) * k / (m - 1), 0.0);
  curves.push_back(std::move(c));
  BuildOptions opt;
  opt.verify_flags = false;
  opt.zero_area = true;
  Region reg = region_from_curves(std::move(r), std::move(curves), s, opt);
  auto d = std::make_shared<RegionData>(reg.data());
  d->chord = d->left_arc = d->right_arc = Certainty::Guaranteed;
  return Region(d);
}

Region hconvex_hull(std::span<const Complex> points, const GeomSettings& s) {
  if (points.empty()) throw Error(ErrorCode::EmptyRegion, "hconvex_hull: no points");
  const double tol = s.tolerance;
  std::vector<Complex> up;
  up.reserve(points.size());
  bool all_real = true;
  bool reaches_infinity = false;
  double lo = INFINITY, hi = -INFINITY;
  for (Complex z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= kInfinityModulus) {
      reaches_infinity = true;
      all_real = false;
      up.emplace_back(kInfinityModulus, 0.0);
      continue;
    }
    if (z.imag() < 0) z = std::conj(z);
    if (z.imag() > tol * (1.0 + std::abs(z))) all_real = false;
    lo = std::min(lo, z.real());
    hi = std::max(hi, z.real());
    up.push_back(z);
  }
  if (all_real) {
    Region r = real_interval(lo, hi, s);
    auto d = std::make_shared<RegionData>(r.data());
    d->notes.push_back("degenerate hull: all points real");
    return Region(d);
  }

  std::vector<Complex> k;
  k.reserve(up.size());
  for (Complex z : up) {
    if (z.imag() < 1e-12) z = Complex(z.real(), z.imag() + 1e-12);
    k.push_back(detail::to_klein(z));
  }
  std::sort(k.begin(), k.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  k.erase(std::unique(k.begin(), k.end(), [](Complex a, Complex b) { return std::abs(a - b) < 1e-13; }), k.end());

  // Andrew's monotone chain, counterclockwise, collinear points dropped.
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull;
  if (k.size() <= 2) {
    hull = k;
  } else {
    std::vector<Complex> H(2 * k.size());
    std::size_t m = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      while (m >= 2 && cross(H[m - 2], H[m - 1], k[i]) <= 0) --m;
      H[m++] = k[i];
    }
    for (std::size_t i = k.size() - 1, t = m + 1; i-- > 0;) {
      while (m >= t && cross(H[m - 2], H[m - 1], k[i]) <= 0) --m;
      H[m++] = k[i];
    }
    H.resize(m - 1);
    hull = std::move(H);
  }

  // Boundary: Klein chords are hyperbolic geodesics; sample them in the Klein
  // model and map back so every sample lies on Arc_min.
  const Raster probe(s.raster, false);
  const double step = 0.45 * probe.h();
  Curve upper;
  upper.closed = true;
  const std::size_t m = hull.size();
  for (std::size_t e = 0; e < (m == 1 ? 1 : m); ++e) {
    const Complex ka = hull[e];
    const Complex kb = hull[(e + 1) % m];
    const Complex za = detail::from_klein(ka);
    const Complex zb = detail::from_klein(kb);
    upper.points.push_back(za);
    if (m == 1) break;
    std::vector<std::pair<double, double>> stack{{0.0, 1.0}};
    std::vector<double> ts;
    while (!stack.empty()) {
      auto [t0, t1] = stack.back();
      stack.pop_back();
      const Complex w0 = Raster::to_w(detail::from_klein(ka + t0 * (kb - ka)));
      const Complex w1 = Raster::to_w(detail::from_klein(ka + t1 * (kb - ka)));
      if (std::abs(w0 - w1) <= step || t1 - t0 < 1e-9) continue;
      const double tm = 0.5 * (t0 + t1);
      ts.push_back(tm);
      stack.push_back({tm, t1});
      stack.push_back({t0, tm});
    }
    std::sort(ts.begin(), ts.end());
    for (double t : ts) upper.points.push_back(detail::from_klein(ka + t * (kb - ka)));
    (void)zb;
  }
  Curve lower;
  lower.closed = true;
  for (auto it = upper.points.rbegin(); it != upper.points.rend(); ++it)
    lower.points.push_back(std::conj(*it));

  const auto poly = hull;
  Raster r = raster_from_predicate(s, reaches_infinity, [&](Complex z) {
    return detail::klein_contains(poly, z, 1e-12);
  });
  BuildOptions opt;
  opt.structure = StructureKind::HConvexHull;
  opt.verify_flags = false;
  opt.zero_area = hull.size() < 3;
  Region reg = region_from_curves(std::move(r), {upper, lower}, s, opt);
  auto d = std::make_shared<RegionData>(reg.data());
  d->klein = hull;
  BuildOptions flags;
  detail::finish_flags(*d, flags);
  return Region(d);
}

}  // namespace srg::geom
