#include "srgkit/lti/srg.hpp"

#include <algorithm>
#include <cmath>

#include "srgkit/error.hpp"

namespace srg::lti {

using geom::Region;

namespace {

std::vector<Complex> hull_input(const NyquistCurve& c, const TransferFunction& f) {
  std::vector<Complex> pts;
  pts.reserve(c.samples.size() + 2);
  for (const Complex& z : c.samples)
    if (std::isfinite(z.real()) && std::isfinite(z.imag())) pts.push_back(z);
  const Complex inf = f.at_infinity();
  if (std::isfinite(inf.real())) pts.push_back(inf);
  if (c.reaches_infinity) pts.emplace_back(2.0 * geom::kInfinityModulus, 0.0);
  return pts;
}

void require_stable(const TransferFunction& f, const char* who) {
  if (f.unstable_pole_count() > 0)
    throw Error(ErrorCode::UnstableOperator,
                std::string(who) + ": operator has unstable poles; use the extended SRG instead");
  if (!f.imaginary_axis_poles().empty())
    throw Error(ErrorCode::MarginalStability,
                std::string(who) + ": operator has imaginary-axis poles; use the extended SRG instead");
  if (!f.is_proper())
    throw Error(ErrorCode::UnstableOperator, std::string(who) + ": improper operator has no finite gain");
}

}  // namespace

Region srg_lti(const TransferFunction& f, const geom::GeomSettings& s, const FrequencyGrid& grid) {
  require_stable(f, "srg_lti");
  if (f.is_constant()) return geom::point_region(f(0.0).real(), s);
  const NyquistCurve c = nyquist_curve(f, grid);
  const auto pts = hull_input(c, f);
  return geom::hconvex_hull(pts, s);
}

Region extended_srg(const TransferFunction& f, const geom::GeomSettings& s, const FrequencyGrid& grid) {
  if (f.is_constant()) return geom::point_region(f(0.0).real(), s);
  const NyquistCurve c = nyquist_curve(f, grid);
  const int n_p = f.unstable_pole_count();
  const Region hull = geom::hconvex_hull(hull_input(c, f), s);

  geom::Raster r(s.raster, false);
  std::vector<std::uint8_t> wall(std::size_t(r.size()), 0);
  const std::size_t m = c.samples.size();
  std::vector<geom::Segment> curve_segs;
  curve_segs.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Complex a = c.samples[k], b = c.samples[(k + 1) % m];
    if (!geom::segment_at_infinity(a, b)) curve_segs.emplace_back(a, b);
    geom::densify_segment(a, b, r.h(), [&](Complex z) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
      const int cell = r.cell_of(z);
      if (r.in_disk(cell)) wall[cell] = 1;
    });
  }
  const geom::FaceLabels faces = geom::label_faces(r, wall);

  // a few alternative probes per face in case the representative is too close to the curve
  std::vector<std::vector<int>> probes(std::size_t(faces.count));
  for (int f2 = 0; f2 < faces.count; ++f2) probes[f2].push_back(faces.representative[f2]);
  std::vector<int> seen(std::size_t(faces.count), 0);
  for (int k = 0; k < r.size(); ++k) {
    const int lab = faces.label[k];
    if (lab < 0) continue;
    if (++seen[lab] % 97 == 0 && probes[lab].size() < 8) probes[lab].push_back(k);
  }

  std::vector<std::uint8_t> include(std::size_t(faces.count), 0);
  std::vector<std::uint8_t> touches_axis(std::size_t(faces.count), 0), touches_rim(std::size_t(faces.count), 0);
  for (int k = 0; k < r.size(); ++k) {
    const int lab = faces.label[k];
    if (lab < 0) continue;
    const int row = k / r.n();
    if (row == 0) touches_axis[lab] = 1;
    const int col = k % r.n();
    const int nb[4] = {col > 0 ? k - 1 : -1, col + 1 < r.n() ? k + 1 : -1, row + 1 < r.rows() ? k + r.n() : -1,
                       row > 0 ? k - r.n() : k};
    for (int q : nb)
      if (q < 0 || !r.in_disk(q)) touches_rim[lab] = 1;
  }
  bool any = false, outer_included = false, detached = false;
  for (int f2 = 0; f2 < faces.count; ++f2) {
    int N = 0;
    bool ok = false;
    for (int cell : probes[f2]) {
      const double w = winding_number_raw(c, r.center_z(cell));
      if (std::isfinite(w) && std::abs(w - std::round(w)) <= 0.1) {
        N = int(std::round(w));
        ok = true;
        break;
      }
    }
    if (!ok)
      throw Error(ErrorCode::IllConditionedWinding, "extended_srg: no well-conditioned probe in a face of the Nyquist diagram");
    if (N + n_p > 0) {
      include[f2] = 1;
      any = true;
      if (touches_rim[f2]) outer_included = true;
      if (!touches_axis[f2]) detached = true;
    }
  }
  if (!any && !c.reaches_infinity) return hull;

  geom::Raster out(s.raster, hull.contains_infinity() || outer_included || c.reaches_infinity);
  auto& cells = out.cells();
  const geom::Raster& hr = hull.raster();
  for (int k = 0; k < out.size(); ++k) {
    if (!out.in_disk(k)) continue;
    const int lab = faces.label[k];
    cells[k] = (hr.get(k) || wall[k] || (lab >= 0 && include[lab])) ? 1 : 0;
  }
  auto cand = geom::curve_segments(hull.curves());
  cand.insert(cand.end(), curve_segs.begin(), curve_segs.end());
  Region reg = geom::region_from_raster(std::move(out), cand, s);
  if (detached) {
    auto d = std::make_shared<geom::RegionData>(reg.data());
    d->notes.push_back("encircled set has a component not connected to the real axis");
    reg = Region(d);
  }
  return reg;
}

double hinf_norm(const TransferFunction& f, const FrequencyGrid& grid) {
  if (f.unstable_pole_count() > 0 || !f.imaginary_axis_poles().empty() || !f.is_proper())
    throw Error(ErrorCode::UnstableOperator, "hinf_norm: operator is not stable");
  if (f.is_constant()) return std::abs(f(0.0));
  std::vector<double> w{0.0};
  const int n = std::max(grid.points_per_sign, 2);
  for (int k = 0; k < n; ++k) w.push_back(grid.w_min * std::pow(grid.w_max / grid.w_min, double(k) / (n - 1)));
  for (int k = 1; k <= 60; ++k) w.push_back(grid.w_max * std::pow(grid.arc_radius / grid.w_max, k / 60.0));
  for (int k = 1; k <= 40; ++k) w.push_back(grid.w_min * std::pow(1e-3, k / 40.0));
  std::sort(w.begin(), w.end());
  auto mag = [&](double x) { return std::abs(f(Complex(0.0, x))); };
  std::size_t best = 0;
  double peak = -1.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double v = mag(w[k]);
    if (v > peak) {
      peak = v;
      best = k;
    }
  }
  double lo = w[best > 0 ? best - 1 : 0], hi = w[std::min(best + 1, w.size() - 1)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = mag(x1), f2 = mag(x2);
  for (int it = 0; it < 100 && b - a > 1e-14 * (1.0 + b); ++it) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = mag(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = mag(x2);
    }
  }
  peak = std::max({peak, f1, f2, std::abs(f.at_infinity())});
  return peak;
}

}  // namespace srg::lti
