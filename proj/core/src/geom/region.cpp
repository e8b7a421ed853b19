#include "srgkit/geom/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geom/internal.hpp"

namespace srg::geom {

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::Guaranteed: return "GUARANTEED";
    case Certainty::VerifiedNumerically: return "VERIFIED_NUMERICALLY";
    case Certainty::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

const char* to_string(StructureKind s) {
  switch (s) {
    case StructureKind::ExactDisk: return "EXACT_DISK";
    case StructureKind::HConvexHull: return "HCONVEX_HULL";
    case StructureKind::Generic: return "GENERIC";
  }
  return "GENERIC";
}

Raster raster_from_predicate(const GeomSettings& s, bool infinity_in,
                             const std::function<bool(Complex)>& member) {
  Raster r(s.raster, infinity_in);
  auto& cells = r.cells();
  for (int k = 0; k < r.size(); ++k) {
    if (!r.in_disk(k)) continue;
    cells[k] = member(r.center_z(k)) ? 1 : 0;
  }
  return r;
}

void mark_segments(Raster& r, const std::vector<Segment>& segs) {
  auto& cells = r.cells();
  const double h = r.h();
  for (const auto& [a, b] : segs) {
    densify_segment(a, b, h, [&](Complex z) {
      const int k = r.cell_of(z);
      if (r.in_disk(k)) cells[k] = 1;
    });
  }
}

std::vector<Segment> curve_segments(const std::vector<Curve>& curves) {
  std::vector<Segment> out;
  for (const auto& c : curves) {
    const auto& p = c.points;
    if (p.empty()) continue;
    if (p.size() == 1) {
      out.emplace_back(p[0], p[0]);
      continue;
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!segment_at_infinity(p[i], p[i + 1])) out.emplace_back(p[i], p[i + 1]);
    if (c.closed && !segment_at_infinity(p.back(), p.front())) out.emplace_back(p.back(), p.front());
  }
  return out;
}

namespace detail {

std::vector<Complex> interior_from_raster(const Raster& r) {
  std::vector<Complex> out;
  const int stride = std::max(1, r.n() / 64);
  for (int j = stride / 2; j < r.rows(); j += stride) {
    for (int i = stride / 2; i < r.n(); i += stride) {
      const int k = j * r.n() + i;
      if (!r.in_disk(k) || !r.get(k)) continue;
      const Complex z = r.center_z(k);
      out.push_back(z);
      out.push_back(std::conj(z));
    }
  }
  return out;
}

void finish_flags(RegionData& d, const BuildOptions& opt) {
  if (!opt.verify_flags) return;
  Region probe(std::make_shared<RegionData>(d));
  d.chord = chord_property_check(probe);
  d.left_arc = arc_property_check(probe, ArcSide::Left);
  d.right_arc = arc_property_check(probe, ArcSide::Right);
}

}  // namespace detail

Region region_from_curves(Raster r, std::vector<Curve> curves, const GeomSettings& s,
                          const BuildOptions& opt) {
  auto d = std::make_shared<RegionData>();
  mark_segments(r, curve_segments(curves));
  d->curves = std::move(curves);
  d->contains_infinity = r.infinity_in();
  d->interior = detail::interior_from_raster(r);
  d->raster = std::move(r);
  d->settings = s;
  d->structure = opt.structure;
  d->zero_area = opt.zero_area;
  detail::finish_flags(*d, opt);
  return Region(d);
}

Region region_from_raster(Raster r, const std::vector<Segment>& candidates,
                          const GeomSettings& s, const BuildOptions& opt) {
  const int n = r.n();
  const int R = r.rows();
  const double h = r.h();
  const auto band = r.band();

  // Outward chart normal of a band cell, from the membership of its neighbours.
  auto cell_normal = [&](int k) -> Complex {
    const int i = k % n;
    const int j = k / n;
    Complex acc = 0.0;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (!di && !dj) continue;
        const int ii = i + di;
        int jj = j + dj;
        bool member;
        if (ii < 0 || ii >= n || jj >= R) {
          member = r.infinity_in();
        } else {
          if (jj < 0) jj = -1 - jj;
          member = r.get(jj * n + ii);
        }
        const Complex off(di, dj);
        acc += member ? -off : off;
      }
    }
    const double m = std::abs(acc);
    return m > 0 ? acc / m : Complex(0.0, 0.0);
  };

  std::vector<std::int32_t> slot(std::size_t(r.size()), -1);
  std::vector<Complex> best;
  std::vector<double> best_score;
  std::vector<Complex> normal;
  for (const auto& [a, b] : candidates) {
    densify_segment(a, b, h, [&](Complex z) {
      if (z.imag() < 0) z = std::conj(z);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
      const int k = r.cell_of(z);
      if (!band[k]) return;
      if (slot[k] < 0) {
        slot[k] = std::int32_t(best.size());
        best.push_back(z);
        normal.push_back(cell_normal(k));
        best_score.push_back(-std::numeric_limits<double>::infinity());
      }
      const int q = slot[k];
      const Complex dw = Raster::to_w(z) - r.center_w(k);
      const double sc = dw.real() * normal[q].real() + dw.imag() * normal[q].imag();
      if (sc > best_score[q]) {
        best_score[q] = sc;
        best[q] = z;
      }
    });
  }

  std::vector<Curve> curves;
  for (const auto& loop : contour_loops(r)) {
    Curve c;
    c.closed = true;
    c.points.reserve(loop.size());
    for (const auto& v : loop) {
      const bool lower = v.w.imag() < 0;
      const Complex vw = lower ? std::conj(v.w) : v.w;
      const Complex dir = lower ? std::conj(v.out_dir) : v.out_dir;
      double top = -std::numeric_limits<double>::infinity();
      Complex pick;
      bool found = false;
      for (int cell : {v.in_cell, v.out_cell}) {
        if (cell < 0 || slot[cell] < 0) continue;
        const Complex z = best[slot[cell]];
        const Complex dw = Raster::to_w(z) - vw;
        if (std::abs(dw) > 1.5 * h) continue;
        const double sc = dw.real() * dir.real() + dw.imag() * dir.imag();
        if (sc > top) {
          top = sc;
          pick = z;
          found = true;
        }
      }
      Complex z = found ? pick : Raster::from_w(vw);
      if (lower) z = std::conj(z);
      if (!c.points.empty() && c.points.back() == z) continue;
      c.points.push_back(z);
    }
    while (c.points.size() > 1 && c.points.front() == c.points.back()) c.points.pop_back();
    if (!c.points.empty()) curves.push_back(std::move(c));
  }

  auto d = std::make_shared<RegionData>();
  d->curves = std::move(curves);
  d->contains_infinity = r.infinity_in();
  d->interior = detail::interior_from_raster(r);
  d->raster = std::move(r);
  d->settings = s;
  d->structure = opt.structure;
  d->zero_area = opt.zero_area;
  detail::finish_flags(*d, opt);
  return Region(d);
}

bool contains(const Region& a, Complex z) {
  const auto& d = a.data();
  const double tol = d.settings.tolerance;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return d.contains_infinity;
  if (d.structure == StructureKind::ExactDisk) {
    const double c = 0.5 * (d.alpha + d.beta);
    const double rho = 0.5 * (d.beta - d.alpha);
    return std::abs(z - c) <= rho + tol * (1.0 + rho);
  }
  if (d.structure == StructureKind::HConvexHull && !d.klein.empty()) {
    if (detail::klein_contains(d.klein, z, 1e-12)) return true;
  }
  const Raster& r = d.raster;
  const Complex w = Raster::to_w(z);
  const double off = 0.75 * r.h();
  const Complex probes[5] = {w, w + off, w - off, w + Complex(0, off), w - Complex(0, off)};
  for (const Complex& p : probes) {
    if (std::abs(p) >= 1.0) {
      if (d.contains_infinity) return true;
      continue;
    }
    if (r.get(r.cell_of_w(p))) return true;
  }
  return false;
}

double region_radius(const Region& a) {
  const auto& d = a.data();
  if (d.contains_infinity) return std::numeric_limits<double>::infinity();
  if (d.structure == StructureKind::ExactDisk) return std::max(std::abs(d.alpha), std::abs(d.beta));
  double m = 0.0;
  for (const auto& c : d.curves)
    for (const Complex& z : c.points) m = std::max(m, std::abs(z));
  return m;
}

namespace {

struct IndexedPoint {
  Complex z;
  int curve;
  int index;
};

double point_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double L = std::norm(ab);
  if (L <= 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(ab)).real() / L;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

std::vector<IndexedPoint> finite_points(const Region& r) {
  std::vector<IndexedPoint> pts;
  const auto& curves = r.curves();
  for (int ci = 0; ci < int(curves.size()); ++ci) {
    const auto& p = curves[ci].points;
    for (int k = 0; k < int(p.size()); ++k)
      if (std::abs(p[k]) < kInfinityModulus) pts.push_back({p[k], ci, k});
  }
  std::sort(pts.begin(), pts.end(),
            [](const IndexedPoint& x, const IndexedPoint& y) { return x.z.real() < y.z.real(); });
  return pts;
}

// One-sided distance from samples of A to the boundary polylines of B.
double directed_distance(const std::vector<IndexedPoint>& A, const Region& b,
                         const std::vector<IndexedPoint>& B) {
  double best = std::numeric_limits<double>::infinity();
  if (B.empty()) return best;
  const auto& curves = b.curves();
  for (const auto& pa : A) {
    const Complex z = pa.z;
    auto it = std::lower_bound(B.begin(), B.end(), z.real(),
                               [](const IndexedPoint& q, double x) { return q.z.real() < x; });
    double local = std::numeric_limits<double>::infinity();
    const IndexedPoint* nearest = nullptr;
    for (auto up = it; up != B.end(); ++up) {
      if (up->z.real() - z.real() >= local) break;
      const double dd = std::abs(up->z - z);
      if (dd < local) {
        local = dd;
        nearest = &*up;
      }
    }
    for (auto dn = it; dn != B.begin();) {
      --dn;
      if (z.real() - dn->z.real() >= local) break;
      const double dd = std::abs(dn->z - z);
      if (dd < local) {
        local = dd;
        nearest = &*dn;
      }
    }
    if (nearest) {
      const auto& pts = curves[nearest->curve].points;
      const int m = int(pts.size());
      const bool closed = curves[nearest->curve].closed;
      const int k = nearest->index;
      if (k + 1 < m || closed) local = std::min(local, point_segment(z, pts[k], pts[(k + 1) % m]));
      if (k > 0 || closed) local = std::min(local, point_segment(z, pts[(k + m - 1) % m], pts[k]));
    }
    best = std::min(best, local);
  }
  return best;
}

bool rasters_overlap(const Region& a, const Region& b) {
  const Raster& ra = a.raster();
  const Raster& rb = b.raster();
  if (ra.n() != rb.n()) {
    for (const Complex& z : a.interior_samples())
      if (contains(b, z)) return true;
    for (const Complex& z : b.interior_samples())
      if (contains(a, z)) return true;
    return false;
  }
  const auto ba = ra.band();
  const auto bb = rb.band();
  for (int k = 0; k < ra.size(); ++k) {
    if (!ra.in_disk(k)) continue;
    if (ra.get(k) && rb.get(k) && (!ba[k] || !bb[k])) return true;
  }
  return false;
}

}  // namespace

double region_distance(const Region& a, const Region& b) {
  if (a.contains_infinity() && b.contains_infinity()) return 0.0;
  if (a.is_disk() && b.is_disk()) {
    const double ca = 0.5 * (a.disk_alpha() + a.disk_beta());
    const double cb = 0.5 * (b.disk_alpha() + b.disk_beta());
    const double ra = 0.5 * (a.disk_beta() - a.disk_alpha());
    const double rb = 0.5 * (b.disk_beta() - b.disk_alpha());
    return std::max(0.0, std::abs(ca - cb) - ra - rb);
  }
  if (rasters_overlap(a, b)) return 0.0;
  // sampled boundaries may still cross inside a band cell
  for (const auto& c : a.curves())
    for (std::size_t k = 0; k < c.points.size(); k += 7)
      if (b.is_disk() && contains(b, c.points[k])) return 0.0;
  for (const auto& c : b.curves())
    for (std::size_t k = 0; k < c.points.size(); k += 7)
      if (a.is_disk() && contains(a, c.points[k])) return 0.0;

  auto pa = finite_points(a);
  auto pb = finite_points(b);
  if (a.is_disk() && pa.empty()) pa.push_back({Complex(a.disk_alpha(), 0.0), 0, 0});
  if (b.is_disk() && pb.empty()) pb.push_back({Complex(b.disk_alpha(), 0.0), 0, 0});
  const double d1 = directed_distance(pa, b, pb);
  const double d2 = directed_distance(pb, a, pa);
  return std::min(d1, d2);
}

namespace {

std::vector<Complex> probe_vertices(const Region& a, std::size_t cap) {
  std::vector<Complex> v;
  for (const auto& c : a.curves())
    for (const Complex& z : c.points)
      if (z.imag() > 0 && std::abs(z) < 1e6) v.push_back(z);
  if (v.size() > cap) {
    std::vector<Complex> thin;
    const double step = double(v.size()) / double(cap);
    for (std::size_t k = 0; k < cap; ++k) thin.push_back(v[std::size_t(k * step)]);
    v.swap(thin);
  }
  return v;
}

}  // namespace

Certainty chord_property_check(const Region& a) {
  const auto& d = a.data();
  if (d.structure == StructureKind::ExactDisk) return Certainty::Guaranteed;
  const auto v = probe_vertices(a, 256);
  for (const Complex& z : v) {
    for (int t = 1; t < 16; ++t) {
      const double s = 1.0 - 2.0 * t / 16.0;
      if (!contains(a, Complex(z.real(), z.imag() * s))) return Certainty::Unknown;
    }
  }
  return Certainty::VerifiedNumerically;
}

Certainty arc_property_check(const Region& a, ArcSide side) {
  const auto& d = a.data();
  if (d.structure == StructureKind::ExactDisk) {
    const double c = 0.5 * (d.alpha + d.beta);
    if (d.alpha == d.beta) return Certainty::Guaranteed;
    if (side == ArcSide::Right && c >= 0) return Certainty::Guaranteed;
    if (side == ArcSide::Left && c <= 0) return Certainty::Guaranteed;
    // disks off-center on the wrong side fail outright
    return Certainty::Unknown;
  }
  const auto v = probe_vertices(a, 256);
  for (const Complex& z : v) {
    const double r = std::abs(z);
    const double phi = std::arg(z);
    for (int t = 1; t < 16; ++t) {
      const double s = double(t) / 16.0;
      const double psi = side == ArcSide::Right ? phi * (1.0 - 2.0 * s)
                                                : phi + s * (2.0 * M_PI - 2.0 * phi);
      if (!contains(a, std::polar(r, psi))) return Certainty::Unknown;
    }
  }
  return Certainty::VerifiedNumerically;
}

}  // namespace srg::geom
