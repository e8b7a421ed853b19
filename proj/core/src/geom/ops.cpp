#include <algorithm>
#include <cmath>
#include <limits>

#include "geom/internal.hpp"
#include "srgkit/error.hpp"

namespace srg::geom {

namespace detail {

std::vector<Curve> map_curves(const std::vector<Curve>& curves,
                              const std::function<Complex(Complex)>& f, double h) {
  auto is_inf = [](Complex z) {
    return !std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= kInfinityModulus;
  };
  std::vector<Curve> out;
  for (const auto& c : curves) {
    const auto& p = c.points;
    if (p.empty()) continue;
    if (p.size() == 1) {
      const Complex q = f(p[0]);
      if (!is_inf(q)) out.push_back({{q}, true});
      continue;
    }
    // pieces of finite image; a break is recorded when a vertex maps to infinity
    std::vector<std::vector<Complex>> pieces(1);
    bool broke = false;
    auto push = [&](Complex q) {
      if (is_inf(q)) {
        broke = true;
        if (!pieces.back().empty()) pieces.emplace_back();
        return;
      }
      pieces.back().push_back(q);
    };
    const std::size_t m = p.size();
    const std::size_t edges = c.closed ? m : m - 1;
    push(f(p[0]));
    for (std::size_t e = 0; e < edges; ++e) {
      const Complex a = p[e];
      const Complex b = p[(e + 1) % m];
      struct Piece {
        Complex a, b, fa, fb;
        int depth;
      };
      std::vector<Piece> stack{{a, b, f(a), f(b), 0}};
      while (!stack.empty()) {
        Piece s = stack.back();
        stack.pop_back();
        const bool far = is_inf(s.fa) || is_inf(s.fb) ||
                         std::abs(Raster::to_w(s.fa) - Raster::to_w(s.fb)) > 2.0 * h;
        if (!far || s.depth > 30 || std::abs(s.a - s.b) < 1e-15) {
          const bool last = (e + 1 == edges) && c.closed;
          if (!(last && stack.empty())) push(s.fb);
          continue;
        }
        const Complex mid = 0.5 * (s.a + s.b);
        const Complex fm = f(mid);
        stack.push_back({mid, s.b, fm, s.fb, s.depth + 1});
        stack.push_back({s.a, mid, s.fa, fm, s.depth + 1});
      }
    }
    if (!broke) {
      out.push_back({std::move(pieces.front()), c.closed});
      continue;
    }
    if (c.closed && pieces.size() > 1 && !pieces.front().empty() && !pieces.back().empty()) {
      // the walk wrapped around: the last piece continues into the first
      auto& last = pieces.back();
      last.insert(last.end(), pieces.front().begin(), pieces.front().end());
      pieces.front().clear();
    }
    for (auto& pc : pieces)
      if (!pc.empty()) out.push_back({std::move(pc), false});
  }
  return out;
}

}  // namespace detail

namespace {

std::shared_ptr<RegionData> clone(const Region& a) { return std::make_shared<RegionData>(a.data()); }

Region infinity_only(const GeomSettings& s) {
  auto d = std::make_shared<RegionData>();
  d->raster = Raster(s.raster, true);
  d->contains_infinity = true;
  d->settings = s;
  d->zero_area = true;
  d->chord = d->left_arc = d->right_arc = Certainty::Guaranteed;
  return Region(d);
}

Raster resample(const Raster& old, bool infinity_in, const std::function<Complex(Complex)>& pre) {
  Raster r(old.n(), infinity_in);
  auto& cells = r.cells();
  for (int k = 0; k < r.size(); ++k) {
    if (!r.in_disk(k)) continue;
    cells[k] = old.at(pre(r.center_z(k))) ? 1 : 0;
  }
  return r;
}

Region transformed(const Region& a, const std::function<Complex(Complex)>& f,
                   const std::function<Complex(Complex)>& pre, bool infinity_in,
                   bool keep_chord, int arc_mode /*0 keep,1 swap,2 recompute*/, bool recompute_chord) {
  const auto& s = a.settings();
  Raster r = resample(a.raster(), infinity_in, pre);
  auto curves = detail::map_curves(a.curves(), f, r.h());
  mark_segments(r, curve_segments(curves));
  auto d = std::make_shared<RegionData>();
  d->curves = std::move(curves);
  d->contains_infinity = infinity_in;
  d->interior = detail::interior_from_raster(r);
  d->raster = std::move(r);
  d->settings = s;
  d->structure = a.structure() == StructureKind::ExactDisk ? StructureKind::Generic : a.structure();
  d->zero_area = a.zero_area();
  d->chord = keep_chord ? a.chord_flag() : Certainty::Unknown;
  if (arc_mode == 0) {
    d->left_arc = a.left_arc_flag();
    d->right_arc = a.right_arc_flag();
  } else if (arc_mode == 1) {
    d->left_arc = a.right_arc_flag();
    d->right_arc = a.left_arc_flag();
  }
  Region probe(d);
  if (recompute_chord) d->chord = chord_property_check(probe);
  if (arc_mode == 2) {
    d->left_arc = arc_property_check(probe, ArcSide::Left);
    d->right_arc = arc_property_check(probe, ArcSide::Right);
  }
  return Region(d);
}

}  // namespace

Region disk_region(double alpha, double beta, const GeomSettings& s) {
  if (!(alpha <= beta)) throw Error(ErrorCode::InvalidInterval, "disk_region: alpha > beta");
  const double c = 0.5 * (alpha + beta);
  const double rho = 0.5 * (beta - alpha);
  Curve circle;
  if (rho == 0.0) {
    circle.points.push_back({c, 0.0});
  } else {
    const int m = std::max(8, s.boundary_samples);
    circle.points.reserve(m);
    for (int k = 0; k < m; ++k) circle.points.push_back(c + std::polar(rho, 2.0 * M_PI * k / m));
    circle.points[0] = Complex(beta, 0.0);
    if (m % 2 == 0) circle.points[m / 2] = Complex(alpha, 0.0);
  }
  const double tol = s.tolerance;
  Raster r = raster_from_predicate(s, false, [&](Complex z) {
    return std::abs(z - c) <= rho + tol * (1.0 + rho);
  });
  BuildOptions opt;
  opt.structure = StructureKind::ExactDisk;
  opt.verify_flags = false;
  opt.zero_area = rho == 0.0;
  Region reg = region_from_curves(std::move(r), {circle}, s, opt);
  auto d = clone(reg);
  d->alpha = alpha;
  d->beta = beta;
  d->chord = Certainty::Guaranteed;
  Region probe(d);
  d->left_arc = arc_property_check(probe, ArcSide::Left);
  d->right_arc = arc_property_check(probe, ArcSide::Right);
  return Region(d);
}

Region point_region(double c, const GeomSettings& s) { return disk_region(c, c, s); }

Region right_half_disk(double radius, const GeomSettings& s) {
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "right_half_disk: radius must be positive");
  Curve c;
  const int m = std::max(8, s.boundary_samples / 2);
  for (int k = 0; k <= m; ++k) c.points.push_back(std::polar(radius, -M_PI / 2 + M_PI * k / m));
  for (int k = m - 1; k > 0; --k) c.points.emplace_back(0.0, -radius + 2.0 * radius * k / m);
  std::reverse(c.points.begin() + m + 1, c.points.end());
  // loop: right semicircle bottom to top, then down the imaginary axis
  Curve loop;
  for (int k = 0; k <= m; ++k) loop.points.push_back(std::polar(radius, -M_PI / 2 + M_PI * k / m));
  for (int k = 1; k < m; ++k) loop.points.emplace_back(0.0, radius - 2.0 * radius * k / m);
  const double tol = s.tolerance;
  Raster r = raster_from_predicate(s, false, [&](Complex z) {
    return z.real() >= -tol && std::abs(z) <= radius * (1.0 + tol);
  });
  BuildOptions opt;
  opt.verify_flags = false;
  Region reg = region_from_curves(std::move(r), {loop}, s, opt);
  auto d = clone(reg);
  d->chord = Certainty::Guaranteed;
  d->right_arc = Certainty::Guaranteed;
  d->left_arc = Certainty::Unknown;
  return Region(d);
}

Region right_half_plane(const GeomSettings& s) {
  Curve axis;
  axis.closed = false;
  const int m = std::max(64, s.boundary_samples);
  // logarithmic spacing along the imaginary axis, traversed downwards
  std::vector<double> ys;
  for (int k = 0; k < m; ++k) ys.push_back(std::pow(10.0, -4.0 + 13.0 * k / (m - 1)));
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) axis.points.emplace_back(0.0, *it);
  axis.points.emplace_back(0.0, 0.0);
  for (double y : ys) axis.points.emplace_back(0.0, -y);
  const double tol = s.tolerance;
  Raster r = raster_from_predicate(s, true, [&](Complex z) { return z.real() >= -tol; });
  BuildOptions opt;
  opt.verify_flags = false;
  Region reg = region_from_curves(std::move(r), {axis}, s, opt);
  auto d = clone(reg);
  d->chord = Certainty::Guaranteed;
  d->right_arc = Certainty::Guaranteed;
  d->left_arc = Certainty::Unknown;
  return Region(d);
}

Region mobius_inverse(const Region& a) {
  const auto& s = a.settings();
  if (a.is_disk()) {
    const double al = a.disk_alpha(), be = a.disk_beta();
    if (al == be) {
      if (al == 0.0) return infinity_only(s);
      return point_region(1.0 / al, s);
    }
    if (al > 0.0 || be < 0.0) return disk_region(1.0 / be, 1.0 / al, s);
  }
  if (a.contains_infinity() && a.curves().empty() && a.zero_area()) return point_region(0.0, s);
  const bool inf = contains(a, Complex(0.0, 0.0));
  auto f = [](Complex z) -> Complex {
    if (std::abs(z) == 0.0) return {INFINITY, 0.0};
    return 1.0 / std::conj(z);
  };
  auto pre = [](Complex z) -> Complex { return 1.0 / std::conj(z); };
  Region out = transformed(a, f, pre, inf, false, 0, true);
  auto d = clone(out);
  d->structure = a.structure() == StructureKind::HConvexHull ? StructureKind::Generic : d->structure;
  return Region(d);
}

Region scale_region(double alpha, const Region& a) {
  if (alpha == 0.0) throw Error(ErrorCode::DegenerateScale, "scale_region: alpha = 0");
  const auto& s = a.settings();
  if (a.is_disk()) {
    const double x = alpha * a.disk_alpha(), y = alpha * a.disk_beta();
    return disk_region(std::min(x, y), std::max(x, y), s);
  }
  auto f = [alpha](Complex z) { return alpha * z; };
  auto pre = [alpha](Complex z) { return z / alpha; };
  return transformed(a, f, pre, a.contains_infinity(), true, alpha > 0 ? 0 : 1, false);
}

Region translate_region(const Region& a, double c) {
  if (c == 0.0) return a;
  const auto& s = a.settings();
  if (a.is_disk()) return disk_region(a.disk_alpha() + c, a.disk_beta() + c, s);
  auto f = [c](Complex z) { return z + c; };
  auto pre = [c](Complex z) { return z - c; };
  return transformed(a, f, pre, a.contains_infinity(), true, 2, false);
}

Region shift_region(const Region& a) { return translate_region(a, 1.0); }

namespace {

constexpr int kAngleBins = 2048;

struct Cone {
  double lo;   // start direction mod pi
  double len;  // angular extent, in [0, pi]
};

double mod_pi(double x) {
  double y = std::fmod(x, M_PI);
  if (y < 0) y += M_PI;
  if (y >= M_PI) y -= M_PI;
  return y;
}

double wrap_pi(double x) {
  while (x > M_PI) x -= 2 * M_PI;
  while (x <= -M_PI) x += 2 * M_PI;
  return x;
}

bool in_cone(const Cone& c, double theta) {
  const double d = mod_pi(theta - c.lo);
  const double eps = 1e-9;
  return d <= c.len + eps || d >= M_PI - eps;
}

// Edge directions (sum) or log-space edge directions (product) of a polyline.
std::vector<double> edge_directions(const Curve& c, bool log_space, std::vector<char>& valid) {
  const auto& p = c.points;
  const std::size_t m = p.size();
  const std::size_t edges = m < 2 ? 0 : (c.closed ? m : m - 1);
  std::vector<double> dir(edges, 0.0);
  valid.assign(edges, 1);
  for (std::size_t e = 0; e < edges; ++e) {
    const Complex a = p[e], b = p[(e + 1) % m];
    Complex d;
    if (log_space) {
      if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) {
        valid[e] = 0;
        continue;
      }
      d = std::log(b / a);
    } else {
      d = b - a;
    }
    if (std::abs(d) == 0.0) {
      valid[e] = 0;
      continue;
    }
    dir[e] = std::arg(d);
  }
  return dir;
}

struct ConeIndex {
  std::vector<std::vector<std::pair<int, int>>> bins;  // (curve, vertex)
  std::vector<std::vector<Cone>> cones;
};

ConeIndex build_cones(const std::vector<Curve>& curves, bool log_space) {
  ConeIndex idx;
  idx.bins.resize(kAngleBins);
  idx.cones.resize(curves.size());
  const double bw = M_PI / kAngleBins;
  for (int ci = 0; ci < int(curves.size()); ++ci) {
    const auto& c = curves[ci];
    const int m = int(c.points.size());
    std::vector<char> valid;
    const auto dir = edge_directions(c, log_space, valid);
    const int edges = int(dir.size());
    auto& cones = idx.cones[ci];
    cones.resize(m);
    for (int v = 0; v < m; ++v) {
      const int ein = v > 0 ? v - 1 : (c.closed ? edges - 1 : -1);
      const int eout = v < edges ? v : -1;
      Cone cone{0.0, M_PI};
      const bool has_in = ein >= 0 && ein < edges && valid[ein];
      const bool has_out = eout >= 0 && valid[eout];
      if (has_in && has_out) {
        const double turn = wrap_pi(dir[eout] - dir[ein]);
        if (std::abs(turn) >= M_PI - 1e-6) {
          cone = {0.0, M_PI};
        } else if (turn >= 0) {
          cone = {mod_pi(dir[ein]), turn};
        } else {
          cone = {mod_pi(dir[eout]), -turn};
        }
      } else if (has_in != has_out && !(m == 1)) {
        cone = {mod_pi(dir[has_in ? ein : eout]), 0.0};
      }
      cones[v] = cone;
      if (cone.len >= M_PI - 1e-6) {
        for (int b = 0; b < kAngleBins; ++b) idx.bins[b].push_back({ci, v});
        continue;
      }
      const int b0 = int(std::floor(cone.lo / bw));
      const int b1 = int(std::floor((cone.lo + cone.len) / bw));
      for (int b = b0 - 1; b <= b1 + 1; ++b) idx.bins[((b % kAngleBins) + kAngleBins) % kAngleBins].push_back({ci, v});
    }
  }
  return idx;
}

// Convolution of the boundary polylines: superset of the boundary of the
// Minkowski sum (or of the product, working with logarithms).
std::vector<Segment> convolution(const std::vector<Curve>& P, const std::vector<Curve>& Q, bool product) {
  std::vector<Segment> out;
  auto combine = [product](Complex a, Complex b) { return product ? a * b : a + b; };
  auto one_way = [&](const std::vector<Curve>& E, const std::vector<Curve>& V, bool swap) {
    const ConeIndex idx = build_cones(V, product);
    const double bw = M_PI / kAngleBins;
    for (const auto& c : E) {
      std::vector<char> valid;
      const auto dir = edge_directions(c, product, valid);
      const auto& p = c.points;
      const std::size_t m = p.size();
      for (std::size_t e = 0; e < dir.size(); ++e) {
        const Complex a = p[e], b = p[(e + 1) % m];
        if (!valid[e]) {
          if (!product) continue;
          // edge through the origin: every vertex of the other set contributes
          for (const auto& vc : V)
            for (const Complex& q : vc.points)
              out.emplace_back(swap ? combine(q, a) : combine(a, q), swap ? combine(q, b) : combine(b, q));
          continue;
        }
        const double th = mod_pi(dir[e]);
        const int bin = std::min(kAngleBins - 1, int(th / bw));
        for (const auto& [ci, v] : idx.bins[bin]) {
          if (!in_cone(idx.cones[ci][v], th)) continue;
          const Complex q = V[ci].points[v];
          out.emplace_back(combine(a, q), combine(b, q));
        }
      }
      // isolated points have no edges; treat them as vertices only
      if (m == 1) continue;
    }
    (void)swap;
  };
  one_way(P, Q, false);
  one_way(Q, P, true);
  // single-point curves contribute translated/scaled copies of the other boundary
  auto points_only = [&](const std::vector<Curve>& A, const std::vector<Curve>& B) {
    for (const auto& c : A) {
      if (c.points.size() != 1) continue;
      const Complex q = c.points[0];
      for (const auto& seg : curve_segments(B)) out.emplace_back(combine(seg.first, q), combine(seg.second, q));
    }
  };
  points_only(P, Q);
  points_only(Q, P);
  return out;
}

std::vector<Complex> samples_of(const Region& a) {
  std::vector<Complex> s = a.interior_samples();
  for (const auto& c : a.curves())
    for (const Complex& z : c.points)
      if (std::abs(z) < kInfinityModulus) s.push_back(z);
  if (a.is_disk()) {
    s.emplace_back(a.disk_alpha(), 0.0);
    s.emplace_back(a.disk_beta(), 0.0);
  }
  return s;
}

Region combine_regions(const Region& a, const Region& b, bool product, bool infinity_in) {
  const auto& s = a.settings();
  const auto conv = convolution(a.curves(), b.curves(), product);
  Raster r(s.raster, infinity_in);
  std::vector<std::uint8_t> wall(std::size_t(r.size()), 0);
  auto& cells = r.cells();
  for (const auto& [p, q] : conv) {
    densify_segment(p, q, r.h(), [&](Complex z) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
      const int k = r.cell_of(z);
      if (!r.in_disk(k)) return;
      wall[k] = 1;
      cells[k] = 1;
    });
  }
  const auto SA = samples_of(a);
  const auto SB = samples_of(b);
  const Raster& ra = a.raster();
  const Raster& rb = b.raster();
  auto member = [&](Complex z) -> bool {
    if (!product) {
      for (const Complex& q : SB)
        if (ra.at(z - q)) return true;
      for (const Complex& q : SA)
        if (rb.at(z - q)) return true;
      return false;
    }
    for (const Complex& q : SB)
      if (std::abs(q) > 1e-12 && ra.at(z / q)) return true;
    for (const Complex& q : SA)
      if (std::abs(q) > 1e-12 && rb.at(z / q)) return true;
    if (std::abs(z) < 1e-9) return ra.at(0.0) || rb.at(0.0);
    return false;
  };
  const FaceLabels faces = label_faces(r, wall);
  std::vector<std::uint8_t> verdict(std::size_t(faces.count), 0);
  for (int f = 0; f < faces.count; ++f) verdict[f] = member(r.center_z(faces.representative[f])) ? 1 : 0;
  for (int k = 0; k < r.size(); ++k)
    if (faces.label[k] >= 0) cells[k] = verdict[faces.label[k]];
  BuildOptions opt;
  opt.zero_area = a.zero_area() && b.zero_area();
  return region_from_raster(std::move(r), conv, s, opt);
}

}  // namespace

Region minkowski_sum(const Region& a, const Region& b) {
  if (!a.valid() || !b.valid()) throw Error(ErrorCode::EmptyRegion, "minkowski_sum: empty operand");
  if (a.is_point()) return translate_region(b, a.disk_alpha());
  if (b.is_point()) return translate_region(a, b.disk_alpha());
  if (a.is_disk() && b.is_disk())
    return disk_region(a.disk_alpha() + b.disk_alpha(), a.disk_beta() + b.disk_beta(), a.settings());
  return combine_regions(a, b, false, a.contains_infinity() || b.contains_infinity());
}

Region set_product(const Region& a, const Region& b) {
  if (!a.valid() || !b.valid()) throw Error(ErrorCode::EmptyRegion, "set_product: empty operand");
  const auto& s = a.settings();
  if (a.is_point() && a.disk_alpha() == 0.0) {
    if (b.contains_infinity()) throw Error(ErrorCode::IndeterminateProduct, "set_product: 0 times an unbounded set");
    return point_region(0.0, s);
  }
  if (b.is_point() && b.disk_alpha() == 0.0) {
    if (a.contains_infinity()) throw Error(ErrorCode::IndeterminateProduct, "set_product: 0 times an unbounded set");
    return point_region(0.0, s);
  }
  if (a.is_point()) return scale_region(a.disk_alpha(), b);
  if (b.is_point()) return scale_region(b.disk_alpha(), a);
  const bool a0 = contains(a, 0.0), b0 = contains(b, 0.0);
  if ((a0 && b.contains_infinity()) || (b0 && a.contains_infinity()))
    throw Error(ErrorCode::IndeterminateProduct, "set_product: 0 in one operand and the other is unbounded");
  if (a.is_disk() && b.is_disk() && a.disk_alpha() == -a.disk_beta() && b.disk_alpha() == -b.disk_beta()) {
    const double r = a.disk_beta() * b.disk_beta();
    return disk_region(-r, r, s);
  }
  return combine_regions(a, b, true, a.contains_infinity() || b.contains_infinity());
}

Region region_union(const Region& a, const Region& b) {
  const auto& s = a.settings();
  Raster r(s.raster, a.contains_infinity() || b.contains_infinity());
  auto& cells = r.cells();
  const Raster& ra = a.raster();
  const Raster& rb = b.raster();
  const bool same = ra.n() == r.n() && rb.n() == r.n();
  for (int k = 0; k < r.size(); ++k) {
    if (!r.in_disk(k)) continue;
    if (same)
      cells[k] = (ra.get(k) || rb.get(k)) ? 1 : 0;
    else
      cells[k] = (contains(a, r.center_z(k)) || contains(b, r.center_z(k))) ? 1 : 0;
  }
  auto segs = curve_segments(a.curves());
  const auto sb = curve_segments(b.curves());
  segs.insert(segs.end(), sb.begin(), sb.end());
  return region_from_raster(std::move(r), segs, s, {});
}

}  // namespace srg::geom
