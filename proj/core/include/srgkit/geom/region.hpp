#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srgkit/geom/raster.hpp"
#include "srgkit/geom/types.hpp"

namespace srg::geom {

struct RegionData {
  std::vector<Curve> curves;
  std::vector<Complex> interior;
  bool contains_infinity = false;
  StructureKind structure = StructureKind::Generic;
  double alpha = 0.0;  // EXACT_DISK interval
  double beta = 0.0;
  Certainty chord = Certainty::Unknown;
  Certainty left_arc = Certainty::Unknown;
  Certainty right_arc = Certainty::Unknown;
  bool zero_area = false;
  std::vector<Complex> klein;  // hull polygon (counterclockwise) for HCONVEX_HULL
  Raster raster;
  GeomSettings settings;
  std::vector<std::string> notes;
};

// Conjugate-symmetric subset of the extended complex plane. Immutable; copies
// share storage.
class Region {
 public:
  Region() = default;
  explicit Region(std::shared_ptr<const RegionData> d) : d_(std::move(d)) {}

  bool valid() const { return d_ != nullptr; }
  const RegionData& data() const { return *d_; }

  const std::vector<Curve>& curves() const { return d_->curves; }
  const std::vector<Complex>& interior_samples() const { return d_->interior; }
  bool contains_infinity() const { return d_->contains_infinity; }
  StructureKind structure() const { return d_->structure; }
  bool is_disk() const { return d_->structure == StructureKind::ExactDisk; }
  bool is_point() const { return is_disk() && d_->alpha == d_->beta; }
  double disk_alpha() const { return d_->alpha; }
  double disk_beta() const { return d_->beta; }
  Certainty chord_flag() const { return d_->chord; }
  Certainty left_arc_flag() const { return d_->left_arc; }
  Certainty right_arc_flag() const { return d_->right_arc; }
  bool zero_area() const { return d_->zero_area; }
  const Raster& raster() const { return d_->raster; }
  const GeomSettings& settings() const { return d_->settings; }
  const std::vector<std::string>& notes() const { return d_->notes; }

 private:
  std::shared_ptr<const RegionData> d_;
};

using Segment = std::pair<Complex, Complex>;

// Constructors
Region disk_region(double alpha, double beta, const GeomSettings& s = {});
Region point_region(double c, const GeomSettings& s = {});
// {Re z >= 0, |z| <= radius}
Region right_half_disk(double radius, const GeomSettings& s = {});
// {Re z >= 0} together with infinity
Region right_half_plane(const GeomSettings& s = {});
Region hconvex_hull(std::span<const Complex> points, const GeomSettings& s = {});
Region real_interval(double lo, double hi, const GeomSettings& s = {});

std::vector<Complex> arc_min(Complex z1, Complex z2, int samples = 64);

// Transformations
Region mobius_inverse(const Region& a);
Region scale_region(double alpha, const Region& a);
Region shift_region(const Region& a);
Region translate_region(const Region& a, double c);
Region minkowski_sum(const Region& a, const Region& b);
Region set_product(const Region& a, const Region& b);
Region region_union(const Region& a, const Region& b);

// Queries
double region_radius(const Region& a);
double region_distance(const Region& a, const Region& b);
bool contains(const Region& a, Complex z);
Certainty chord_property_check(const Region& a);
Certainty arc_property_check(const Region& a, ArcSide side);

// Building blocks for derived constructions (extended SRGs, face unions).
Raster raster_from_predicate(const GeomSettings& s, bool infinity_in,
                             const std::function<bool(Complex)>& member);
void mark_segments(Raster& r, const std::vector<Segment>& segs);

struct BuildOptions {
  StructureKind structure = StructureKind::Generic;
  bool verify_flags = true;
  bool zero_area = false;
};

// Traces the raster boundary and snaps it onto the exact candidate segments.
Region region_from_raster(Raster r, const std::vector<Segment>& candidates,
                          const GeomSettings& s, const BuildOptions& opt = {});

// Finishes a region whose exact boundary curves are already known.
Region region_from_curves(Raster r, std::vector<Curve> curves, const GeomSettings& s,
                          const BuildOptions& opt = {});

std::vector<Segment> curve_segments(const std::vector<Curve>& curves);

}  // namespace srg::geom
