#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "srgkit/error.hpp"
#include "srgkit/geom/io.hpp"
#include "srgkit/geom/region.hpp"

using namespace srg::geom;
using srg::Error;
using srg::ErrorCode;

namespace {

// Coarser raster keeps the suite fast; tolerances below are a few cells.
GeomSettings coarse() {
  GeomSettings s;
  s.raster = 1024;
  s.boundary_samples = 1024;
  return s;
}

}  // namespace

TEST(Disk, MembershipFollowsCenterAndRadius) {
  auto d = disk_region(-1.0, 3.0, coarse());
  EXPECT_TRUE(d.is_disk());
  EXPECT_TRUE(contains(d, {1.0, 1.9}));
  EXPECT_FALSE(contains(d, {1.0, 2.1}));
  EXPECT_TRUE(contains(d, {-0.99, 0.0}));
  EXPECT_FALSE(contains(d, {3.05, 0.0}));
  EXPECT_NEAR(region_radius(d), 3.0, 1e-9);
}

TEST(Disk, RejectsReversedInterval) {
  try {
    disk_region(2.0, 1.0);
    FAIL() << "no throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInterval);
  }
}

TEST(Disk, ChordAndRightArcHold) {
  // left arc through 0.5 +- 0.5j reaches -0.707, outside D[0, 1]
  auto d = disk_region(0.0, 1.0, coarse());
  EXPECT_EQ(d.chord_flag(), Certainty::Guaranteed);
  EXPECT_FALSE(usable(d.left_arc_flag()));
  EXPECT_TRUE(usable(d.right_arc_flag()));
}

TEST(Mobius, PositiveDiskMapsToReciprocalDisk) {
  auto inv = mobius_inverse(disk_region(1.0, 2.0, coarse()));
  ASSERT_TRUE(inv.is_disk());
  EXPECT_DOUBLE_EQ(inv.disk_alpha(), 0.5);
  EXPECT_DOUBLE_EQ(inv.disk_beta(), 1.0);
}

TEST(Mobius, DiskAroundOriginMapsToExterior) {
  // disk [-1, 2] contains 0, so its image is the complement of disk [-1, 0.5]
  auto inv = mobius_inverse(disk_region(-1.0, 2.0, coarse()));
  EXPECT_TRUE(inv.contains_infinity());
  EXPECT_TRUE(contains(inv, {10.0, 0.0}));
  EXPECT_TRUE(contains(inv, {0.0, 3.0}));
  EXPECT_FALSE(contains(inv, {0.0, 0.2}));
  EXPECT_FALSE(contains(inv, {-0.25, 0.0}));
}

TEST(Mobius, InverseTwiceRecoversSamples) {
  std::vector<Complex> pts{{1.0, 1.0}, {2.0, 0.5}, {1.5, 2.0}};
  auto hull = hconvex_hull(pts, coarse());
  auto back = mobius_inverse(mobius_inverse(hull));
  for (Complex z : {Complex{1.5, 1.0}, Complex{1.8, 0.6}, Complex{1.2, 1.1}}) {
    EXPECT_EQ(contains(hull, z), contains(back, z)) << z;
  }
  EXPECT_NEAR(region_radius(back), region_radius(hull), 0.02 * region_radius(hull));
}

TEST(Transform, ScaleAndTranslateDisks) {
  auto d = disk_region(1.0, 2.0, coarse());
  auto s = scale_region(-2.0, d);
  ASSERT_TRUE(s.is_disk());
  EXPECT_DOUBLE_EQ(s.disk_alpha(), -4.0);
  EXPECT_DOUBLE_EQ(s.disk_beta(), -2.0);
  auto t = translate_region(d, 1.0);
  EXPECT_DOUBLE_EQ(t.disk_alpha(), 2.0);
  EXPECT_DOUBLE_EQ(t.disk_beta(), 3.0);
  EXPECT_THROW(scale_region(0.0, d), Error);
}

TEST(Minkowski, DisksAddCentersAndRadii) {
  // centers 0.5 and 2, radii 0.5 and 1: disk [1, 4]
  auto sum = minkowski_sum(disk_region(0.0, 1.0, coarse()), disk_region(1.0, 3.0, coarse()));
  EXPECT_TRUE(contains(sum, {3.9, 0.0}));
  EXPECT_FALSE(contains(sum, {4.15, 0.0}));
  EXPECT_TRUE(contains(sum, {2.5, 1.45}));
  EXPECT_FALSE(contains(sum, {2.5, 1.6}));
  EXPECT_NEAR(region_radius(sum), 4.0, 0.03);
}

TEST(SetProduct, DiskTimesPointScales) {
  auto prod = set_product(disk_region(1.0, 2.0, coarse()), point_region(2.0, coarse()));
  EXPECT_TRUE(contains(prod, {3.0, 0.9}));
  EXPECT_FALSE(contains(prod, {3.0, 1.15}));
  EXPECT_NEAR(region_radius(prod), 4.0, 0.03);
}

TEST(Hull, ContainsMinimalArcBetweenPoints) {
  Complex a{1.0, 1.0}, b{3.0, 0.5};
  std::vector<Complex> pts{a, b};
  auto hull = hconvex_hull(pts, coarse());
  auto arc = arc_min(a, b, 32);
  for (auto z : arc) EXPECT_TRUE(contains(hull, z)) << z;
  EXPECT_TRUE(contains(hull, std::conj(a)));
  EXPECT_FALSE(contains(hull, {0.0, 0.0}));
  EXPECT_FALSE(contains(hull, {2.0, 3.0}));
}

TEST(Hull, ArcMinLiesOnCircleCenteredOnRealAxis) {
  Complex a{0.5, 2.0}, b{2.5, 1.0};
  // center c on the real axis with |a - c| = |b - c|
  double c = (std::norm(a) - std::norm(b)) / (2.0 * (a.real() - b.real()));
  double r = std::abs(a - c);
  for (auto z : arc_min(a, b, 40)) {
    EXPECT_NEAR(std::abs(z - c), r, 1e-9);
    EXPECT_GE(z.imag(), 0.0);
  }
}

TEST(Distance, SeparatedDisks) {
  EXPECT_NEAR(region_distance(disk_region(0.0, 1.0, coarse()), disk_region(2.0, 3.0, coarse())), 1.0, 5e-3);
  EXPECT_NEAR(region_distance(disk_region(0.0, 2.0, coarse()), disk_region(1.0, 3.0, coarse())), 0.0, 1e-12);
}

TEST(Primitives, HalfDiskHalfPlaneInterval) {
  auto hd = right_half_disk(1.0, coarse());
  EXPECT_TRUE(contains(hd, {0.5, 0.5}));
  EXPECT_FALSE(contains(hd, {-0.3, 0.0}));
  EXPECT_FALSE(contains(hd, {0.9, 0.9}));
  auto hp = right_half_plane(coarse());
  EXPECT_TRUE(hp.contains_infinity());
  EXPECT_TRUE(contains(hp, {100.0, -50.0}));
  auto iv = real_interval(-1.0, 2.0, coarse());
  EXPECT_TRUE(contains(iv, {0.5, 0.0}));
  EXPECT_FALSE(contains(iv, {0.5, 0.1}));
}

TEST(Union, ContainsBothOperands) {
  auto u = region_union(disk_region(0.0, 1.0, coarse()), disk_region(3.0, 4.0, coarse()));
  EXPECT_TRUE(contains(u, {0.5, 0.0}));
  EXPECT_TRUE(contains(u, {3.5, 0.4}));
  EXPECT_FALSE(contains(u, {2.0, 0.0}));
}

TEST(Io, JsonAndSvgRender) {
  auto d = disk_region(0.0, 1.0, coarse());
  auto js = region_to_json(d);
  EXPECT_NE(js.find("\"curves\""), std::string::npos);
  EXPECT_NE(js.find("EXACT_DISK"), std::string::npos);
  SvgPlot plot;
  plot.add_region(d, "#ccc", "#000", "D");
  auto svg = plot.render(200);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}
