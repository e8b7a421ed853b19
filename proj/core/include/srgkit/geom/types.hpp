#pragma once

#include <complex>
#include <vector>

namespace srg::geom {

using Complex = std::complex<double>;

enum class Certainty { Guaranteed, VerifiedNumerically, Unknown };
enum class StructureKind { ExactDisk, HConvexHull, Generic };
enum class ArcSide { Left, Right };

// Resolution knobs shared by every region built in one computation.
struct GeomSettings {
  int raster = 2048;            // columns of the compactified membership grid
  int boundary_samples = 2048;  // samples per analytic boundary curve
  double tolerance = 1e-9;
};

struct Curve {
  std::vector<Complex> points;
  bool closed = true;
};

// Modulus above which a sample is treated as the point at infinity.
inline constexpr double kInfinityModulus = 1e12;

// Both ends beyond chart resolution: the piece passes through infinity.
inline bool segment_at_infinity(Complex a, Complex b) {
  const double far = kInfinityModulus * 1e-3;
  return !(std::abs(a) < far) && !(std::abs(b) < far);
}

const char* to_string(Certainty c);
const char* to_string(StructureKind s);

inline bool usable(Certainty c) { return c != Certainty::Unknown; }

}  // namespace srg::geom
