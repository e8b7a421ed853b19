#pragma once

// Membership grid over the compactified upper half-plane.
// Chart: w = z / (1 + |z|) maps the plane onto the unit disk and the point at
// infinity onto the unit circle. Cells are square in w; cells whose center lies
// outside the unit disk stand for infinity.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "srgkit/geom/types.hpp"

namespace srg::geom {

class Raster {
 public:
  Raster() = default;
  Raster(int n, bool infinity_in);

  int n() const { return n_; }
  int rows() const { return n_ / 2; }
  int size() const { return n_ * (n_ / 2); }
  double h() const { return h_; }
  bool infinity_in() const { return infinity_in_; }

  static Complex to_w(Complex z);
  static Complex from_w(Complex w);

  int cell_of(Complex z) const;
  int cell_of_w(Complex w) const;
  Complex center_w(int idx) const;
  Complex center_z(int idx) const { return from_w(center_w(idx)); }
  bool in_disk(int idx) const { return disk_[idx] != 0; }

  bool at(Complex z) const { return cells_[cell_of(z)] != 0; }
  bool get(int idx) const { return cells_[idx] != 0; }
  void set(int idx, bool v) { cells_[idx] = v ? 1 : 0; }
  std::vector<std::uint8_t>& cells() { return cells_; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  // Cells whose 8-neighbourhood contains both members and non-members.
  std::vector<std::uint8_t> band() const;

 private:
  int n_ = 0;
  double h_ = 0.0;
  bool infinity_in_ = false;
  std::vector<std::uint8_t> cells_;
  std::shared_ptr<const std::vector<std::uint8_t>> disk_shared_;
  const std::uint8_t* disk_ = nullptr;
};

// Calls visit(z) on points of the straight segment [a, b] spaced at most
// half a cell apart in the chart.
void densify_segment(Complex a, Complex b, double h,
                     const std::function<void(Complex)>& visit);

struct FaceLabels {
  std::vector<std::int32_t> label;  // -1 on walls and infinity cells
  std::vector<int> representative;  // deepest cell of each face
  int count = 0;
};

FaceLabels label_faces(const Raster& geometry, const std::vector<std::uint8_t>& wall);

struct ContourVertex {
  Complex w;        // edge midpoint in chart coordinates (full plane)
  int in_cell;      // folded index of the member corner, -1 for padding
  int out_cell;     // folded index of the non-member corner, -1 for padding
  Complex out_dir;  // unit chart direction from member to non-member corner
};

// Marching squares over the mirrored full-plane grid; members on the left.
std::vector<std::vector<ContourVertex>> contour_loops(const Raster& r);

}  // namespace srg::geom
