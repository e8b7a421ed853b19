#pragma once

#include <string>
#include <vector>

#include "srgkit/geom/region.hpp"

namespace srg::geom {

// {curves, interior, contains_infinity, structure, flags}
std::string region_to_json(const Region& a, int indent = -1);

// Minimal SVG canvas in complex-plane coordinates (imaginary axis up).
class SvgPlot {
 public:
  explicit SvgPlot(double view_radius = 0.0) : view_radius_(view_radius) {}

  void add_region(const Region& a, const std::string& fill, const std::string& stroke,
                  const std::string& label = {});
  void add_polyline(const std::vector<Complex>& pts, const std::string& stroke,
                    const std::string& label = {});
  void add_marker(Complex z, const std::string& color, const std::string& label = {});

  std::string render(int pixels = 640) const;

 private:
  struct Item {
    enum Kind { Fill, Line, Marker } kind;
    std::vector<std::vector<Complex>> paths;
    std::string fill, stroke, label;
  };
  std::vector<Item> items_;
  double view_radius_;
};

}  // namespace srg::geom
