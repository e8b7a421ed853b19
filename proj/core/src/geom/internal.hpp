#pragma once

#include <vector>

#include "srgkit/geom/region.hpp"

namespace srg::geom::detail {

Complex to_klein(Complex z);
Complex from_klein(Complex k);
bool klein_contains(const std::vector<Complex>& poly, Complex z, double eps);

std::vector<Complex> interior_from_raster(const Raster& r);
void finish_flags(RegionData& d, const BuildOptions& opt);

// Maps every curve through f, inserting samples where the image would jump by
// more than a couple of chart cells and splitting curves at infinity.
std::vector<Curve> map_curves(const std::vector<Curve>& curves,
                              const std::function<Complex(Complex)>& f, double h);

}  // namespace srg::geom::detail
