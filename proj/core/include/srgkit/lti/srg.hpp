#pragma once

#include "srgkit/geom/region.hpp"
#include "srgkit/lti/nyquist.hpp"

namespace srg::lti {

// h-convex hull of the Nyquist diagram of a stable operator.
geom::Region srg_lti(const TransferFunction& f, const geom::GeomSettings& s = {},
                     const FrequencyGrid& grid = {});

// Hull of the Nyquist diagram joined with {z : N(z) + n_p > 0}.
geom::Region extended_srg(const TransferFunction& f, const geom::GeomSettings& s = {},
                          const FrequencyGrid& grid = {});

double hinf_norm(const TransferFunction& f, const FrequencyGrid& grid = {});

}  // namespace srg::lti
