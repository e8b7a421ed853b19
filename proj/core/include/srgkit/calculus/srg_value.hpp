#pragma once

#include <string>

#include "srgkit/geom/region.hpp"
#include "srgkit/mode.hpp"

namespace srg::calculus {

struct SrgValue {
  geom::Region region;
  bool extended = false;  // built from extended LTI SRGs
  Mode mode = Mode::Incremental;
  std::string provenance;
  bool lti_only = false;  // every leaf is an extended LTI SRG
};

SrgValue lti_value(const geom::Region& r, Mode mode, std::string name);
SrgValue leaf_value(const geom::Region& r, Mode mode, std::string name);

// The sum and product rules need the chord or an arc property on one operand,
// except between extended LTI values.
SrgValue srg_sum(const SrgValue& a, const SrgValue& b);
SrgValue srg_prod(const SrgValue& a, const SrgValue& b);
SrgValue srg_inv(const SrgValue& a);
SrgValue srg_scale(double alpha, const SrgValue& a);
SrgValue srg_shift(const SrgValue& a);

}  // namespace srg::calculus
