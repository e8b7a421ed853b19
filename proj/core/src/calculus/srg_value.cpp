#include "srgkit/calculus/srg_value.hpp"

#include <sstream>

#include "srgkit/error.hpp"

namespace srg::calculus {

using geom::usable;

namespace {

void same_mode(const SrgValue& a, const SrgValue& b, const char* op) {
  if (a.mode != b.mode)
    throw Error(ErrorCode::ModeMismatch, std::string(op) + ": cannot combine " + to_string(a.mode) + " '" +
                                             a.provenance + "' with " + to_string(b.mode) + " '" + b.provenance + "'");
}

bool has_arc(const geom::Region& r) { return usable(r.left_arc_flag()) || usable(r.right_arc_flag()); }

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

}  // namespace

SrgValue lti_value(const geom::Region& r, Mode mode, std::string name) {
  return {r, true, mode, std::move(name), true};
}

SrgValue leaf_value(const geom::Region& r, Mode mode, std::string name) {
  return {r, false, mode, std::move(name), false};
}

SrgValue srg_sum(const SrgValue& a, const SrgValue& b) {
  same_mode(a, b, "srg_sum");
  const bool lti_pair = a.lti_only && b.lti_only;
  if (!lti_pair && !usable(a.region.chord_flag()) && !usable(b.region.chord_flag()))
    throw Error(ErrorCode::ChordPropertyUnverified,
                "srg_sum: neither '" + a.provenance + "' nor '" + b.provenance + "' has a verified chord property");
  return {geom::minkowski_sum(a.region, b.region), a.extended || b.extended, a.mode,
          "(" + a.provenance + " + " + b.provenance + ")", lti_pair};
}

SrgValue srg_prod(const SrgValue& a, const SrgValue& b) {
  same_mode(a, b, "srg_prod");
  const bool lti_pair = a.lti_only && b.lti_only;
  if (!lti_pair && !has_arc(a.region) && !has_arc(b.region))
    throw Error(ErrorCode::ArcPropertyUnverified,
                "srg_prod: neither '" + a.provenance + "' nor '" + b.provenance + "' has a verified arc property");
  geom::Region r;
  try {
    r = geom::set_product(a.region, b.region);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " in '" + a.provenance + " " + b.provenance + "'");
  }
  return {r, a.extended || b.extended, a.mode, a.provenance + " " + b.provenance, lti_pair};
}

SrgValue srg_inv(const SrgValue& a) {
  return {geom::mobius_inverse(a.region), a.extended, a.mode, "(" + a.provenance + ")^-1", a.lti_only};
}

SrgValue srg_scale(double alpha, const SrgValue& a) {
  return {geom::scale_region(alpha, a.region), a.extended, a.mode, fmt(alpha) + " " + a.provenance, a.lti_only};
}

SrgValue srg_shift(const SrgValue& a) {
  return {geom::shift_region(a.region), a.extended, a.mode, "(1 + " + a.provenance + ")", a.lti_only};
}

}  // namespace srg::calculus
