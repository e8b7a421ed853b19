#pragma once

#include <stdexcept>
#include <string>

namespace srg {

enum class ErrorCode {
  InvalidArgument,
  InvalidInterval,
  DegenerateScale,
  IndeterminateProduct,
  EmptyRegion,
  ChordPropertyUnverified,
  ArcPropertyUnverified,
  ModeMismatch,
  UnstableOperator,
  MarginalStability,
  IllConditionedWinding,
  NonConvergence,
  DegreeOverflow,
  ZeroInverse,
  ParseError,
  UnknownName,
  NotLinearizable,
  KappaOutOfSector,
  MissingSector,
  NotInflatable,
  UnboundedComposite,
  SimulationDiverged,
  NoSignChange,
  GeometryResolution,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace srg
