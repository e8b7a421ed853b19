#include "srgkit/error.hpp"

namespace srg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvalidInterval: return "invalid-interval";
    case ErrorCode::DegenerateScale: return "degenerate-scale";
    case ErrorCode::IndeterminateProduct: return "indeterminate-product";
    case ErrorCode::EmptyRegion: return "empty-region";
    case ErrorCode::ChordPropertyUnverified: return "chord-property-unverified";
    case ErrorCode::ArcPropertyUnverified: return "arc-property-unverified";
    case ErrorCode::ModeMismatch: return "mode-mismatch";
    case ErrorCode::UnstableOperator: return "unstable-operator";
    case ErrorCode::MarginalStability: return "marginal-stability";
    case ErrorCode::IllConditionedWinding: return "ill-conditioned-winding";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::DegreeOverflow: return "degree-overflow";
    case ErrorCode::ZeroInverse: return "zero-inverse";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::UnknownName: return "unknown-name";
    case ErrorCode::NotLinearizable: return "not-linearizable";
    case ErrorCode::KappaOutOfSector: return "kappa-out-of-sector";
    case ErrorCode::MissingSector: return "missing-sector";
    case ErrorCode::NotInflatable: return "not-inflatable";
    case ErrorCode::UnboundedComposite: return "unbounded-composite";
    case ErrorCode::SimulationDiverged: return "simulation-diverged";
    case ErrorCode::NoSignChange: return "no-sign-change";
    case ErrorCode::GeometryResolution: return "geometry-resolution";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

}  // namespace srg
