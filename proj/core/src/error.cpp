#include "toric_cy/error.hpp"

namespace toric_cy {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NotStrictlyConvex: return "NotStrictlyConvex";
    case Errc::NotFullDimensional: return "NotFullDimensional";
    case Errc::RedundantNormal: return "RedundantNormal";
    case Errc::NotGood: return "NotGood";
    case Errc::NotInAnglesCone: return "NotInAnglesCone";
    case Errc::NotRCartier: return "NotRCartier";
    case Errc::RayOutsideCone: return "RayOutsideCone";
    case Errc::NonPositiveAngle: return "NonPositiveAngle";
    case Errc::ReebNotInterior: return "ReebNotInterior";
    case Errc::DegeneratePolytope: return "DegeneratePolytope";
    case Errc::NotAffine: return "NotAffine";
    case Errc::LineSearchFailure: return "LineSearchFailure";
    case Errc::MaxIterations: return "MaxIterations";
    case Errc::OutsideCone: return "OutsideCone";
    case Errc::SingularHessian: return "SingularHessian";
    case Errc::StepTooLarge: return "StepTooLarge";
    case Errc::SingularMomentMatrix: return "SingularMomentMatrix";
    case Errc::NotAConeOverPolytope: return "NotAConeOverPolytope";
    case Errc::FixtureCheckFailed: return "FixtureCheckFailed";
  }
  return "Unknown";
}

}  // namespace toric_cy
