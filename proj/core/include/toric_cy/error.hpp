#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toric_cy {

enum class Errc {
  InvalidInput,
  DimensionMismatch,
  NotPrimitive,
  NotStrictlyConvex,
  NotFullDimensional,
  RedundantNormal,
  NotGood,
  NotInAnglesCone,
  NotRCartier,
  RayOutsideCone,
  NonPositiveAngle,
  ReebNotInterior,
  DegeneratePolytope,
  NotAffine,
  LineSearchFailure,
  MaxIterations,
  OutsideCone,
  SingularHessian,
  StepTooLarge,
  SingularMomentMatrix,
  NotAConeOverPolytope,
  FixtureCheckFailed,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported through this type. `indices`
/// and `certificate` carry the machine-readable part of the diagnosis:
/// the offending facet subset for NotGood, the violated kernel relation for
/// NotInAnglesCone / NotRCartier, the offending ray for ReebNotInterior.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {},
        std::vector<long long> certificate = {})
      : std::runtime_error(what),
        code_(code),
        indices_(std::move(indices)),
        certificate_(std::move(certificate)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const std::vector<long long>& certificate() const noexcept { return certificate_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
  std::vector<long long> certificate_;
};

}  // namespace toric_cy
