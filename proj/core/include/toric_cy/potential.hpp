#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric_cy/lattice_cone.hpp"

namespace toric_cy {

enum class PotentialKind { GuilleminBeta, CanonicalXi };

/// A sum of terms (c/2) f log f with f linear on the ambient space.
class SymplecticPotential {
 public:
  struct Term {
    Rational coefficient;
    RationalVector linear;
    std::vector<double> linear_d;
    double coefficient_d = 0;
  };

  /// G = 1/2 sum_a beta_a^{-1} l_a log l_a.
  static SymplecticPotential guillemin(const GoodCone& cone, const RationalVector& beta);
  /// G + 1/2 l_xi log l_xi - 1/2 l_inf log l_inf, l_inf = sum_a beta_a^{-1} l_a.
  static SymplecticPotential canonical(const GoodCone& cone, const RationalVector& beta, const RationalVector& xi);

  PotentialKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const RationalVector& beta() const noexcept { return beta_; }
  /// The Reeb vector of the potential: xi^can = sum_a beta_a^{-1} v_a for the
  /// Guillemin potential, the prescribed xi otherwise.
  const RationalVector& reeb() const noexcept { return reeb_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Rows are the facet normals; interior means all positive.
  const std::vector<IntVector>& normals() const noexcept { return normals_; }

 private:
  SymplecticPotential() = default;

  PotentialKind kind_ = PotentialKind::GuilleminBeta;
  std::size_t dim_ = 0;
  RationalVector beta_;
  RationalVector reeb_;
  std::vector<Term> terms_;
  std::vector<IntVector> normals_;
};

struct PotentialValue {
  double value = 0;
  std::vector<double> gradient;
  std::vector<std::vector<double>> hessian;
};

/// Throws OutsideCone unless every l_a(x) > 0.
PotentialValue eval_potential(const SymplecticPotential& pot, const std::vector<double>& x);

/// Hessian only; exact at rational points.
std::vector<RationalVector> potential_hessian(const SymplecticPotential& pot, const RationalVector& x);
std::vector<std::vector<double>> potential_hessian(const SymplecticPotential& pot, const std::vector<double>& x);

struct MetricSample {
  std::vector<double> point;
  std::vector<std::vector<double>> hessian;   ///< G_ij, the dx dx block
  std::vector<std::vector<double>> inverse;   ///< G^ij, the dtheta dtheta block
  double condition_number = 0;
  double reeb_residual = 0;  ///< max_j |2 sum_i G_ij x_i - xi_j|
};

/// Throws SingularHessian when the Hessian is not positive definite or its
/// condition number exceeds 1e12.
MetricSample metric_at(const SymplecticPotential& pot, const std::vector<double>& x);

struct AbreuEstimate {
  double value = 0;            ///< Richardson combination of the two steps
  double coarse = 0;           ///< estimate at step h
  double fine = 0;             ///< estimate at step h/2
  double error_indicator = 0;  ///< |coarse - fine|
};

/// R = -sum_ij d^2 G^ij / dx_i dx_j by central differences. Throws
/// StepTooLarge unless l_a(x)/|v_a| > 10 h for every facet.
AbreuEstimate abreu_scalar_curvature(const SymplecticPotential& pot, const std::vector<double>& x, double h = 1e-3);

}  // namespace toric_cy
