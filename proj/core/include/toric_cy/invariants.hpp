#pragma once

#include <optional>
#include <vector>

#include "toric_cy/correspondence.hpp"
#include "toric_cy/polytope.hpp"

namespace toric_cy {

template <Scalar S>
struct FutakiReport {
  /// L on the chart basis {1, x~_1, ..., x~_n}; the first entry is 0.
  Vector<S> values;
  /// Coefficients (A_0, ..., A_n) of the affine projection A_beta.
  Vector<S> a_beta;
  Vector<S> barycenter_interior;  ///< ambient coordinates
  Vector<S> barycenter_boundary;  ///< ambient coordinates
  S interior_volume{};            ///< chart measure of P_xi
  S boundary_mass{};              ///< sigma_{xi,beta}(boundary)
  /// The three vanishing tests, each a dimensionless size.
  double values_size = 0;    ///< max_i |L(x~_i)| / (boundary mass * extent)
  double a_beta_size = 0;    ///< max_{i>=1} |A_i| * extent / |A_0|
  double gap_size = 0;       ///< max_i |barycenter gap| / extent
  bool vanishes = false;     ///< gap_size < tol
  bool vanishes_by_values = false;
  bool vanishes_by_a_beta = false;
};

template <Scalar S>
FutakiReport<S> log_futaki(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta, double tol = 1e-10);

template <Scalar S>
struct TotalScalarReport {
  S value{};                     ///< 2 sum_a beta_a sigma_{xi,1}(F_a)
  std::optional<S> lambda;       ///< beta_a^{-1} l_a at the monotone point of P_xi
  std::optional<S> cross_check;  ///< 2 (n / lambda) vol(P_xi), when beta is an angle vector
};

template <Scalar S>
TotalScalarReport<S> total_transversal_scalar(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta);

template <Scalar S>
struct IntegratedScalarReport {
  PiScaled<S> scalar_integral;   ///< (2 pi / n) sum beta_a vol(Sigma_a) - 2(n+1) vol(S)
  PiScaled<S> divisor_side;      ///< pi sum_a beta_a vol(Sigma_a)
  PiScaled<S> link_side;         ///< n(n+1) vol(S)
  PiScaled<S> link_volume;       ///< vol(S)
  std::vector<PiScaled<S>> divisor_volumes;
  bool matched_pair = false;     ///< beta equals the angles determined by xi
  bool identity_holds = false;   ///< divisor_side == link_side (exact, or 1e-9 relative)
};

template <Scalar S>
IntegratedScalarReport<S> integrated_scalar_identity(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta);

struct RInvariant {
  RationalVector xi;    ///< (0, ..., 0, n+1)
  RationalVector beta;
  Rational value;       ///< 1 / max_a beta_a
};

/// For a cone over a compact polytope (every extreme ray has positive last
/// coordinate); otherwise NotAConeOverPolytope.
RInvariant r_invariant(const GoodCone& cone);

extern template FutakiReport<Rational> log_futaki(const GoodCone&, const RationalVector&, const RationalVector&,
                                                  double);
extern template FutakiReport<double> log_futaki(const GoodCone&, const std::vector<double>&,
                                                const std::vector<double>&, double);
extern template TotalScalarReport<Rational> total_transversal_scalar(const GoodCone&, const RationalVector&,
                                                                     const RationalVector&);
extern template TotalScalarReport<double> total_transversal_scalar(const GoodCone&, const std::vector<double>&,
                                                                   const std::vector<double>&);
extern template IntegratedScalarReport<Rational> integrated_scalar_identity(const GoodCone&, const RationalVector&,
                                                                            const RationalVector&);
extern template IntegratedScalarReport<double> integrated_scalar_identity(const GoodCone&,
                                                                          const std::vector<double>&,
                                                                          const std::vector<double>&);

}  // namespace toric_cy
