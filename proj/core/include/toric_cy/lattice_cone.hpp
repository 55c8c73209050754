#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric_cy/error.hpp"
#include "toric_cy/linalg.hpp"
#include "toric_cy/rational.hpp"

namespace toric_cy {

/// A face of the cone, identified by the extreme rays it contains and the
/// facets containing it. The full cone has no facets; the apex has no rays.
struct Face {
  std::vector<std::size_t> rays;
  std::vector<std::size_t> facets;
  std::size_t dim = 0;
};

/// Validated good, strictly convex, full-dimensional rational cone
/// C = { x : <v_a, x> >= 0 for all a }. Construct through check_good().
class GoodCone {
 public:
  std::size_t dim() const noexcept { return normals_.front().size(); }
  std::size_t facet_count() const noexcept { return normals_.size(); }
  const std::vector<IntVector>& normals() const noexcept { return normals_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  /// incidence()[r][a]: ray r lies on facet a.
  const std::vector<std::vector<bool>>& incidence() const noexcept { return incidence_; }
  /// All faces, ordered by decreasing dimension, apex last.
  const std::vector<Face>& faces() const noexcept { return faces_; }
  /// Integer basis of ker(A^T), A the d x (n+1) matrix of normals. The angle
  /// vectors of the cone are exactly the positive vectors orthogonal to it.
  const std::vector<IntVector>& relations() const noexcept { return relations_; }
  const std::string& name() const noexcept { return name_; }

  /// Rows of A as a rational matrix.
  Matrix<Rational> normal_matrix() const { return Matrix<Rational>::from_int_rows(normals_); }

 private:
  friend GoodCone check_good(std::vector<IntVector> normals, std::string name);
  GoodCone() = default;

  std::vector<IntVector> normals_;
  std::vector<IntVector> rays_;
  std::vector<std::vector<bool>> incidence_;
  std::vector<Face> faces_;
  std::vector<IntVector> relations_;
  std::string name_;
};

/// Primitive generators of the extreme rays of { x : <h, x> >= 0, h in
/// halfspaces }, sorted lexicographically. Exact double description.
/// Throws NotStrictlyConvex when the cone contains a line and
/// NotFullDimensional when it has empty interior.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& halfspaces);

GoodCone check_good(std::vector<IntVector> normals, std::string name = {});

/// Primitive generators of the extreme rays of the dual cone C*.
std::vector<IntVector> dual_cone(const GoodCone& cone);

/// Result of testing beta against the image of the normal map.
template <Scalar S>
struct Membership {
  std::optional<Vector<S>> witness;  ///< p with <v_a, p> = beta_a
  IntVector relation;                ///< violated relation eta when witness is absent
  S pairing{};                       ///< <beta, eta>
  bool member() const noexcept { return witness.has_value(); }
};

/// Exact membership in the angles' cone. Throws DimensionMismatch and
/// NonPositiveAngle.
Membership<Rational> angles_cone_membership(const GoodCone& cone, const RationalVector& beta);

/// Floating variant: beta is accepted when every relation pairs to zero
/// within tol relative to |beta|, and the witness is solved on a fixed
/// basis of normals.
Membership<double> angles_cone_membership(const GoodCone& cone, const std::vector<double>& beta,
                                          double tol = 1e-10);

/// Same linear algebra read as the vanishing of sum_a beta_a [Sigma_a].
bool chern_class_criterion(const GoodCone& cone, const RationalVector& beta);

struct LogPairCertificate {
  std::optional<RationalVector> interior_point;
  bool is_r_cartier = false;
  std::vector<std::pair<IntVector, Rational>> discrepancies;
  bool is_klt = false;
  bool is_q_gorenstein = false;
  IntVector relation;  ///< violated relation when not R-Cartier
};

/// Cartier witness and discrepancies a_v = <p, v> - 1 of the queried rays.
/// Each ray must be a nonzero element of C*; otherwise RayOutsideCone.
/// When beta is not an angle vector the certificate reports is_r_cartier =
/// false, and NotRCartier is thrown only if discrepancies were requested.
LogPairCertificate cartier_klt(const GoodCone& cone, const RationalVector& beta,
                               const std::vector<IntVector>& interior_rays);

/// Throws NonPositiveAngle / DimensionMismatch on malformed angle vectors.
template <Scalar S>
void require_angles(const GoodCone& cone, const Vector<S>& beta) {
  if (beta.size() != cone.facet_count())
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(cone.facet_count()) + " angles, got " +
                                             std::to_string(beta.size()));
  for (std::size_t a = 0; a < beta.size(); ++a)
    if (sign_of(beta[a]) <= 0)
      throw Error(Errc::NonPositiveAngle, "angle " + std::to_string(a) + " is not positive", {a});
}

/// Throws DimensionMismatch, or ReebNotInterior listing every ray u with
/// <xi, u> <= 0.
template <Scalar S>
void require_reeb(const GoodCone& cone, const Vector<S>& xi) {
  if (xi.size() != cone.dim())
    throw Error(Errc::DimensionMismatch, "Reeb vector must have " + std::to_string(cone.dim()) + " entries");
  std::vector<std::size_t> bad;
  for (std::size_t r = 0; r < cone.rays().size(); ++r)
    if (sign_of(dot(cone.rays()[r], xi)) <= 0) bad.push_back(r);
  if (!bad.empty())
    throw Error(Errc::ReebNotInterior, "Reeb vector is not positive on every extreme ray", bad,
                cone.rays()[bad.front()]);
}

}  // namespace toric_cy
