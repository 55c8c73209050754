#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "toric_cy/lattice_cone.hpp"
#include "toric_cy/linalg.hpp"

namespace toric_cy {

using Simplex = std::vector<std::size_t>;

/// Simplicial subdivision of C by cones over extreme rays, together with
/// the induced subdivision of every facet. Simplices hold ray indices.
struct ConeTriangulation {
  std::vector<Simplex> cells;                 ///< dim() rays each
  std::vector<std::vector<Simplex>> facets;   ///< per facet a, dim()-1 rays each
};

/// Pulling triangulation over the face lattice: each face is coned from its
/// earliest vertex (in `order`) over the subfaces not containing it. An
/// empty order means the natural ray order.
ConeTriangulation pulling_triangulation(const GoodCone& cone, const std::vector<std::size_t>& order = {});

/// Affine function x -> <linear, x> + constant in ambient coordinates.
template <Scalar S>
struct AffineFunction {
  Vector<S> linear;
  S constant{};

  S operator()(const Vector<S>& x) const { return dot(linear, x) + constant; }
};

template <Scalar S>
struct PolytopeMoments {
  S volume{};                          ///< chart measure of P_xi
  Vector<S> barycenter;                ///< ambient coordinates
  std::vector<Vector<S>> second_moments;  ///< ambient, integral of x_i x_j against the chart measure
  S euclid_volume_delta{};             ///< Lebesgue volume of the truncated cone
};

template <Scalar S>
struct BoundaryIntegral {
  S total{};
  Vector<S> per_facet;
};

/// A value c * pi^k kept with an exact coefficient.
template <Scalar S>
struct PiScaled {
  S coefficient{};
  int pi_power = 0;
  double value() const { return to_double(coefficient) * std::pow(std::numbers::pi, pi_power); }
};

template <Scalar S>
struct FacetVolumes {
  /// vol(F_a) / |v_a|; rational for rational xi.
  Vector<S> facet_volume_over_norm;
  /// |v_a|^2, so vol(F_a) = sqrt(norm_sq) * facet_volume_over_norm.
  std::vector<long long> normal_norm_sq;
  S delta_volume{};
  PiScaled<S> link_volume;            ///< vol(S)
  std::vector<PiScaled<S>> divisor_volumes;  ///< vol(Sigma_a)

  double facet_volume(std::size_t a) const {
    return std::sqrt(static_cast<double>(normal_norm_sq[a])) * to_double(facet_volume_over_norm[a]);
  }
};

struct SliceOptions {
  std::optional<std::size_t> chart_drop;  ///< override the dropped ambient coordinate
  std::vector<std::size_t> vertex_order;  ///< pulling order; empty = natural
};

/// P_xi = C ∩ {<xi, x> = 1/2} with an affine chart obtained by dropping one
/// ambient coordinate and translating the first vertex to the origin.
template <Scalar S>
class TransversalPolytope {
 public:
  TransversalPolytope(const GoodCone& cone, Vector<S> xi, const SliceOptions& options = {});

  const GoodCone& cone() const noexcept { return cone_; }
  const Vector<S>& xi() const noexcept { return xi_; }
  std::size_t ambient_dim() const noexcept { return cone_.dim(); }
  std::size_t dim() const noexcept { return cone_.dim() - 1; }
  std::size_t chart_drop() const noexcept { return drop_; }
  /// Vertex i is ray i scaled onto the hyperplane.
  const std::vector<Vector<S>>& vertices() const noexcept { return vertices_; }
  const std::vector<Simplex>& triangulation() const noexcept { return tri_.cells; }
  const std::vector<Simplex>& facet_triangulation(std::size_t a) const { return tri_.facets[a]; }
  /// Vertex indices on facet a.
  const std::vector<std::size_t>& facet_vertices(std::size_t a) const { return facet_map_[a]; }
  const Vector<S>& chart_origin() const noexcept { return vertices_.front(); }

  /// Chart coordinates of an ambient point of the hyperplane.
  Vector<S> to_chart(const Vector<S>& x) const;
  /// The chart coordinate x~_i as an affine function in ambient coordinates.
  AffineFunction<S> chart_coordinate(std::size_t i) const;

  /// Chart measure of each top simplex; all strictly positive.
  Vector<S> simplex_volumes() const;
  PolytopeMoments<S> moments() const;

  /// Mass of sigma_{xi,1} on each facet (sigma_{xi,beta} = beta_a sigma_{xi,1} there).
  Vector<S> unit_facet_measures() const;
  /// Integral of f against sigma_{xi,beta} over the boundary, per facet and total.
  BoundaryIntegral<S> boundary_integral(const Vector<S>& beta, const AffineFunction<S>& f) const;
  FacetVolumes<S> facet_volumes() const;

 private:
  S chart_det(const std::vector<Vector<S>>& columns) const;
  /// sigma_{xi,1} mass of one boundary simplex, divided into its vertex mean.
  S unit_simplex_measure(std::size_t a, const Simplex& s) const;

  GoodCone cone_;
  Vector<S> xi_;
  std::size_t drop_ = 0;
  std::vector<Vector<S>> vertices_;
  ConeTriangulation tri_;
  std::vector<std::vector<std::size_t>> facet_map_;
  std::vector<Vector<S>> facet_tangents_;  ///< u_a with <xi,u_a> = 0, <v_a,u_a> = 1
};

template <Scalar S>
TransversalPolytope<S> slice(const GoodCone& cone, const Vector<S>& xi, const SliceOptions& options = {}) {
  return TransversalPolytope<S>(cone, xi, options);
}

/// Lebesgue volume of {x in C : <xi, x> <= 1/2} summed over the given
/// cone cells; shared by the polytope engine and the volume function.
template <Scalar S>
S truncated_cone_volume(const GoodCone& cone, const std::vector<Simplex>& cells, const Vector<S>& xi);

namespace detail {
long long factorial(std::size_t k);
}

extern template class TransversalPolytope<Rational>;
extern template class TransversalPolytope<double>;
extern template Rational truncated_cone_volume<Rational>(const GoodCone&, const std::vector<Simplex>&,
                                                         const RationalVector&);
extern template double truncated_cone_volume<double>(const GoodCone&, const std::vector<Simplex>&,
                                                     const std::vector<double>&);

}  // namespace toric_cy
