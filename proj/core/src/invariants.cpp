#include "toric_cy/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace toric_cy {

namespace {

template <Scalar S>
double size_of(const S& x) {
  return std::abs(to_double(x));
}

template <Scalar S>
std::optional<Vector<S>> angle_witness(const GoodCone& cone, const Vector<S>& beta) {
  return angles_cone_membership(cone, beta).witness;
}

}  // namespace

template <Scalar S>
FutakiReport<S> log_futaki(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta, double tol) {
  TransversalPolytope<S> poly(cone, xi);
  require_angles(cone, beta);
  PolytopeMoments<S> m = poly.moments();
  const std::size_t n = poly.dim();
  const std::size_t n1 = poly.ambient_dim();
  const S zero = from_int<S>(0);

  FutakiReport<S> r;
  r.interior_volume = m.volume;
  r.barycenter_interior = m.barycenter;

  AffineFunction<S> one{Vector<S>(n1, zero), from_int<S>(1)};
  r.boundary_mass = poly.boundary_integral(beta, one).total;
  const S ratio = r.boundary_mass / m.volume;

  // basis {1, x~_1, ..., x~_n}
  std::vector<AffineFunction<S>> basis{one};
  for (std::size_t i = 0; i < n; ++i) basis.push_back(poly.chart_coordinate(i));

  Vector<S> boundary(n + 1), interior(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    boundary[i] = poly.boundary_integral(beta, basis[i]).total;
    interior[i] = m.volume * basis[i](m.barycenter);
    r.values.push_back(boundary[i] - ratio * interior[i]);
  }

  for (std::size_t j = 0; j < n1; ++j) {
    AffineFunction<S> coord{Vector<S>(n1, zero), zero};
    coord.linear[j] = from_int<S>(1);
    r.barycenter_boundary.push_back(poly.boundary_integral(beta, coord).total / r.boundary_mass);
  }

  // moment matrix M_ij = integral of x~_i x~_j, from the ambient second moments
  Matrix<S> mm(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const AffineFunction<S>& fi = basis[i];
      const AffineFunction<S>& fj = basis[j];
      S acc = fi.constant * fj.constant * m.volume;
      for (std::size_t a = 0; a < n1; ++a) {
        S first = m.volume * m.barycenter[a];
        acc += (fi.linear[a] * fj.constant + fj.linear[a] * fi.constant) * first;
        for (std::size_t b = 0; b < n1; ++b) acc += fi.linear[a] * fj.linear[b] * m.second_moments[a][b];
      }
      mm(i, j) = acc;
    }
  }
  Vector<S> rhs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) rhs[i] = from_int<S>(2) * boundary[i];
  std::optional<Vector<S>> a = solve_square(mm, rhs);
  if (!a) throw Error(Errc::SingularMomentMatrix, "moment matrix of the transversal polytope is singular");
  r.a_beta = *a;

  double extent = 0;
  for (const Vector<S>& v : poly.vertices())
    for (const S& c : poly.to_chart(v)) extent = std::max(extent, size_of(c));
  for (std::size_t i = 1; i <= n; ++i) {
    r.values_size = std::max(r.values_size, size_of(r.values[i]) / (size_of(r.boundary_mass) * extent));
    r.a_beta_size = std::max(r.a_beta_size, size_of(r.a_beta[i]) * extent / size_of(r.a_beta[0]));
  }
  for (std::size_t j = 0; j < n1; ++j)
    r.gap_size = std::max(r.gap_size, size_of(S(r.barycenter_boundary[j] - r.barycenter_interior[j])) / extent);
  r.vanishes = r.gap_size < tol;
  r.vanishes_by_values = r.values_size < tol;
  r.vanishes_by_a_beta = r.a_beta_size < tol;
  return r;
}

template <Scalar S>
TotalScalarReport<S> total_transversal_scalar(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta) {
  TransversalPolytope<S> poly(cone, xi);
  require_angles(cone, beta);
  TotalScalarReport<S> r;
  Vector<S> unit = poly.unit_facet_measures();
  r.value = from_int<S>(0);
  for (std::size_t a = 0; a < unit.size(); ++a) r.value += beta[a] * unit[a];
  r.value *= from_int<S>(2);

  if (std::optional<Vector<S>> p = angle_witness(cone, beta)) {
    // the monotone ray meets P_xi at p / (2 <xi, p>)
    S lambda = from_int<S>(1) / (from_int<S>(2) * dot(xi, *p));
    r.lambda = lambda;
    r.cross_check = from_int<S>(2 * static_cast<long long>(poly.dim())) / lambda * poly.moments().volume;
  }
  return r;
}

template <Scalar S>
IntegratedScalarReport<S> integrated_scalar_identity(const GoodCone& cone, const Vector<S>& xi,
                                                     const Vector<S>& beta) {
  TransversalPolytope<S> poly(cone, xi);
  require_angles(cone, beta);
  FacetVolumes<S> fv = poly.facet_volumes();
  const long long n = static_cast<long long>(poly.dim());
  const int power = static_cast<int>(n + 1);

  IntegratedScalarReport<S> r;
  r.link_volume = fv.link_volume;
  r.divisor_volumes = fv.divisor_volumes;

  S weighted = from_int<S>(0);  // sum_a beta_a vol(Sigma_a) / pi^n
  for (std::size_t a = 0; a < beta.size(); ++a) weighted += beta[a] * fv.divisor_volumes[a].coefficient;

  r.divisor_side = {weighted, power};
  r.link_side = {from_int<S>(n * (n + 1)) * fv.link_volume.coefficient, power};
  r.scalar_integral = {from_int<S>(2) * weighted / from_int<S>(n) -
                           from_int<S>(2 * (n + 1)) * fv.link_volume.coefficient,
                       power};

  Vector<S> angles = reeb_to_angles(cone, xi).beta;
  if constexpr (std::is_same_v<S, Rational>) {
    r.matched_pair = angles == beta;
    r.identity_holds = r.divisor_side.coefficient == r.link_side.coefficient;
  } else {
    double worst = 0, top = 0;
    for (std::size_t a = 0; a < beta.size(); ++a) {
      worst = std::max(worst, std::abs(angles[a] - beta[a]));
      top = std::max(top, std::abs(beta[a]));
    }
    r.matched_pair = worst <= 1e-9 * top;
    r.identity_holds = std::abs(r.divisor_side.coefficient - r.link_side.coefficient) <=
                       1e-9 * std::abs(r.link_side.coefficient);
  }
  return r;
}

RInvariant r_invariant(const GoodCone& cone) {
  const std::size_t last = cone.dim() - 1;
  for (std::size_t r = 0; r < cone.rays().size(); ++r)
    if (cone.rays()[r][last] <= 0)
      throw Error(Errc::NotAConeOverPolytope, "an extreme ray has nonpositive last coordinate", {r},
                  cone.rays()[r]);
  RInvariant out;
  out.xi.assign(cone.dim(), Rational(0));
  out.xi[last] = static_cast<long>(cone.dim());
  out.beta = reeb_to_angles(cone, out.xi).beta;
  Rational top = *std::max_element(out.beta.begin(), out.beta.end());
  out.value = 1 / top;
  return out;
}

template FutakiReport<Rational> log_futaki(const GoodCone&, const RationalVector&, const RationalVector&, double);
template FutakiReport<double> log_futaki(const GoodCone&, const std::vector<double>&, const std::vector<double>&,
                                         double);
template TotalScalarReport<Rational> total_transversal_scalar(const GoodCone&, const RationalVector&,
                                                              const RationalVector&);
template TotalScalarReport<double> total_transversal_scalar(const GoodCone&, const std::vector<double>&,
                                                            const std::vector<double>&);
template IntegratedScalarReport<Rational> integrated_scalar_identity(const GoodCone&, const RationalVector&,
                                                                     const RationalVector&);
template IntegratedScalarReport<double> integrated_scalar_identity(const GoodCone&, const std::vector<double>&,
                                                                   const std::vector<double>&);

}  // namespace toric_cy
