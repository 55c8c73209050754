#include "toric_cy/polytope.hpp"

#include <algorithm>
#include <map>

namespace toric_cy {

namespace detail {

long long factorial(std::size_t k) {
  long long f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long long>(i);
  return f;
}

}  // namespace detail

namespace {

class Puller {
 public:
  Puller(const GoodCone& cone, const std::vector<std::size_t>& order) : cone_(cone), position_(cone.rays().size()) {
    if (order.empty()) {
      for (std::size_t r = 0; r < position_.size(); ++r) position_[r] = r;
    } else {
      if (order.size() != position_.size())
        throw Error(Errc::InvalidInput, "vertex order must be a permutation of the rays");
      std::vector<bool> seen(order.size(), false);
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= order.size() || seen[order[i]])
          throw Error(Errc::InvalidInput, "vertex order must be a permutation of the rays");
        seen[order[i]] = true;
        position_[order[i]] = i;
      }
    }
  }

  const std::vector<Simplex>& run(const Face& face) {
    if (auto it = memo_.find(face.rays); it != memo_.end()) return it->second;
    std::vector<Simplex> out;
    if (face.rays.size() == face.dim) {
      Simplex s = face.rays;
      std::sort(s.begin(), s.end(), [&](std::size_t x, std::size_t y) { return position_[x] < position_[y]; });
      out.push_back(std::move(s));
    } else {
      std::size_t apex = *std::min_element(face.rays.begin(), face.rays.end(),
                                           [&](std::size_t x, std::size_t y) { return position_[x] < position_[y]; });
      for (const Face& sub : cone_.faces()) {
        if (sub.dim + 1 != face.dim) continue;
        if (!std::includes(face.rays.begin(), face.rays.end(), sub.rays.begin(), sub.rays.end())) continue;
        if (std::binary_search(sub.rays.begin(), sub.rays.end(), apex)) continue;
        for (const Simplex& s : run(sub)) {
          Simplex cell{apex};
          cell.insert(cell.end(), s.begin(), s.end());
          out.push_back(std::move(cell));
        }
      }
    }
    return memo_.emplace(face.rays, std::move(out)).first->second;
  }

 private:
  const GoodCone& cone_;
  std::vector<std::size_t> position_;
  std::map<std::vector<std::size_t>, std::vector<Simplex>> memo_;
};

}  // namespace

ConeTriangulation pulling_triangulation(const GoodCone& cone, const std::vector<std::size_t>& order) {
  Puller puller(cone, order);
  ConeTriangulation tri;
  tri.cells = puller.run(cone.faces().front());
  tri.facets.resize(cone.facet_count());
  for (const Face& f : cone.faces())
    if (f.facets.size() >= 1 && f.dim + 1 == cone.dim())
      for (std::size_t a : f.facets) tri.facets[a] = puller.run(f);
  return tri;
}

template <Scalar S>
S truncated_cone_volume(const GoodCone& cone, const std::vector<Simplex>& cells, const Vector<S>& xi) {
  const std::size_t dim = cone.dim();
  S total = from_int<S>(0);
  for (const Simplex& cell : cells) {
    Matrix<S> m(dim, dim);
    S prod = from_int<S>(1);
    for (std::size_t j = 0; j < dim; ++j) {
      const IntVector& u = cone.rays()[cell[j]];
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = from_int<S>(u[i]);
      prod *= dot(u, xi);
    }
    S det = abs_value(determinant(m));
    total += det / prod;
  }
  S denom = from_int<S>(detail::factorial(dim)) * from_int<S>(1LL << dim);
  return total / denom;
}

template <Scalar S>
TransversalPolytope<S>::TransversalPolytope(const GoodCone& cone, Vector<S> xi, const SliceOptions& options)
    : cone_(cone), xi_(std::move(xi)) {
  require_reeb(cone_, xi_);
  const std::size_t n1 = cone_.dim();
  if (n1 < 2) throw Error(Errc::DegeneratePolytope, "the transversal slice of a half-line is a point");

  if (options.chart_drop) {
    drop_ = *options.chart_drop;
    if (drop_ >= n1) throw Error(Errc::InvalidInput, "chart coordinate out of range");
  } else {
    drop_ = 0;
    for (std::size_t k = 1; k < n1; ++k)
      if (abs_value(xi_[k]) > abs_value(xi_[drop_])) drop_ = k;
  }
  if (is_zero(xi_[drop_]))
    throw Error(Errc::InvalidInput, "chart projection along a coordinate with zero Reeb component");

  const S half = from_rational<S>(Rational(1, 2));
  for (const IntVector& u : cone_.rays()) {
    S scale = half / dot(u, xi_);
    Vector<S> v(n1);
    for (std::size_t i = 0; i < n1; ++i) v[i] = from_int<S>(u[i]) * scale;
    vertices_.push_back(std::move(v));
  }

  tri_ = pulling_triangulation(cone_, options.vertex_order);

  facet_map_.resize(cone_.facet_count());
  for (std::size_t r = 0; r < cone_.rays().size(); ++r)
    for (std::size_t a = 0; a < cone_.facet_count(); ++a)
      if (cone_.incidence()[r][a]) facet_map_[a].push_back(r);

  S xi_sq = dot(xi_, xi_);
  for (const IntVector& va : cone_.normals()) {
    S along = dot(va, xi_) / xi_sq;
    Vector<S> w(n1);
    for (std::size_t i = 0; i < n1; ++i) w[i] = from_int<S>(va[i]) - along * xi_[i];
    S len = dot(va, w);
    for (S& x : w) x /= len;
    facet_tangents_.push_back(std::move(w));
  }
}

template <Scalar S>
Vector<S> TransversalPolytope<S>::to_chart(const Vector<S>& x) const {
  Vector<S> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < ambient_dim(); ++i)
    if (i != drop_) out.push_back(x[i] - chart_origin()[i]);
  return out;
}

template <Scalar S>
AffineFunction<S> TransversalPolytope<S>::chart_coordinate(std::size_t i) const {
  std::size_t j = i < drop_ ? i : i + 1;
  AffineFunction<S> f;
  f.linear.assign(ambient_dim(), from_int<S>(0));
  f.linear[j] = from_int<S>(1);
  f.constant = -chart_origin()[j];
  return f;
}

template <Scalar S>
S TransversalPolytope<S>::chart_det(const std::vector<Vector<S>>& columns) const {
  const std::size_t n = dim();
  Matrix<S> m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t row = 0;
    for (std::size_t i = 0; i < ambient_dim(); ++i)
      if (i != drop_) m(row++, j) = columns[j][i];
  }
  return determinant(m);
}

template <Scalar S>
Vector<S> TransversalPolytope<S>::simplex_volumes() const {
  const std::size_t n = dim();
  const S nfact = from_int<S>(detail::factorial(n));
  Vector<S> out;
  out.reserve(tri_.cells.size());
  for (const Simplex& s : tri_.cells) {
    std::vector<Vector<S>> edges;
    for (std::size_t k = 1; k < s.size(); ++k) {
      Vector<S> e(ambient_dim());
      for (std::size_t i = 0; i < ambient_dim(); ++i) e[i] = vertices_[s[k]][i] - vertices_[s[0]][i];
      edges.push_back(std::move(e));
    }
    S vol = abs_value(chart_det(edges)) / nfact;
    if (sign_of(vol) <= 0) throw Error(Errc::DegeneratePolytope, "triangulation contains a flat simplex");
    out.push_back(vol);
  }
  return out;
}

template <Scalar S>
PolytopeMoments<S> TransversalPolytope<S>::moments() const {
  const std::size_t n1 = ambient_dim();
  const std::size_t n = dim();
  Vector<S> vols = simplex_volumes();
  PolytopeMoments<S> m;
  m.volume = from_int<S>(0);
  m.barycenter.assign(n1, from_int<S>(0));
  m.second_moments.assign(n1, Vector<S>(n1, from_int<S>(0)));
  const S quad_den = from_int<S>(static_cast<long long>((n + 1) * (n + 2)));
  const S np1 = from_int<S>(static_cast<long long>(n + 1));
  for (std::size_t c = 0; c < tri_.cells.size(); ++c) {
    const Simplex& s = tri_.cells[c];
    const S& vol = vols[c];
    m.volume += vol;
    Vector<S> sum(n1, from_int<S>(0));
    for (std::size_t k : s)
      for (std::size_t i = 0; i < n1; ++i) sum[i] += vertices_[k][i];
    for (std::size_t i = 0; i < n1; ++i) m.barycenter[i] += vol * sum[i] / np1;
    S w = vol / quad_den;
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n1; ++j) {
        S acc = sum[i] * sum[j];
        for (std::size_t k : s) acc += vertices_[k][i] * vertices_[k][j];
        m.second_moments[i][j] += w * acc;
      }
    }
  }
  if (sign_of(m.volume) <= 0) throw Error(Errc::DegeneratePolytope, "transversal polytope has zero volume");
  for (S& x : m.barycenter) x /= m.volume;
  m.euclid_volume_delta = truncated_cone_volume(cone_, tri_.cells, xi_);
  return m;
}

template <Scalar S>
S TransversalPolytope<S>::unit_simplex_measure(std::size_t a, const Simplex& s) const {
  std::vector<Vector<S>> cols{facet_tangents_[a]};
  for (std::size_t k = 1; k < s.size(); ++k) {
    Vector<S> e(ambient_dim());
    for (std::size_t i = 0; i < ambient_dim(); ++i) e[i] = vertices_[s[k]][i] - vertices_[s[0]][i];
    cols.push_back(std::move(e));
  }
  return abs_value(chart_det(cols)) / from_int<S>(detail::factorial(dim() - 1));
}

template <Scalar S>
Vector<S> TransversalPolytope<S>::unit_facet_measures() const {
  Vector<S> out(cone_.facet_count(), from_int<S>(0));
  for (std::size_t a = 0; a < out.size(); ++a)
    for (const Simplex& s : tri_.facets[a]) out[a] += unit_simplex_measure(a, s);
  return out;
}

template <Scalar S>
BoundaryIntegral<S> TransversalPolytope<S>::boundary_integral(const Vector<S>& beta,
                                                             const AffineFunction<S>& f) const {
  require_angles(cone_, beta);
  if (f.linear.size() != ambient_dim())
    throw Error(Errc::NotAffine, "integrand must be an affine function of the ambient coordinates");
  BoundaryIntegral<S> out;
  out.total = from_int<S>(0);
  out.per_facet.assign(cone_.facet_count(), from_int<S>(0));
  const S nverts = from_int<S>(static_cast<long long>(dim()));
  for (std::size_t a = 0; a < cone_.facet_count(); ++a) {
    for (const Simplex& s : tri_.facets[a]) {
      S mean = from_int<S>(0);
      for (std::size_t k : s) mean += f(vertices_[k]);
      mean /= nverts;
      out.per_facet[a] += unit_simplex_measure(a, s) * mean;
    }
    out.per_facet[a] *= beta[a];
    out.total += out.per_facet[a];
  }
  return out;
}

template <Scalar S>
FacetVolumes<S> TransversalPolytope<S>::facet_volumes() const {
  const std::size_t n1 = ambient_dim();
  const std::size_t n = dim();
  FacetVolumes<S> out;
  out.delta_volume = truncated_cone_volume(cone_, tri_.cells, xi_);
  const S nfact = from_int<S>(detail::factorial(n));
  for (std::size_t a = 0; a < cone_.facet_count(); ++a) {
    const IntVector& va = cone_.normals()[a];
    long long norm_sq = dot(va, va);
    S acc = from_int<S>(0);
    for (const Simplex& s : tri_.facets[a]) {
      Matrix<S> m(n1, n1);
      for (std::size_t i = 0; i < n1; ++i) m(i, 0) = from_int<S>(va[i]);
      for (std::size_t k = 0; k < s.size(); ++k)
        for (std::size_t i = 0; i < n1; ++i) m(i, k + 1) = vertices_[s[k]][i];
      acc += abs_value(determinant(m));
    }
    out.facet_volume_over_norm.push_back(acc / (from_int<S>(norm_sq) * nfact));
    out.normal_norm_sq.push_back(norm_sq);
  }
  // vol(S) = 2(n+1)(2 pi)^{n+1} vol(Delta), vol(Sigma_a) = 2n (2 pi)^n vol(F_a)/|v_a|
  const long long two_n1 = 1LL << n1;
  out.link_volume.coefficient = from_int<S>(2 * static_cast<long long>(n1) * two_n1) * out.delta_volume;
  out.link_volume.pi_power = static_cast<int>(n1);
  for (const S& r : out.facet_volume_over_norm) {
    PiScaled<S> p;
    p.coefficient = from_int<S>(2 * static_cast<long long>(n) * (1LL << n)) * r;
    p.pi_power = static_cast<int>(n);
    out.divisor_volumes.push_back(p);
  }
  return out;
}

template class TransversalPolytope<Rational>;
template class TransversalPolytope<double>;
template Rational truncated_cone_volume<Rational>(const GoodCone&, const std::vector<Simplex>&,
                                                  const RationalVector&);
template double truncated_cone_volume<double>(const GoodCone&, const std::vector<Simplex>&,
                                              const std::vector<double>&);

}  // namespace toric_cy
