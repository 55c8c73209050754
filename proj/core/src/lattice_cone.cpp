#include "toric_cy/lattice_cone.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace toric_cy {

namespace {

using BigVector = std::vector<Integer>;

Integer big_dot(const IntVector& h, const BigVector& x) {
  Integer acc = 0;
  for (std::size_t i = 0; i < h.size(); ++i) acc += Integer(static_cast<signed long>(h[i])) * x[i];
  return acc;
}

BigVector normalize(BigVector v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, x);
  if (g > 1)
    for (Integer& x : v) x /= g;
  return v;
}

BigVector integer_scaling(const RationalVector& v) {
  Integer den = 1;
  for (const Rational& q : v) den = lcm(den, q.get_den());
  BigVector out;
  out.reserve(v.size());
  for (const Rational& q : v) out.emplace_back(q.get_num() * (den / q.get_den()));
  return normalize(std::move(out));
}

/// Indices of a maximal linearly independent prefix-greedy subset.
std::vector<std::size_t> independent_rows(const std::vector<IntVector>& rows) {
  std::vector<std::size_t> chosen;
  std::vector<IntVector> acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.push_back(rows[i]);
    if (rank(acc) == acc.size()) {
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

std::vector<std::size_t> rays_on_facet(const std::vector<std::vector<bool>>& incidence, std::size_t a) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < incidence.size(); ++r)
    if (incidence[r][a]) out.push_back(r);
  return out;
}

std::size_t span_dim(const std::vector<IntVector>& rays, const std::vector<std::size_t>& idx) {
  std::vector<IntVector> sub;
  for (std::size_t r : idx) sub.push_back(rays[r]);
  return rank(sub);
}

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& halfspaces) {
  if (halfspaces.empty()) throw Error(Errc::NotStrictlyConvex, "no inequalities: the cone is all of space");
  const std::size_t n = halfspaces.front().size();
  if (n == 0) throw Error(Errc::InvalidInput, "zero-dimensional ambient space");
  for (const IntVector& h : halfspaces)
    if (h.size() != n) throw Error(Errc::DimensionMismatch, "inequality vectors differ in length");

  std::vector<std::size_t> basis = independent_rows(halfspaces);
  if (basis.size() < n) throw Error(Errc::NotStrictlyConvex, "the cone contains a line");

  // Initial simplicial cone {A_K x >= 0}: generators are the columns of A_K^{-1}.
  std::vector<IntVector> base_rows;
  for (std::size_t i : basis) base_rows.push_back(halfspaces[i]);
  Matrix<Rational> ak = Matrix<Rational>::from_int_rows(base_rows);
  std::vector<BigVector> rays;
  for (std::size_t k = 0; k < n; ++k) {
    RationalVector e(n, Rational(0));
    e[k] = 1;
    rays.push_back(integer_scaling(*solve_square(ak, e)));
  }

  std::vector<std::size_t> processed = basis;
  std::vector<bool> used(halfspaces.size(), false);
  for (std::size_t i : basis) used[i] = true;

  for (std::size_t hi = 0; hi < halfspaces.size(); ++hi) {
    if (used[hi]) continue;
    const IntVector& h = halfspaces[hi];
    std::vector<Integer> s;
    s.reserve(rays.size());
    for (const BigVector& r : rays) s.push_back(big_dot(h, r));

    std::vector<BigVector> next;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (s[i] >= 0) next.push_back(rays[i]);

    if (n >= 2) {
      for (std::size_t p = 0; p < rays.size(); ++p) {
        if (s[p] <= 0) continue;
        for (std::size_t q = 0; q < rays.size(); ++q) {
          if (s[q] >= 0) continue;
          std::vector<IntVector> common;
          for (std::size_t j : processed)
            if (big_dot(halfspaces[j], rays[p]) == 0 && big_dot(halfspaces[j], rays[q]) == 0)
              common.push_back(halfspaces[j]);
          if (rank(common) != n - 2) continue;
          BigVector w(n);
          for (std::size_t k = 0; k < n; ++k) w[k] = s[p] * rays[q][k] - s[q] * rays[p][k];
          next.push_back(normalize(std::move(w)));
        }
      }
    }
    rays = std::move(next);
    processed.push_back(hi);
    used[hi] = true;
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (const BigVector& r : rays) out.push_back(primitive_part(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty() || rank(out) < n) throw Error(Errc::NotFullDimensional, "the cone has empty interior");
  return out;
}

GoodCone check_good(std::vector<IntVector> normals, std::string name) {
  if (normals.empty()) throw Error(Errc::InvalidInput, "at least one facet normal is required");
  const std::size_t n = normals.front().size();
  if (n == 0) throw Error(Errc::InvalidInput, "normals must be nonempty vectors");
  for (std::size_t a = 0; a < normals.size(); ++a) {
    if (normals[a].size() != n)
      throw Error(Errc::DimensionMismatch, "normal " + std::to_string(a) + " has the wrong length", {a});
    if (!is_primitive(normals[a]))
      throw Error(Errc::NotPrimitive, "normal " + std::to_string(a) + " is not primitive", {a}, normals[a]);
  }
  for (std::size_t a = 0; a < normals.size(); ++a)
    for (std::size_t b = a + 1; b < normals.size(); ++b)
      if (normals[a] == normals[b])
        throw Error(Errc::RedundantNormal, "normals " + std::to_string(a) + " and " + std::to_string(b) +
                                               " coincide",
                    {a, b}, normals[a]);

  GoodCone cone;
  cone.normals_ = std::move(normals);
  cone.name_ = std::move(name);
  cone.rays_ = extreme_rays(cone.normals_);

  const std::size_t d = cone.normals_.size();
  cone.incidence_.assign(cone.rays_.size(), std::vector<bool>(d, false));
  for (std::size_t r = 0; r < cone.rays_.size(); ++r)
    for (std::size_t a = 0; a < d; ++a) cone.incidence_[r][a] = dot(cone.normals_[a], cone.rays_[r]) == 0;

  for (std::size_t a = 0; a < d; ++a)
    if (span_dim(cone.rays_, rays_on_facet(cone.incidence_, a)) != n - 1)
      throw Error(Errc::RedundantNormal, "normal " + std::to_string(a) + " does not cut out a facet", {a},
                  cone.normals_[a]);

  // Face lattice: close ray sets under intersection with facets.
  std::map<std::vector<std::size_t>, Face> found;
  std::vector<std::size_t> all_rays(cone.rays_.size());
  for (std::size_t r = 0; r < all_rays.size(); ++r) all_rays[r] = r;
  found[all_rays] = Face{all_rays, {}, n};
  std::vector<std::vector<std::size_t>> queue{all_rays};
  while (!queue.empty()) {
    std::vector<std::size_t> current = std::move(queue.back());
    queue.pop_back();
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<std::size_t> sub;
      for (std::size_t r : current)
        if (cone.incidence_[r][a]) sub.push_back(r);
      if (sub.size() == current.size() || found.count(sub)) continue;
      Face f;
      f.rays = sub;
      for (std::size_t b = 0; b < d; ++b) {
        bool contains = std::all_of(sub.begin(), sub.end(), [&](std::size_t r) { return cone.incidence_[r][b]; });
        if (contains) f.facets.push_back(b);
      }
      f.dim = span_dim(cone.rays_, sub);
      found.emplace(sub, f);
      if (!sub.empty()) queue.push_back(sub);
    }
  }
  for (auto& [key, face] : found) cone.faces_.push_back(face);
  std::stable_sort(cone.faces_.begin(), cone.faces_.end(),
                   [](const Face& x, const Face& y) { return x.dim > y.dim; });

  for (const Face& f : cone.faces_) {
    if (f.rays.empty() || f.facets.empty()) continue;
    std::vector<IntVector> sub;
    for (std::size_t a : f.facets) sub.push_back(cone.normals_[a]);
    if (!is_saturated(sub))
      throw Error(Errc::NotGood, "normals of a face do not generate a saturated sublattice", f.facets);
  }

  cone.relations_ = integer_kernel_basis(cone.normal_matrix().transpose());
  return cone;
}

std::vector<IntVector> dual_cone(const GoodCone& cone) { return extreme_rays(cone.rays()); }

Membership<Rational> angles_cone_membership(const GoodCone& cone, const RationalVector& beta) {
  require_angles(cone, beta);
  Membership<Rational> out;
  out.witness = solve_full_column_rank(cone.normal_matrix(), beta);
  if (out.witness) return out;
  for (const IntVector& eta : cone.relations()) {
    Rational pairing = dot(eta, beta);
    if (!is_zero(pairing)) {
      out.relation = eta;
      out.pairing = pairing;
      return out;
    }
  }
  throw Error(Errc::InvalidInput, "inconsistent system without a violated relation");
}

Membership<double> angles_cone_membership(const GoodCone& cone, const std::vector<double>& beta, double tol) {
  require_angles(cone, beta);
  Membership<double> out;
  double bnorm = 0;
  for (double b : beta) bnorm = std::max(bnorm, std::abs(b));
  for (const IntVector& eta : cone.relations()) {
    double pairing = dot(eta, beta);
    double scale = 0;
    for (long long e : eta) scale += std::abs(static_cast<double>(e));
    if (std::abs(pairing) > tol * bnorm * scale) {
      out.relation = eta;
      out.pairing = pairing;
      return out;
    }
  }
  std::vector<std::size_t> basis = independent_rows(cone.normals());
  std::vector<IntVector> rows;
  std::vector<double> rhs;
  for (std::size_t a : basis) {
    rows.push_back(cone.normals()[a]);
    rhs.push_back(beta[a]);
  }
  out.witness = solve_square(Matrix<double>::from_int_rows(rows), rhs);
  return out;
}

bool chern_class_criterion(const GoodCone& cone, const RationalVector& beta) {
  return angles_cone_membership(cone, beta).member();
}

LogPairCertificate cartier_klt(const GoodCone& cone, const RationalVector& beta,
                               const std::vector<IntVector>& interior_rays) {
  for (std::size_t i = 0; i < interior_rays.size(); ++i) {
    const IntVector& v = interior_rays[i];
    if (v.size() != cone.dim())
      throw Error(Errc::DimensionMismatch, "queried ray " + std::to_string(i) + " has the wrong length", {i});
    bool nonzero = std::any_of(v.begin(), v.end(), [](long long x) { return x != 0; });
    bool inside = std::all_of(cone.rays().begin(), cone.rays().end(),
                              [&](const IntVector& u) { return dot(u, v) >= 0; });
    if (!nonzero || !inside)
      throw Error(Errc::RayOutsideCone, "queried ray " + std::to_string(i) + " is not a nonzero element of C*",
                  {i}, v);
  }

  LogPairCertificate cert;
  Membership<Rational> m = angles_cone_membership(cone, beta);
  RationalVector ones(cone.facet_count(), Rational(1));
  cert.is_q_gorenstein = angles_cone_membership(cone, ones).member();
  cert.is_r_cartier = m.member();
  if (!m.member()) {
    cert.relation = m.relation;
    if (!interior_rays.empty())
      throw Error(Errc::NotRCartier, "angles violate a linear relation; discrepancies are undefined", {},
                  m.relation);
    return cert;
  }
  cert.interior_point = m.witness;
  cert.is_klt = true;
  for (const IntVector& v : interior_rays) {
    Rational a = dot(v, *m.witness) - 1;
    if (a <= -1) cert.is_klt = false;
    cert.discrepancies.emplace_back(v, a);
  }
  return cert;
}

}  // namespace toric_cy
