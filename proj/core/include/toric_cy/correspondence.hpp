#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric_cy/lattice_cone.hpp"
#include "toric_cy/polytope.hpp"

namespace toric_cy {

/// One simplicial cell of C: contributes coefficient / prod_i <xi, u_i>.
struct VolumeTerm {
  Rational coefficient;
  std::vector<IntVector> rays;
};

/// vol(Delta_xi) as an exact rational function of xi.
class VolumeFunction {
 public:
  VolumeFunction(std::size_t dim, std::vector<VolumeTerm> terms) : dim_(dim), terms_(std::move(terms)) {}

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<VolumeTerm>& terms() const noexcept { return terms_; }

  template <Scalar S>
  S value(const Vector<S>& xi) const {
    S total = from_int<S>(0);
    for (const VolumeTerm& t : terms_) total += term_value(t, xi);
    return total;
  }

  template <Scalar S>
  Vector<S> gradient(const Vector<S>& xi) const {
    Vector<S> g(dim_, from_int<S>(0));
    for (const VolumeTerm& t : terms_) {
      S v = term_value(t, xi);
      for (const IntVector& u : t.rays) {
        S w = v / dot(u, xi);
        for (std::size_t i = 0; i < dim_; ++i) g[i] -= w * from_int<S>(u[i]);
      }
    }
    return g;
  }

  template <Scalar S>
  std::vector<Vector<S>> hessian(const Vector<S>& xi) const {
    std::vector<Vector<S>> h(dim_, Vector<S>(dim_, from_int<S>(0)));
    for (const VolumeTerm& t : terms_) {
      S v = term_value(t, xi);
      Vector<S> m(dim_, from_int<S>(0));  // sum u/s
      for (const IntVector& u : t.rays) {
        S inv = from_int<S>(1) / dot(u, xi);
        for (std::size_t i = 0; i < dim_; ++i) m[i] += from_int<S>(u[i]) * inv;
        S inv2 = v * inv * inv;
        for (std::size_t i = 0; i < dim_; ++i)
          for (std::size_t j = 0; j < dim_; ++j) h[i][j] += inv2 * from_int<S>(u[i] * u[j]);
      }
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) h[i][j] += v * m[i] * m[j];
    }
    return h;
  }

 private:
  template <Scalar S>
  S term_value(const VolumeTerm& t, const Vector<S>& xi) const {
    S prod = from_int<S>(1);
    for (const IntVector& u : t.rays) prod *= dot(u, xi);
    return from_rational<S>(t.coefficient) / prod;
  }

  std::size_t dim_;
  std::vector<VolumeTerm> terms_;
};

VolumeFunction build_volume_function(const GoodCone& cone);

template <Scalar S>
struct CorrespondenceResult {
  Vector<S> xi;
  Vector<S> beta;
  Vector<S> barycenter;       ///< bar(P_xi), ambient coordinates
  Vector<S> monotone_point;   ///< q_beta
  S volume{};                 ///< vol(Delta_xi)
  double barycenter_residual = 0;  ///< |bar - q_beta| / |q_beta|
  double gradient_norm = 0;        ///< scaled projected gradient at termination
  double roundtrip_residual = 0;   ///< max_a |beta_a(xi) - beta_a| / max_a beta_a
  int iterations = 0;
  bool verified = true;            ///< roundtrip_residual below 10 tol
  std::optional<Rational> certified_residual;  ///< exact roundtrip residual at the binary64 xi
};

/// beta_a = 2(n+1) <v_a, bar(P_xi)>. Exact for rational xi.
template <Scalar S>
CorrespondenceResult<S> reeb_to_angles(const GoodCone& cone, const Vector<S>& xi);

extern template CorrespondenceResult<Rational> reeb_to_angles(const GoodCone&, const RationalVector&);
extern template CorrespondenceResult<double> reeb_to_angles(const GoodCone&, const std::vector<double>&);

struct SolverOptions {
  double tol = 1e-12;
  int max_iter = 200;
  bool certify = false;
  std::optional<std::vector<double>> initial_xi;
};

/// q_beta = p_beta / (2(n+1)), where <v_a, p_beta> = beta_a.
RationalVector monotone_point(const GoodCone& cone, const RationalVector& beta);

/// Minimizes vol(Delta_xi) over {xi in C*_0 : <xi, q_beta> = 1/2} by damped
/// Newton. Throws NotInAnglesCone (relation as certificate), LineSearchFailure,
/// MaxIterations, SingularHessian.
CorrespondenceResult<double> angles_to_reeb(const GoodCone& cone, const RationalVector& beta,
                                            const SolverOptions& options = {});
CorrespondenceResult<double> angles_to_reeb(const GoodCone& cone, const std::vector<double>& beta,
                                            const SolverOptions& options = {});

/// Hessian of log vol(Delta_xi).
template <Scalar S>
std::vector<Vector<S>> weil_petersson_hessian(const VolumeFunction& vol, const Vector<S>& xi) {
  S v = vol.value(xi);
  Vector<S> g = vol.gradient(xi);
  std::vector<Vector<S>> h = vol.hessian(xi);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) h[i][j] = h[i][j] / v - g[i] * g[j] / (v * v);
  return h;
}

template <Scalar S>
std::vector<Vector<S>> weil_petersson_hessian(const GoodCone& cone, const Vector<S>& xi) {
  require_reeb(cone, xi);
  return weil_petersson_hessian(build_volume_function(cone), xi);
}

}  // namespace toric_cy
