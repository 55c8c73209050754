#include "toric_cy/correspondence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace toric_cy {

VolumeFunction build_volume_function(const GoodCone& cone) {
  const std::size_t dim = cone.dim();
  ConeTriangulation tri = pulling_triangulation(cone);
  const Rational denom = from_int<Rational>(detail::factorial(dim) * (1LL << dim));
  std::vector<VolumeTerm> terms;
  for (const Simplex& cell : tri.cells) {
    Matrix<Rational> m(dim, dim);
    VolumeTerm t;
    for (std::size_t j = 0; j < dim; ++j) {
      const IntVector& u = cone.rays()[cell[j]];
      t.rays.push_back(u);
      for (std::size_t i = 0; i < dim; ++i) m(i, j) = from_int<Rational>(u[i]);
    }
    t.coefficient = abs_value(determinant(m)) / denom;
    terms.push_back(std::move(t));
  }
  return VolumeFunction(dim, std::move(terms));
}

template <Scalar S>
CorrespondenceResult<S> reeb_to_angles(const GoodCone& cone, const Vector<S>& xi) {
  TransversalPolytope<S> poly(cone, xi);
  PolytopeMoments<S> m = poly.moments();
  const S scale = from_int<S>(2 * static_cast<long long>(cone.dim()));
  CorrespondenceResult<S> r;
  r.xi = xi;
  r.barycenter = m.barycenter;
  r.monotone_point = m.barycenter;
  r.volume = m.euclid_volume_delta;
  for (const IntVector& v : cone.normals()) r.beta.push_back(scale * dot(v, m.barycenter));
  return r;
}

template CorrespondenceResult<Rational> reeb_to_angles(const GoodCone&, const RationalVector&);
template CorrespondenceResult<double> reeb_to_angles(const GoodCone&, const std::vector<double>&);

RationalVector monotone_point(const GoodCone& cone, const RationalVector& beta) {
  Membership<Rational> m = angles_cone_membership(cone, beta);
  if (!m.member())
    throw Error(Errc::NotInAnglesCone, "angles are not in the angles' cone: relation pairs to " + to_string(m.pairing),
                {}, m.relation);
  RationalVector q = *m.witness;
  const Rational scale(1, 2 * static_cast<long>(cone.dim()));
  for (Rational& x : q) x *= scale;
  return q;
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool in_reeb_cone(const GoodCone& cone, const std::vector<double>& xi) {
  return std::all_of(cone.rays().begin(), cone.rays().end(), [&](const IntVector& u) { return dot(u, xi) > 0; });
}

std::string format_point(const std::vector<double>& x) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

CorrespondenceResult<double> solve(const GoodCone& cone, const std::vector<double>& beta, const std::vector<double>& q,
                                   const std::optional<RationalVector>& exact_beta, const SolverOptions& options) {
  if (!(options.tol > 0)) throw Error(Errc::InvalidInput, "tolerance must be positive");
  if (options.max_iter <= 0) throw Error(Errc::InvalidInput, "iteration cap must be positive");
  const std::size_t n1 = cone.dim();
  const std::size_t n = n1 - 1;
  VolumeFunction vol = build_volume_function(cone);

  // Orthonormal basis of the tangent space q^perp of the slice.
  Eigen::VectorXd qe = Eigen::Map<const Eigen::VectorXd>(q.data(), static_cast<Eigen::Index>(n1));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(qe)};
  Eigen::MatrixXd full_q = qr.householderQ();
  Eigen::MatrixXd basis = full_q.rightCols(static_cast<Eigen::Index>(n));

  std::vector<double> xi;
  if (options.initial_xi) {
    xi = *options.initial_xi;
    require_reeb(cone, xi);
  } else {
    xi.assign(n1, 0.0);
    for (std::size_t a = 0; a < cone.facet_count(); ++a)
      for (std::size_t i = 0; i < n1; ++i) xi[i] += static_cast<double>(cone.normals()[a][i]) / beta[a];
  }
  {
    double t = 0.5 / dot(xi, q);
    for (double& x : xi) x *= t;
  }

  auto scaled_gradient = [&](const std::vector<double>& x, double v, Eigen::VectorXd& g) {
    std::vector<double> grad = vol.gradient(x);
    g = basis.transpose() * Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(n1));
    double xnorm = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n1)).norm();
    return g.norm() * xnorm / v;
  };

  CorrespondenceResult<double> r;
  double v = vol.value(xi);
  Eigen::VectorXd g;
  double gnorm = scaled_gradient(xi, v, g);
  int iter = 0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (gnorm >= options.tol) {
    if (iter >= options.max_iter)
      throw Error(Errc::MaxIterations, "Newton iteration cap reached at xi = " + format_point(xi));
    ++iter;
    std::vector<std::vector<double>> h = vol.hessian(xi);
    Eigen::MatrixXd he(n1, n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) he(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h[i][j];
    Eigen::MatrixXd hr = basis.transpose() * he * basis;
    Eigen::LLT<Eigen::MatrixXd> llt(hr);
    if (llt.info() != Eigen::Success)
      throw Error(Errc::SingularHessian, "volume Hessian is not positive definite on the slice at xi = " +
                                             format_point(xi));
    Eigen::VectorXd step = -llt.solve(g);
    Eigen::VectorXd dx = basis * step;

    // Backtracking: stay in the Reeb cone and decrease the volume. Once the
    // decrease is below rounding, a smaller projected gradient is accepted.
    double t = 1.0;
    bool accepted = false;
    std::vector<double> trial(n1);
    double v_trial = 0;
    Eigen::VectorXd g_trial;
    double gnorm_trial = 0;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (std::size_t i = 0; i < n1; ++i) trial[i] = xi[i] + t * dx(static_cast<Eigen::Index>(i));
      if (!in_reeb_cone(cone, trial)) continue;
      v_trial = vol.value(trial);
      gnorm_trial = scaled_gradient(trial, v_trial, g_trial);
      if (v_trial < v || (v_trial <= v * (1 + 8 * eps) && gnorm_trial < gnorm)) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw Error(Errc::LineSearchFailure, "line search failed; last iterate xi = " + format_point(xi));
    xi = trial;
    v = v_trial;
    g = g_trial;
    gnorm = gnorm_trial;
  }

  CorrespondenceResult<double> check = reeb_to_angles(cone, xi);
  r.xi = xi;
  r.beta = beta;
  r.barycenter = check.barycenter;
  r.monotone_point = q;
  r.volume = v;
  r.iterations = iter;
  r.gradient_norm = gnorm;
  std::vector<double> diff(n1);
  for (std::size_t i = 0; i < n1; ++i) diff[i] = check.barycenter[i] - q[i];
  r.barycenter_residual = max_abs(diff) / max_abs(q);
  std::vector<double> bdiff(beta.size());
  for (std::size_t a = 0; a < beta.size(); ++a) bdiff[a] = check.beta[a] - beta[a];
  r.roundtrip_residual = max_abs(bdiff) / max_abs(beta);
  r.verified = r.roundtrip_residual < 10 * options.tol;

  if (options.certify) {
    RationalVector xq;
    for (double x : xi) xq.push_back(exact_rational(x));
    CorrespondenceResult<Rational> exact = reeb_to_angles(cone, xq);
    Rational worst = 0, top = 0;
    for (std::size_t a = 0; a < beta.size(); ++a) {
      Rational target = exact_beta ? (*exact_beta)[a] : exact_rational(beta[a]);
      Rational d = abs_value(Rational(exact.beta[a] - target));
      if (d > worst) worst = d;
      if (target > top) top = target;
    }
    r.certified_residual = worst / top;
  }
  return r;
}

}  // namespace

CorrespondenceResult<double> angles_to_reeb(const GoodCone& cone, const RationalVector& beta,
                                            const SolverOptions& options) {
  RationalVector q = monotone_point(cone, beta);
  return solve(cone, to_double(beta), to_double(q), beta, options);
}

CorrespondenceResult<double> angles_to_reeb(const GoodCone& cone, const std::vector<double>& beta,
                                            const SolverOptions& options) {
  Membership<double> m = angles_cone_membership(cone, beta);
  if (!m.member())
    throw Error(Errc::NotInAnglesCone, "angles are not in the angles' cone", {}, m.relation);
  std::vector<double> q = *m.witness;
  for (double& x : q) x /= 2.0 * static_cast<double>(cone.dim());
  return solve(cone, beta, q, std::nullopt, options);
}

}  // namespace toric_cy
