#include "toric_cy/potential.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>

namespace toric_cy {

namespace {

SymplecticPotential::Term make_term(const Rational& c, const RationalVector& w) {
  SymplecticPotential::Term t;
  t.coefficient = c;
  t.linear = w;
  t.coefficient_d = c.get_d();
  t.linear_d = to_double(w);
  return t;
}

void check_interior(const SymplecticPotential& pot, const std::vector<double>& x) {
  if (x.size() != pot.dim()) throw Error(Errc::DimensionMismatch, "point has the wrong dimension");
  for (std::size_t a = 0; a < pot.normals().size(); ++a)
    if (!(dot(pot.normals()[a], x) > 0))
      throw Error(Errc::OutsideCone, "point is not in the interior of the cone", {a});
}

void check_interior(const SymplecticPotential& pot, const RationalVector& x) {
  if (x.size() != pot.dim()) throw Error(Errc::DimensionMismatch, "point has the wrong dimension");
  for (std::size_t a = 0; a < pot.normals().size(); ++a)
    if (sgn(dot(pot.normals()[a], x)) <= 0)
      throw Error(Errc::OutsideCone, "point is not in the interior of the cone", {a});
}

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
  Eigen::MatrixXd e(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
  return e;
}

}  // namespace

SymplecticPotential SymplecticPotential::guillemin(const GoodCone& cone, const RationalVector& beta) {
  require_angles(cone, beta);
  SymplecticPotential pot;
  pot.kind_ = PotentialKind::GuilleminBeta;
  pot.dim_ = cone.dim();
  pot.beta_ = beta;
  pot.normals_ = cone.normals();
  pot.reeb_.assign(cone.dim(), Rational(0));
  for (std::size_t a = 0; a < cone.facet_count(); ++a) {
    Rational c = 1 / beta[a];
    RationalVector w = to_rational(cone.normals()[a]);
    for (std::size_t i = 0; i < w.size(); ++i) pot.reeb_[i] += c * w[i];
    pot.terms_.push_back(make_term(c, w));
  }
  return pot;
}

SymplecticPotential SymplecticPotential::canonical(const GoodCone& cone, const RationalVector& beta,
                                                   const RationalVector& xi) {
  require_reeb(cone, xi);
  SymplecticPotential pot = guillemin(cone, beta);
  RationalVector infinity = pot.reeb_;
  pot.kind_ = PotentialKind::CanonicalXi;
  pot.reeb_ = xi;
  pot.terms_.push_back(make_term(Rational(1), xi));
  pot.terms_.push_back(make_term(Rational(-1), infinity));
  return pot;
}

PotentialValue eval_potential(const SymplecticPotential& pot, const std::vector<double>& x) {
  check_interior(pot, x);
  const std::size_t n1 = pot.dim();
  PotentialValue out;
  out.gradient.assign(n1, 0.0);
  out.hessian.assign(n1, std::vector<double>(n1, 0.0));
  for (const SymplecticPotential::Term& t : pot.terms()) {
    double f = dot(t.linear_d, x);
    double half_c = 0.5 * t.coefficient_d;
    double logf = std::log(f);
    out.value += half_c * f * logf;
    for (std::size_t i = 0; i < n1; ++i) {
      out.gradient[i] += half_c * t.linear_d[i] * (1 + logf);
      for (std::size_t j = 0; j < n1; ++j) out.hessian[i][j] += half_c * t.linear_d[i] * t.linear_d[j] / f;
    }
  }
  return out;
}

std::vector<RationalVector> potential_hessian(const SymplecticPotential& pot, const RationalVector& x) {
  check_interior(pot, x);
  const std::size_t n1 = pot.dim();
  std::vector<RationalVector> h(n1, RationalVector(n1, Rational(0)));
  for (const SymplecticPotential::Term& t : pot.terms()) {
    Rational w = t.coefficient / (2 * dot(t.linear, x));
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) h[i][j] += w * t.linear[i] * t.linear[j];
  }
  return h;
}

std::vector<std::vector<double>> potential_hessian(const SymplecticPotential& pot, const std::vector<double>& x) {
  check_interior(pot, x);
  const std::size_t n1 = pot.dim();
  std::vector<std::vector<double>> h(n1, std::vector<double>(n1, 0.0));
  for (const SymplecticPotential::Term& t : pot.terms()) {
    double w = 0.5 * t.coefficient_d / dot(t.linear_d, x);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) h[i][j] += w * t.linear_d[i] * t.linear_d[j];
  }
  return h;
}

MetricSample metric_at(const SymplecticPotential& pot, const std::vector<double>& x) {
  MetricSample s;
  s.point = x;
  s.hessian = potential_hessian(pot, x);
  const std::size_t n1 = pot.dim();
  Eigen::MatrixXd h = to_eigen(s.hessian);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  double lo = eig.eigenvalues().minCoeff();
  double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0) || hi / lo > 1e12)
    throw Error(Errc::SingularHessian, "Hessian of the potential is singular or too ill-conditioned to invert");
  s.condition_number = hi / lo;
  Eigen::MatrixXd inv = h.llt().solve(Eigen::MatrixXd::Identity(h.rows(), h.cols()));
  s.inverse.assign(n1, std::vector<double>(n1));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) s.inverse[i][j] = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

  std::vector<double> reeb = to_double(pot.reeb());
  for (std::size_t j = 0; j < n1; ++j) {
    double acc = 0;
    for (std::size_t i = 0; i < n1; ++i) acc += 2 * s.hessian[i][j] * x[i];
    s.reeb_residual = std::max(s.reeb_residual, std::abs(acc - reeb[j]));
  }
  return s;
}

namespace {

double abreu_at_step(const SymplecticPotential& pot, const std::vector<double>& x, double h) {
  const std::size_t n1 = pot.dim();
  std::map<std::vector<int>, Eigen::MatrixXd> cache;
  auto inverse_at = [&](const std::vector<int>& offset) -> const Eigen::MatrixXd& {
    auto it = cache.find(offset);
    if (it != cache.end()) return it->second;
    std::vector<double> y = x;
    for (std::size_t i = 0; i < n1; ++i) y[i] += offset[i] * h;
    Eigen::MatrixXd hm = to_eigen(potential_hessian(pot, y));
    Eigen::MatrixXd inv = hm.llt().solve(Eigen::MatrixXd::Identity(hm.rows(), hm.cols()));
    return cache.emplace(offset, std::move(inv)).first->second;
  };
  auto entry = [&](std::vector<int> offset, std::size_t i, std::size_t j) {
    return inverse_at(offset)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };

  double total = 0;
  std::vector<int> zero(n1, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    std::vector<int> plus = zero, minus = zero;
    plus[i] = 1;
    minus[i] = -1;
    total += (entry(plus, i, i) - 2 * entry(zero, i, i) + entry(minus, i, i)) / (h * h);
    for (std::size_t j = i + 1; j < n1; ++j) {
      std::vector<int> pp = zero, pm = zero, mp = zero, mm = zero;
      pp[i] = 1, pp[j] = 1;
      pm[i] = 1, pm[j] = -1;
      mp[i] = -1, mp[j] = 1;
      mm[i] = -1, mm[j] = -1;
      double mixed = (entry(pp, i, j) - entry(pm, i, j) - entry(mp, i, j) + entry(mm, i, j)) / (4 * h * h);
      total += 2 * mixed;  // G^ij is symmetric
    }
  }
  return -total;
}

}  // namespace

AbreuEstimate abreu_scalar_curvature(const SymplecticPotential& pot, const std::vector<double>& x, double h) {
  if (!(h > 0)) throw Error(Errc::InvalidInput, "finite-difference step must be positive");
  check_interior(pot, x);
  for (std::size_t a = 0; a < pot.normals().size(); ++a) {
    const IntVector& v = pot.normals()[a];
    double dist = dot(v, x) / std::sqrt(static_cast<double>(dot(v, v)));
    if (dist <= 10 * h)
      throw Error(Errc::StepTooLarge, "finite-difference stencil comes within 10 steps of a facet", {a});
  }
  AbreuEstimate e;
  e.coarse = abreu_at_step(pot, x, h);
  e.fine = abreu_at_step(pot, x, h / 2);
  e.value = (4 * e.fine - e.coarse) / 3;
  e.error_indicator = std::abs(e.coarse - e.fine);
  return e;
}

}  // namespace toric_cy
