#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "oracles/brute_force.hpp"
#include "oracles/finite_diff.hpp"
#include "support/test_support.hpp"
#include "toric_cy/correspondence.hpp"
#include "toric_cy/polytope.hpp"

using namespace toric_cy;
using namespace toric_cy::testing;

namespace {

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  return max_abs_diff(a, b) / std::max(max_abs(a), max_abs(b));
}

double rel_matrix_diff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      num = std::max(num, std::abs(a[i][j] - b[i][j]));
      den = std::max(den, std::abs(a[i][j]));
    }
  return num / den;
}

}  // namespace

TEST(VolumeFunction, OctantIsASingleTerm) {
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    VolumeFunction vf = build_volume_function(cone_named("octant" + std::to_string(dim)));
    ASSERT_EQ(vf.terms().size(), 1u);
    Rational expected = 1;
    for (std::size_t k = 1; k <= dim; ++k) expected /= Rational(static_cast<long>(2 * k));
    EXPECT_EQ(vf.terms().front().coefficient, expected);
  }
}

TEST(VolumeFunction, MatchesTruncatedConeVolumesExactly) {
  std::mt19937_64 g = rng(20);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    VolumeFunction vf = build_volume_function(c);
    std::vector<std::size_t> reversed;
    for (std::size_t r = c.rays().size(); r-- > 0;) reversed.push_back(r);
    ConeTriangulation other = pulling_triangulation(c, reversed);
    for (int i = 0; i < 20; ++i) {
      RationalVector xi = random_reeb(g, c);
      Rational v = vf.value(xi);
      EXPECT_EQ(v, TransversalPolytope<Rational>(c, xi).moments().euclid_volume_delta) << name;
      EXPECT_EQ(v, truncated_cone_volume(c, other.cells, xi)) << name;
    }
  }
}

TEST(VolumeFunction, ConifoldClosedForm) {
  // The Reeb vector pairs with the extreme rays of the moment cone, which are
  // the inward normals of the cone generated by the conifold rays.
  std::vector<IntVector> generators{{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}};
  std::vector<IntVector> moment_rays = oracle::extreme_rays(generators);
  std::set<IntVector> forms(moment_rays.begin(), moment_rays.end());
  // xi1, xi2, xi3 - xi2, xi3 - xi1 in the given coordinates: the substitution
  // is the identity.
  EXPECT_EQ(forms, (std::set<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, -1, 1}, {-1, 0, 1}}));

  GoodCone c = check_good(generators);
  VolumeFunction vf = build_volume_function(c);
  std::mt19937_64 g = rng(21);
  std::optional<Rational> constant;
  for (int i = 0; i < 10; ++i) {
    RationalVector xi = random_reeb(g, c);
    Rational closed = xi[2] / (xi[0] * xi[1] * (xi[2] - xi[1]) * (xi[2] - xi[0]));
    Rational ratio = vf.value(xi) / closed;
    if (!constant) constant = ratio;
    EXPECT_EQ(ratio, *constant);
  }
  EXPECT_GT(*constant, 0);
}

TEST(VolumeFunction, GradientAndHessianMatchFiniteDifferences) {
  std::mt19937_64 g = rng(22);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    VolumeFunction vf = build_volume_function(c);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> xi = to_double(random_reeb(g, c));
      double h = 1e-6 * std::sqrt(std::inner_product(xi.begin(), xi.end(), xi.begin(), 0.0));
      auto f = [&](const std::vector<double>& x) { return vf.value(x); };
      auto grad = [&](const std::vector<double>& x) { return vf.gradient(x); };
      EXPECT_LT(rel_diff(vf.gradient(xi), oracle::central_gradient(f, xi, h)), 1e-6) << name;
      EXPECT_LT(rel_matrix_diff(vf.hessian(xi), oracle::central_jacobian(grad, xi, h)), 1e-6) << name;
    }
  }
}

TEST(VolumeFunction, ExactHomogeneity) {
  std::mt19937_64 g = rng(23);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    VolumeFunction vf = build_volume_function(c);
    RationalVector xi = random_reeb(g, c);
    Rational t = random_positive(g), tp = 1;
    for (std::size_t i = 0; i < c.dim(); ++i) tp *= t;
    EXPECT_EQ(vf.value(scaled(xi, t)) * tp, vf.value(xi));
    RationalVector gr = vf.gradient(xi);
    Rational euler = dot(gr, xi) / vf.value(xi);
    EXPECT_EQ(euler, -static_cast<long>(c.dim()));
  }
}

TEST(WeilPetersson, FiniteDifferencesHomogeneityAndPositivity) {
  std::mt19937_64 g = rng(24);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    VolumeFunction vf = build_volume_function(c);
    for (int i = 0; i < 10; ++i) {
      RationalVector xq = random_reeb(g, c);
      std::vector<double> xi = to_double(xq);
      auto grad_log = [&](const std::vector<double>& x) {
        std::vector<double> gr = vf.gradient(x);
        double v = vf.value(x);
        for (double& e : gr) e /= v;
        return gr;
      };
      double h = 1e-5 * max_abs(xi);
      std::vector<std::vector<double>> hess = weil_petersson_hessian(c, xi);
      EXPECT_LT(rel_matrix_diff(hess, oracle::central_jacobian(grad_log, xi, h)), 1e-6) << name;

      // Exact identities: H(t xi) = H(xi) / t^2, H xi = -grad log vol, grad log vol . xi = -(n+1).
      Rational t = random_positive(g);
      std::vector<RationalVector> hq = weil_petersson_hessian(c, xq), hqt = weil_petersson_hessian(c, scaled(xq, t));
      RationalVector gl = vf.gradient(xq);
      Rational v = vf.value(xq);
      for (std::size_t a = 0; a < c.dim(); ++a) {
        for (std::size_t b = 0; b < c.dim(); ++b) EXPECT_EQ(hqt[a][b] * t * t, hq[a][b]);
        EXPECT_EQ(dot(hq[a], xq), -gl[a] / v);
      }
      EXPECT_EQ(dot(gl, xq) / v, -static_cast<long>(c.dim()));

      Eigen::MatrixXd he(c.dim(), c.dim());
      for (std::size_t a = 0; a < c.dim(); ++a)
        for (std::size_t b = 0; b < c.dim(); ++b) he(static_cast<long>(a), static_cast<long>(b)) = hess[a][b];
      EXPECT_LT((he - he.transpose()).cwiseAbs().maxCoeff(), 1e-12 * he.cwiseAbs().maxCoeff());
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(he).eigenvalues().minCoeff(), 0) << name;
    }
  }
}

TEST(ReebToAngles, KnownFixtureValues) {
  EXPECT_EQ(reeb_to_angles(cone_named("dp1"), ints({0, 0, 3})).beta,
            (RationalVector{Rational(13, 12), Rational(7, 6), Rational(13, 12), Rational(5, 6)}));
  EXPECT_EQ(reeb_to_angles(cone_named("dp2"), ints({0, 0, 3})).beta,
            (RationalVector{Rational(19, 21), Rational(23, 21), Rational(19, 21), Rational(23, 21), Rational(25, 21)}));
  EXPECT_EQ(reeb_to_angles(cone_named("dp3"), ints({0, 0, 3})).beta, RationalVector(6, Rational(1)));
}

TEST(ReebToAngles, FlatModel) {
  std::mt19937_64 g = rng(25);
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    GoodCone c = cone_named("octant" + std::to_string(dim));
    for (int i = 0; i < 100; ++i) {
      RationalVector beta, xi;
      for (std::size_t k = 0; k < dim; ++k) {
        beta.push_back(random_positive(g));
        xi.push_back(1 / beta.back());
      }
      EXPECT_EQ(reeb_to_angles(c, xi).beta, beta);
      CorrespondenceResult<double> back = angles_to_reeb(c, beta);
      EXPECT_LT(max_abs_diff(back.xi, to_double(xi)), 1e-9);
    }
  }
}

TEST(ReebToAngles, AnglesAreAlwaysInTheAnglesCone) {
  std::mt19937_64 g = rng(26);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    for (int i = 0; i < 10; ++i) {
      CorrespondenceResult<Rational> r = reeb_to_angles(c, random_reeb(g, c));
      Membership<Rational> m = angles_cone_membership(c, r.beta);
      ASSERT_TRUE(m.member()) << name;
      EXPECT_EQ(*m.witness, scaled(r.barycenter, Rational(2 * static_cast<long>(c.dim()))));
    }
  }
}

TEST(ReebToAngles, MinusOneHomogeneousExactly) {
  std::mt19937_64 g = rng(27);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    RationalVector xi = random_reeb(g, c);
    Rational t = random_positive(g);
    EXPECT_EQ(reeb_to_angles(c, scaled(xi, t)).beta, scaled(reeb_to_angles(c, xi).beta, 1 / t)) << name;
  }
}

TEST(AnglesToReeb, KnownFixtureValues) {
  CorrespondenceResult<double> octant = angles_to_reeb(cone_named("octant3"), ints({1, 1, 1}));
  EXPECT_LT(max_abs_diff(octant.xi, {1, 1, 1}), 1e-12);
  CorrespondenceResult<double> dp3 = angles_to_reeb(cone_named("dp3"), RationalVector(6, Rational(1)));
  EXPECT_LT(max_abs_diff(dp3.xi, {0, 0, 3}), 1e-9);
  CorrespondenceResult<double> y21 = angles_to_reeb(cone_named("y21"), ints({1, 1, 1, 1}));
  EXPECT_LT(y21.barycenter_residual, 1e-9);
  EXPECT_LT(y21.roundtrip_residual, 1e-9);
  EXPECT_TRUE(y21.verified);
}

TEST(AnglesToReeb, Y21AgreesWithDirectSearchOnTheSlice) {
  GoodCone c = cone_named("y21");
  RationalVector beta = ints({1, 1, 1, 1});
  CorrespondenceResult<double> newton = angles_to_reeb(c, beta);
  std::vector<double> q = to_double(monotone_point(c, beta));

  // Pattern search on the slice, scoring with the truncated cone volume.
  Eigen::Vector3d qe(q[0], q[1], q[2]);
  Eigen::Matrix<double, 3, 2> basis = Eigen::FullPivLU<Eigen::MatrixXd>(qe.transpose()).kernel();
  std::vector<double> xi(3, 0.0);
  for (const IntVector& v : c.normals())
    for (std::size_t i = 0; i < 3; ++i) xi[i] += static_cast<double>(v[i]);
  double s = 0.5 / std::inner_product(xi.begin(), xi.end(), q.begin(), 0.0);
  for (double& x : xi) x *= s;
  auto score = [&](const std::vector<double>& x) {
    for (const IntVector& u : c.rays())
      if (dot(u, x) <= 0) return std::numeric_limits<double>::infinity();
    return TransversalPolytope<double>(c, x).moments().euclid_volume_delta;
  };
  double best = score(xi), step = 0.5;
  while (step > 1e-11) {
    bool moved = false;
    for (int k = 0; k < 2; ++k)
      for (double sign : {1.0, -1.0}) {
        std::vector<double> trial = xi;
        for (std::size_t i = 0; i < 3; ++i) trial[i] += sign * step * basis(static_cast<long>(i), k);
        double v = score(trial);
        if (v < best) best = v, xi = trial, moved = true;
      }
    if (!moved) step /= 2;
  }
  EXPECT_LT(max_abs_diff(xi, newton.xi), 1e-6);
  EXPECT_NEAR(best, newton.volume, 1e-12 * best);
}

TEST(AnglesToReeb, RoundTripsOnEveryFixture) {
  std::mt19937_64 g = rng(28);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    for (int i = 0; i < 100; ++i) {
      RationalVector xi = random_reeb(g, c);
      CorrespondenceResult<Rational> fwd = reeb_to_angles(c, xi);
      CorrespondenceResult<double> back = angles_to_reeb(c, fwd.beta);
      ASSERT_LT(rel_diff(back.xi, to_double(xi)), 1e-9) << name << " draw " << i;

      RationalVector beta = random_angles(g, c);
      CorrespondenceResult<double> sol = angles_to_reeb(c, beta);
      ASSERT_TRUE(sol.verified) << name;
      ASSERT_LT(rel_diff(reeb_to_angles(c, sol.xi).beta, to_double(beta)), 1e-9) << name << " draw " << i;
    }
  }
}

TEST(AnglesToReeb, MinusOneHomogeneous) {
  std::mt19937_64 g = rng(29);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    RationalVector beta = random_angles(g, c);
    Rational t = random_positive(g);
    std::vector<double> a = angles_to_reeb(c, beta).xi, b = angles_to_reeb(c, scaled(beta, t)).xi;
    for (double& x : b) x *= t.get_d();
    EXPECT_LT(rel_diff(a, b), 1e-9) << name;
  }
}

TEST(AnglesToReeb, SliceHessianIsPositiveAndOnlyTheMinimizerBalances) {
  std::mt19937_64 g = rng(30);
  for (const std::string& name : fixture_names()) {
    GoodCone c = cone_named(name);
    RationalVector beta = random_angles(g, c);
    SolverOptions opts;
    CorrespondenceResult<double> sol = angles_to_reeb(c, beta, opts);
    std::vector<double> q = sol.monotone_point;
    EXPECT_LT(max_abs_diff(sol.barycenter, q), 10 * opts.tol * max_abs(q) + 1e-15) << name;

    const long n1 = static_cast<long>(c.dim());
    Eigen::VectorXd qe = Eigen::Map<Eigen::VectorXd>(q.data(), n1);
    Eigen::MatrixXd basis = Eigen::FullPivLU<Eigen::MatrixXd>(qe.transpose()).kernel();
    VolumeFunction vf = build_volume_function(c);
    std::uniform_real_distribution<double> u(-1, 1);
    int perturbed = 0;
    for (int k = 0; k < 200 && perturbed < 20; ++k) {
      Eigen::VectorXd dir = basis * Eigen::VectorXd::NullaryExpr(basis.cols(), [&] { return u(g); });
      double size = 1e-3 * max_abs(sol.xi) * (1 + k % 5);
      std::vector<double> xi = sol.xi;
      for (long i = 0; i < n1; ++i) xi[static_cast<std::size_t>(i)] += size * dir(i) / dir.norm();
      bool inside = true;
      for (const IntVector& r : c.rays()) inside = inside && dot(r, xi) > 0;
      if (!inside) continue;
      ++perturbed;
      std::vector<std::vector<double>> h = vf.hessian(xi);
      Eigen::MatrixXd he(n1, n1);
      for (long i = 0; i < n1; ++i)
        for (long j = 0; j < n1; ++j) he(i, j) = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      Eigen::MatrixXd restricted = basis.transpose() * he * basis;
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(restricted).eigenvalues().minCoeff(), 0) << name;
      std::vector<double> bar = reeb_to_angles(c, xi).barycenter;
      EXPECT_GT(max_abs_diff(bar, q) / max_abs(q), opts.tol) << name;
    }
    EXPECT_EQ(perturbed, 20) << name;
  }
}

TEST(AnglesToReeb, CertifiedResidualAndInitialPoint) {
  GoodCone c = cone_named("dp1");
  RationalVector beta = ints({1, 1, 1, 1});
  SolverOptions opts;
  opts.certify = true;
  opts.initial_xi = std::vector<double>{0.1, 0.2, 2.0};
  CorrespondenceResult<double> r = angles_to_reeb(c, beta, opts);
  ASSERT_TRUE(r.certified_residual.has_value());
  EXPECT_LT(r.certified_residual->get_d(), 1e-12);
  EXPECT_LT(std::abs(r.certified_residual->get_d() - r.roundtrip_residual), 1e-14);
}

TEST(AnglesToReeb, Errors) {
  try {
    angles_to_reeb(cone_named("p1xp1"), ints({1, 2, 1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInAnglesCone);
    EXPECT_EQ(e.certificate(), (std::vector<long long>{1, -1, 1, -1}));
  }
  SolverOptions opts;
  opts.max_iter = 1;
  try {
    angles_to_reeb(cone_named("y32"), ints({1, 1, 1, 1}), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MaxIterations);
  }
  opts = {};
  opts.initial_xi = std::vector<double>{1, 0, 0};
  EXPECT_THROW(angles_to_reeb(cone_named("dp1"), ints({1, 1, 1, 1}), opts), Error);
}
