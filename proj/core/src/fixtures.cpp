#include "toric_cy/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toric_cy/correspondence.hpp"
#include "toric_cy/invariants.hpp"

namespace toric_cy {

namespace {

std::string render(const RationalVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string render(const std::vector<double>& v) {
  std::ostringstream out;
  out.precision(17);
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
  return out.str();
}

std::string render(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

RationalVector rationals(std::initializer_list<std::pair<long, long>> entries) {
  RationalVector out;
  for (auto [p, q] : entries) {
    Rational r(p, q);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

RationalVector integers(std::initializer_list<long> entries) {
  RationalVector out;
  for (long x : entries) out.emplace_back(x);
  return out;
}

template <class F>
FixtureCheck guarded(std::string description, F&& body) {
  FixtureCheck c;
  c.description = std::move(description);
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = e.what();
  }
  return c;
}

FixtureCheck angles_at(const GoodCone& cone, const RationalVector& xi, const RationalVector& expected,
                       std::string description) {
  return guarded(std::move(description), [&](FixtureCheck& c) {
    RationalVector beta = reeb_to_angles(cone, xi).beta;
    c.passed = beta == expected;
    c.detail = "angles " + render(beta);
  });
}

FixtureCheck reeb_for(const GoodCone& cone, const RationalVector& beta, const std::vector<double>& expected,
                      double tol, std::string description) {
  return guarded(std::move(description), [&](FixtureCheck& c) {
    CorrespondenceResult<double> r = angles_to_reeb(cone, beta);
    double err = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) err = std::max(err, std::abs(r.xi[i] - expected[i]));
    c.passed = err < tol && r.verified;
    c.detail = "xi " + render(r.xi);
  });
}

FixtureCheck roundtrip(const GoodCone& cone, const RationalVector& beta, double tol, std::string description) {
  return guarded(std::move(description), [&](FixtureCheck& c) {
    CorrespondenceResult<double> r = angles_to_reeb(cone, beta);
    c.passed = r.roundtrip_residual < tol && r.barycenter_residual < tol;
    std::ostringstream out;
    out.precision(3);
    out << "xi " << render(r.xi) << ", roundtrip residual " << r.roundtrip_residual;
    c.detail = out.str();
  });
}

FixtureCheck relation_is(const GoodCone& cone, const IntVector& expected, std::string description) {
  return guarded(std::move(description), [&](FixtureCheck& c) {
    c.passed = cone.relations().size() == 1 && cone.relations().front() == expected;
    c.detail = cone.relations().empty() ? "no relations" : "relation " + render(cone.relations().front());
  });
}

FixtureCheck r_is(const GoodCone& cone, const Rational& expected, std::string description) {
  return guarded(std::move(description), [&](FixtureCheck& c) {
    RInvariant r = r_invariant(cone);
    c.passed = r.value == expected;
    c.detail = "R = " + to_string(r.value) + ", angles " + render(r.beta);
  });
}

Fixture octant(std::size_t dim) {
  Fixture f;
  f.name = "octant" + std::to_string(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, 0);
    e[i] = 1;
    f.normals.push_back(e);
  }
  f.provenance = "flat model: product of flat cones C_beta, Reeb vector (1/beta_1, ..., 1/beta_" +
                 std::to_string(dim) + ")";
  f.checks = [dim](const GoodCone& cone) {
    std::vector<FixtureCheck> out;
    out.push_back(guarded("self-dual: extreme rays are the coordinate vectors", [&](FixtureCheck& c) {
      c.passed = dual_cone(cone) == cone.rays();
      c.detail = std::to_string(cone.rays().size()) + " rays";
    }));
    RationalVector beta, xi;
    std::vector<double> xi_d;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational b(static_cast<long>(i + 2), static_cast<long>(i + 1));
      beta.push_back(b);
      xi.push_back(1 / b);
      xi_d.push_back(xi.back().get_d());
    }
    out.push_back(angles_at(cone, xi, beta, "flat model forward: xi = 1/beta gives back beta exactly"));
    out.push_back(reeb_for(cone, beta, xi_d, 1e-9, "flat model backward: beta gives xi = 1/beta"));
    return out;
  };
  return f;
}

Fixture ypq(int p, int q) {
  Fixture f;
  f.name = "y" + std::to_string(p) + std::to_string(q);
  f.normals = {{1, 0, 0}, {1, p - q - 1, p - q}, {1, p, p}, {1, 1, 0}};
  f.provenance = "Y^{p,q} singularity, p = " + std::to_string(p) + ", q = " + std::to_string(q) +
                 "; Gorenstein, smooth Calabi-Yau cone at equal angles";
  f.checks = [p, q](const GoodCone& cone) {
    std::vector<FixtureCheck> out;
    out.push_back(relation_is(cone, {p + q, -p, p - q, -p},
                              "angles' cone relation (p+q) b1 + (p-q) b3 = p b2 + p b4"));
    out.push_back(roundtrip(cone, integers({1, 1, 1, 1}), 1e-9,
                            "equal angles: irrational Reeb vector, barycenter and round trip below 1e-9"));
    return out;
  };
  return f;
}

std::vector<Fixture> build() {
  std::vector<Fixture> all;
  for (std::size_t dim = 2; dim <= 5; ++dim) all.push_back(octant(dim));

  {
    Fixture f;
    f.name = "p1xp1";
    f.normals = {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
    f.provenance = "anticanonical cone over P1 x P1 (the conifold modulo Z_2)";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      out.push_back(relation_is(cone, {1, -1, 1, -1}, "angles' cone relation b1 + b3 = b2 + b4"));
      out.push_back(angles_at(cone, integers({0, 0, 3}), integers({1, 1, 1, 1}),
                              "regular Reeb (0,0,3) gives equal angles"));
      out.push_back(reeb_for(cone, integers({1, 1, 1, 1}), {0, 0, 3}, 1e-9, "equal angles give Reeb (0,0,3)"));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "dp1";
    f.normals = {{1, 0, 1}, {0, -1, 1}, {-1, -1, 1}, {0, 1, 1}};
    f.provenance = "anticanonical cone over the first del Pezzo surface; polygon vertices (-1,-1), (-1,1), (0,1), (2,-1)";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      RationalVector beta = rationals({{13, 12}, {7, 6}, {13, 12}, {5, 6}});
      out.push_back(angles_at(cone, integers({0, 0, 3}), beta,
                              "regular Reeb (0,0,3) gives angles (13/12, 7/6, 13/12, 5/6)"));
      out.push_back(r_is(cone, Rational(6, 7), "R invariant 6/7"));
      out.push_back(guarded("log Futaki invariant vanishes at the regular pair", [&](FixtureCheck& c) {
        FutakiReport<Rational> r = log_futaki(cone, integers({0, 0, 3}), beta);
        c.passed = r.vanishes && r.vanishes_by_values && r.vanishes_by_a_beta;
        c.detail = "barycenter gap " + std::to_string(r.gap_size);
      }));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "dp2";
    f.normals = {{1, 0, 1}, {0, -1, 1}, {0, 1, 1}, {-1, 0, 1}, {-1, -1, 1}};
    f.provenance = "anticanonical cone over the second del Pezzo surface";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      out.push_back(angles_at(cone, integers({0, 0, 3}),
                              rationals({{19, 21}, {23, 21}, {19, 21}, {23, 21}, {25, 21}}),
                              "regular Reeb (0,0,3) gives angles (19/21, 23/21, 19/21, 23/21, 25/21)"));
      out.push_back(r_is(cone, Rational(21, 25), "R invariant 21/25"));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "dp3";
    f.normals = {{1, 0, 1}, {0, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, 0, 1}, {0, -1, 1}};
    f.provenance = "anticanonical cone over the third del Pezzo surface; Kahler-Einstein base, equal angles";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      RationalVector ones(6, Rational(1));
      out.push_back(reeb_for(cone, ones, {0, 0, 3}, 1e-9, "equal angles give Reeb (0,0,3)"));
      out.push_back(angles_at(cone, integers({0, 0, 3}), ones, "regular Reeb (0,0,3) gives equal angles"));
      out.push_back(guarded("volume identity holds at the regular pair", [&](FixtureCheck& c) {
        IntegratedScalarReport<Rational> r = integrated_scalar_identity(cone, integers({0, 0, 3}), ones);
        c.passed = r.matched_pair && r.identity_holds;
        c.detail = "divisor side " + to_string(r.divisor_side.coefficient) + " pi^3, link side " +
                   to_string(r.link_side.coefficient) + " pi^3";
      }));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "conifold";
    f.normals = {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}};
    f.provenance = "conifold cone; its volume is a multiple of xi3 / (xi1 xi2 (xi3 - xi2)(xi3 - xi1))";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      out.push_back(guarded("equal angles: Cartier witness (0,0,1), discrepancy of (1,1,2) is 1", [&](FixtureCheck& c) {
        LogPairCertificate cert = cartier_klt(cone, integers({1, 1, 1, 1}), {{1, 1, 2}});
        c.passed = cert.is_r_cartier && cert.is_klt && *cert.interior_point == integers({0, 0, 1}) &&
                   cert.discrepancies.front().second == 1;
        c.detail = "witness " + render(*cert.interior_point) + ", discrepancy " +
                   to_string(cert.discrepancies.front().second);
      }));
      out.push_back(guarded("volume function has two simplicial terms", [&](FixtureCheck& c) {
        c.passed = build_volume_function(cone).terms().size() == 2;
        c.detail = std::to_string(build_volume_function(cone).terms().size()) + " terms";
      }));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "o12";
    f.normals = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 2}};
    f.provenance = "cone over the rectangle [0,1] x [0,2], polarization O(1,2) of P1 x P1; regular angles (a/2, b/2, a/2, b/2)";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      out.push_back(angles_at(cone, integers({0, 0, 3}), rationals({{1, 2}, {1, 1}, {1, 2}, {1, 1}}),
                              "regular Reeb (0,0,3) gives angles (1/2, 1, 1/2, 1)"));
      return out;
    };
    all.push_back(f);
  }
  {
    Fixture f;
    f.name = "dp1-polarized";
    f.normals = {{1, 0, -1}, {1, -1, 0}, {-1, 0, 2}, {0, 1, 0}};
    f.provenance = "first del Pezzo surface with the non-anticanonical polarization; polygon vertices (1,0), (1,1), (2,2), (2,0)";
    f.checks = [](const GoodCone& cone) {
      std::vector<FixtureCheck> out;
      out.push_back(angles_at(cone, integers({0, 0, 3}), rationals({{5, 9}, {7, 9}, {4, 9}, {7, 9}}),
                              "regular Reeb (0,0,3) gives angles (5/9, 7/9, 4/9, 7/9)"));
      out.push_back(r_is(cone, Rational(9, 7), "R invariant 9/7"));
      return out;
    };
    all.push_back(f);
  }
  all.push_back(ypq(2, 1));
  all.push_back(ypq(3, 1));
  all.push_back(ypq(3, 2));

  std::sort(all.begin(), all.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return all;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = build();
  return all;
}

const Fixture& find_fixture(std::string_view name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return f;
  throw Error(Errc::InvalidInput, "unknown fixture '" + std::string(name) + "'");
}

GoodCone fixture_cone(const Fixture& f) { return check_good(f.normals, f.name); }

FixtureReport run_fixture(const Fixture& f) {
  FixtureReport report;
  report.name = f.name;
  report.provenance = f.provenance;
  try {
    GoodCone cone = fixture_cone(f);
    report.checks = f.checks(cone);
  } catch (const std::exception& e) {
    report.checks.push_back({"cone passes the goodness check", false, e.what()});
  }
  report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const FixtureCheck& c) { return c.passed; });
  return report;
}

void require_passed(const FixtureReport& report) {
  for (const FixtureCheck& c : report.checks)
    if (!c.passed) throw Error(Errc::FixtureCheckFailed, report.name + ": " + c.description + " (" + c.detail + ")");
}

}  // namespace toric_cy
