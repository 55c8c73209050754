#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "toric_cy/correspondence.hpp"
#include "toric_cy/fixtures.hpp"
#include "toric_cy/invariants.hpp"
#include "toric_cy/polytope.hpp"
#include "toric_cy/potential.hpp"

namespace toric_cy::cli {

namespace {

using json = nlohmann::ordered_json;

json exact(const Rational& q) { return to_string(q); }

json value(const Rational& q) { return exact(q); }
json value(double x) { return x; }

template <class T>
json vec(const std::vector<T>& v) {
  json out = json::array();
  for (const T& x : v) out.push_back(value(x));
  return out;
}

json ints(const IntVector& v) { return json(v); }

json int_rows(const std::vector<IntVector>& rows) {
  json out = json::array();
  for (const IntVector& r : rows) out.push_back(ints(r));
  return out;
}

template <class T>
json matrix(const std::vector<std::vector<T>>& m) {
  json out = json::array();
  for (const std::vector<T>& r : m) out.push_back(vec(r));
  return out;
}

json indices(const std::vector<std::size_t>& v) { return json(v); }

template <Scalar S>
json pi_scaled(const PiScaled<S>& p) {
  return json{{"coefficient", value(p.coefficient)}, {"pi_power", p.pi_power}, {"value", p.value()}};
}

double tolerance_from_env(double fallback) {
  const char* env = std::getenv("TORIC_CY_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  double tol = to_double(parse_rational(env));
  if (!(tol > 0)) throw Error(Errc::InvalidInput, "TORIC_CY_TOL must be positive");
  return tol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json cone_summary(const GoodCone& cone) {
  json faces = json::array();
  for (const Face& f : cone.faces())
    faces.push_back(json{{"dim", f.dim}, {"rays", indices(f.rays)}, {"facets", indices(f.facets)}});
  json relations = int_rows(cone.relations());
  return json{{"name", cone.name()},   {"dim", cone.dim()},       {"normals", int_rows(cone.normals())},
              {"rays", int_rows(cone.rays())}, {"faces", faces}, {"relations", relations}};
}

template <Scalar S>
json correspondence_json(const CorrespondenceResult<S>& r) {
  return json{{"xi", vec(r.xi)},
              {"beta", vec(r.beta)},
              {"barycenter", vec(r.barycenter)},
              {"volume", value(r.volume)}};
}

template <Scalar S>
json futaki_json(const FutakiReport<S>& r) {
  return json{{"values", vec(r.values)},
              {"a_beta", vec(r.a_beta)},
              {"barycenter_interior", vec(r.barycenter_interior)},
              {"barycenter_boundary", vec(r.barycenter_boundary)},
              {"interior_volume", value(r.interior_volume)},
              {"boundary_mass", value(r.boundary_mass)},
              {"gap_size", r.gap_size},
              {"values_size", r.values_size},
              {"a_beta_size", r.a_beta_size},
              {"vanishes", r.vanishes},
              {"vanishes_by_values", r.vanishes_by_values},
              {"vanishes_by_a_beta", r.vanishes_by_a_beta}};
}

template <Scalar S>
json scalar_json(const GoodCone& cone, const Vector<S>& xi, const Vector<S>& beta) {
  TotalScalarReport<S> total = total_transversal_scalar(cone, xi, beta);
  IntegratedScalarReport<S> integ = integrated_scalar_identity(cone, xi, beta);
  json t{{"value", value(total.value)}};
  if (total.lambda) {
    t["lambda"] = value(*total.lambda);
    t["cross_check"] = value(*total.cross_check);
  }
  json divisors = json::array();
  for (const PiScaled<S>& p : integ.divisor_volumes) divisors.push_back(pi_scaled(p));
  json i{{"scalar_integral", pi_scaled(integ.scalar_integral)},
         {"divisor_side", pi_scaled(integ.divisor_side)},
         {"link_side", pi_scaled(integ.link_side)},
         {"link_volume", pi_scaled(integ.link_volume)},
         {"divisor_volumes", divisors},
         {"matched_pair", integ.matched_pair},
         {"identity_holds", integ.identity_holds}};
  return json{{"total_transversal_scalar", t}, {"integrated_scalar", i}};
}

json report_json(const FixtureReport& r) {
  json checks = json::array();
  for (const FixtureCheck& c : r.checks)
    checks.push_back(json{{"description", c.description}, {"passed", c.passed}, {"detail", c.detail}});
  return json{{"name", r.name}, {"provenance", r.provenance}, {"passed", r.passed}, {"checks", checks}};
}

std::vector<double> doubles(const RationalVector& v) { return to_double(v); }

struct Options {
  std::string file;
  std::string beta;
  std::string xi;
  std::string point;
  std::string xi0;
  std::string config;
  std::string fixture_action = "list";
  std::string fixture_name;
  std::vector<std::string> rays;
  bool exact = false;
  bool certify = false;
  double tol = 0;
  double step = 1e-3;
  int max_iter = 0;
};

int cmd_check_good(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  json j = cone_summary(cone);
  j["good"] = true;
  emit(out, j);
  return Ok;
}

int cmd_dual(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  std::vector<IntVector> dual = dual_cone(cone);
  std::vector<IntVector> back = extreme_rays(dual);
  emit(out, json{{"dual_rays", int_rows(dual)}, {"double_dual_matches", back == cone.rays()}});
  return Ok;
}

int cmd_angles_cone(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  Membership<Rational> m = angles_cone_membership(cone, parse_vector(o.beta));
  if (m.member()) {
    emit(out, json{{"member", true}, {"witness", vec(*m.witness)}});
    return Ok;
  }
  emit(out, json{{"member", false}, {"eta", ints(m.relation)}, {"pairing", exact(m.pairing)}});
  return Negative;
}

int cmd_reeb_to_angles(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  RationalVector xi = parse_vector(o.xi);
  if (o.exact) {
    emit(out, correspondence_json(reeb_to_angles(cone, xi)));
  } else {
    emit(out, correspondence_json(reeb_to_angles(cone, doubles(xi))));
  }
  return Ok;
}

int cmd_angles_to_reeb(const Options& o, std::ostream& out, std::ostream& err) {
  GoodCone cone = load_cone(o.file);
  SolverOptions opts;
  opts.tol = tolerance_from_env(opts.tol);
  if (!o.config.empty()) {
    json cfg = json::parse(read_file(o.config), nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) throw Error(Errc::InvalidInput, "solver config is not a JSON object");
    try {
      if (cfg.contains("tol")) opts.tol = cfg.at("tol").get<double>();
      if (cfg.contains("max_iter")) opts.max_iter = cfg.at("max_iter").get<int>();
      if (cfg.contains("certify")) opts.certify = cfg.at("certify").get<bool>();
      if (cfg.contains("initial_xi")) opts.initial_xi = cfg.at("initial_xi").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(Errc::InvalidInput, std::string("solver config: ") + e.what());
    }
  }
  if (o.tol > 0) opts.tol = o.tol;
  if (o.max_iter > 0) opts.max_iter = o.max_iter;
  if (o.certify) opts.certify = true;
  if (!o.xi0.empty()) opts.initial_xi = doubles(parse_vector(o.xi0));

  CorrespondenceResult<double> r = angles_to_reeb(cone, parse_vector(o.beta), opts);
  json j{{"xi", vec(r.xi)},
         {"beta", vec(r.beta)},
         {"residual", r.roundtrip_residual},
         {"barycenter_residual", r.barycenter_residual},
         {"gradient_norm", r.gradient_norm},
         {"iterations", r.iterations},
         {"volume", r.volume},
         {"monotone_point", vec(r.monotone_point)},
         {"barycenter", vec(r.barycenter)},
         {"verified", r.verified}};
  if (r.certified_residual) {
    j["certified_residual"] = exact(*r.certified_residual);
    j["certified_residual_approx"] = r.certified_residual->get_d();
  }
  emit(out, j);
  if (!r.verified) {
    err << "round-trip residual " << r.roundtrip_residual << " exceeds 10 tol\n";
    return SolverFailure;
  }
  return Ok;
}

int cmd_volume(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  RationalVector xi = parse_vector(o.xi);
  require_reeb(cone, xi);
  VolumeFunction vf = build_volume_function(cone);
  json terms = json::array();
  for (const VolumeTerm& t : vf.terms())
    terms.push_back(json{{"coefficient", exact(t.coefficient)}, {"rays", int_rows(t.rays)}});
  json j;
  if (o.exact) {
    TransversalPolytope<Rational> poly(cone, xi);
    j = json{{"xi", vec(xi)},
             {"volume", exact(vf.value(xi))},
             {"chart_volume", exact(poly.moments().volume)},
             {"chart_drop", poly.chart_drop()}};
  } else {
    std::vector<double> x = doubles(xi);
    TransversalPolytope<double> poly(cone, x);
    j = json{{"xi", vec(x)},
             {"volume", vf.value(x)},
             {"chart_volume", poly.moments().volume},
             {"chart_drop", poly.chart_drop()}};
  }
  j["terms"] = terms;
  emit(out, j);
  return Ok;
}

int cmd_futaki(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  RationalVector xi = parse_vector(o.xi);
  RationalVector beta = parse_vector(o.beta);
  double tol = o.tol > 0 ? o.tol : tolerance_from_env(1e-10);
  json j = o.exact ? futaki_json(log_futaki(cone, xi, beta, tol))
                   : futaki_json(log_futaki(cone, doubles(xi), doubles(beta), tol));
  emit(out, j);
  return Ok;
}

int cmd_scalar(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  RationalVector xi = parse_vector(o.xi);
  RationalVector beta = parse_vector(o.beta);
  json j = o.exact ? scalar_json(cone, xi, beta) : scalar_json(cone, doubles(xi), doubles(beta));

  std::vector<double> point;
  if (o.point.empty()) {
    point = reeb_to_angles(cone, doubles(xi)).barycenter;
  } else {
    point = doubles(parse_vector(o.point));
  }
  SymplecticPotential pot = SymplecticPotential::canonical(cone, beta, xi);
  MetricSample m = metric_at(pot, point);
  AbreuEstimate a = abreu_scalar_curvature(pot, point, o.step);
  j["point"] = vec(point);
  j["metric"] = json{{"hessian", matrix(m.hessian)},
                     {"inverse", matrix(m.inverse)},
                     {"condition_number", m.condition_number},
                     {"reeb_residual", m.reeb_residual}};
  j["abreu"] = json{{"value", a.value}, {"coarse", a.coarse}, {"fine", a.fine}, {"error_indicator", a.error_indicator}};
  emit(out, j);
  return Ok;
}

int cmd_klt(const Options& o, std::ostream& out) {
  GoodCone cone = load_cone(o.file);
  std::vector<IntVector> rays;
  for (const std::string& r : o.rays) {
    IntVector v;
    for (const Rational& q : parse_vector(r)) {
      if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw Error(Errc::InvalidInput, "ray entries must be integers: '" + r + "'");
      v.push_back(q.get_num().get_si());
    }
    rays.push_back(std::move(v));
  }
  LogPairCertificate c = cartier_klt(cone, parse_vector(o.beta), rays);
  json disc = json::array();
  for (const auto& [v, a] : c.discrepancies) disc.push_back(json{{"ray", ints(v)}, {"discrepancy", exact(a)}});
  json j{{"is_r_cartier", c.is_r_cartier},
         {"is_klt", c.is_klt},
         {"is_q_gorenstein", c.is_q_gorenstein},
         {"discrepancies", disc}};
  if (c.interior_point) j["interior_point"] = vec(*c.interior_point);
  if (!c.relation.empty()) j["eta"] = ints(c.relation);
  emit(out, j);
  return c.is_r_cartier ? Ok : Negative;
}

int cmd_fixtures(const Options& o, std::ostream& out) {
  if (o.fixture_action == "list") {
    json list = json::array();
    for (const Fixture& f : fixtures())
      list.push_back(json{{"name", f.name}, {"normals", int_rows(f.normals)}, {"provenance", f.provenance}});
    emit(out, json{{"fixtures", list}});
    return Ok;
  }
  if (o.fixture_action == "run") {
    if (o.fixture_name.empty()) throw Error(Errc::InvalidInput, "fixtures run needs a fixture name");
    FixtureReport r = run_fixture(find_fixture(o.fixture_name));
    emit(out, report_json(r));
    return r.passed ? Ok : Negative;
  }
  if (o.fixture_action == "run-all") {
    std::vector<std::future<FixtureReport>> jobs;
    for (const Fixture& f : fixtures())
      jobs.push_back(std::async(std::launch::async, [&f] { return run_fixture(f); }));
    json list = json::array();
    bool all = true;
    for (std::future<FixtureReport>& job : jobs) {
      FixtureReport r = job.get();
      all = all && r.passed;
      list.push_back(report_json(r));
    }
    emit(out, json{{"passed", all}, {"fixtures", list}});
    return all ? Ok : Negative;
  }
  throw Error(Errc::InvalidInput, "unknown fixtures action '" + o.fixture_action + "'");
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::NotGood:
    case Errc::NotStrictlyConvex:
    case Errc::NotFullDimensional:
    case Errc::NotInAnglesCone:
    case Errc::NotRCartier:
    case Errc::NotAConeOverPolytope:
    case Errc::FixtureCheckFailed:
      return Negative;
    case Errc::LineSearchFailure:
    case Errc::MaxIterations:
    case Errc::SingularHessian:
    case Errc::SingularMomentMatrix:
    case Errc::DegeneratePolytope:
      return SolverFailure;
    default:
      return InputError;
  }
}

GoodCone parse_cone_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::InvalidInput, origin + ": not valid JSON");
  if (!j.is_object()) throw Error(Errc::InvalidInput, origin + ": expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
    throw Error(Errc::InvalidInput, origin + ": \"dim\" must be a positive integer");
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (!j.contains("normals") || !j["normals"].is_array() || j["normals"].empty())
    throw Error(Errc::InvalidInput, origin + ": \"normals\" must be a nonempty array");
  std::vector<IntVector> normals;
  for (const json& row : j["normals"]) {
    if (!row.is_array() || row.size() != dim)
      throw Error(Errc::InvalidInput, origin + ": every normal must be an array of " + std::to_string(dim) + " integers");
    IntVector v;
    for (const json& x : row) {
      if (!x.is_number_integer()) throw Error(Errc::InvalidInput, origin + ": normals must contain integers only");
      v.push_back(x.get<long long>());
    }
    normals.push_back(std::move(v));
  }
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error(Errc::InvalidInput, origin + ": \"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  return check_good(std::move(normals), std::move(name));
}

GoodCone load_cone(const std::string& path) {
  const std::string prefix = "fixture:";
  if (path.rfind(prefix, 0) == 0) return fixture_cone(find_fixture(path.substr(prefix.size())));
  return parse_cone_json(read_file(path), path);
}

RationalVector parse_vector(const std::string& text) {
  RationalVector out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(Errc::InvalidInput, "empty vector");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reeb vectors and cone angles of toric Calabi-Yau cone metrics", "toric-cy"};
  app.require_subcommand(1);
  Options o;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "cone JSON file or fixture:<name>")->required(); };

  CLI::App* check = app.add_subcommand("check-good", "validate a cone and print rays, faces and relations");
  file_arg(check);
  CLI::App* dual = app.add_subcommand("dual", "extreme rays of the dual cone");
  file_arg(dual);
  CLI::App* acone = app.add_subcommand("angles-cone", "test angles against the angles' cone");
  file_arg(acone);
  acone->add_option("--beta", o.beta, "angles b1,...,bd")->required();
  CLI::App* r2a = app.add_subcommand("reeb-to-angles", "angles determined by a Reeb vector");
  file_arg(r2a);
  r2a->add_option("--xi", o.xi, "Reeb vector")->required();
  r2a->add_flag("--exact", o.exact, "exact rational arithmetic");
  CLI::App* a2r = app.add_subcommand("angles-to-reeb", "Reeb vector determined by angles");
  file_arg(a2r);
  a2r->add_option("--beta", o.beta, "angles")->required();
  a2r->add_option("--tol", o.tol, "scaled gradient tolerance");
  a2r->add_option("--max-iter", o.max_iter, "Newton iteration cap");
  a2r->add_option("--xi0", o.xi0, "initial Reeb vector");
  a2r->add_option("--config", o.config, "solver config JSON");
  a2r->add_flag("--certify", o.certify, "recompute the residual exactly at the returned xi");
  CLI::App* vol = app.add_subcommand("volume", "volume of the truncated cone and its term list");
  file_arg(vol);
  vol->add_option("--xi", o.xi, "Reeb vector")->required();
  vol->add_flag("--exact", o.exact, "exact rational arithmetic");
  CLI::App* fut = app.add_subcommand("futaki", "log Futaki invariant");
  file_arg(fut);
  fut->add_option("--xi", o.xi, "Reeb vector")->required();
  fut->add_option("--beta", o.beta, "angles")->required();
  fut->add_option("--tol", o.tol, "vanishing tolerance");
  fut->add_flag("--exact", o.exact, "exact rational arithmetic");
  CLI::App* scal = app.add_subcommand("scalar", "scalar curvature quantities and the canonical potential");
  file_arg(scal);
  scal->add_option("--xi", o.xi, "Reeb vector")->required();
  scal->add_option("--beta", o.beta, "angles")->required();
  scal->add_option("--point", o.point, "interior point for the metric sample");
  scal->add_option("--step", o.step, "finite-difference step");
  scal->add_flag("--exact", o.exact, "exact rational arithmetic");
  CLI::App* klt = app.add_subcommand("klt", "Cartier witness and discrepancies");
  file_arg(klt);
  klt->add_option("--beta", o.beta, "angles")->required();
  klt->add_option("--ray", o.rays, "queried ray, repeatable");
  CLI::App* fix = app.add_subcommand("fixtures", "bundled cones and their known values");
  fix->add_option("action", o.fixture_action, "list | run | run-all")
      ->check(CLI::IsMember({"list", "run", "run-all"}));
  fix->add_option("name", o.fixture_name, "fixture name for run");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : InputError;
  }

  try {
    if (check->parsed()) return cmd_check_good(o, out);
    if (dual->parsed()) return cmd_dual(o, out);
    if (acone->parsed()) return cmd_angles_cone(o, out);
    if (r2a->parsed()) return cmd_reeb_to_angles(o, out);
    if (a2r->parsed()) return cmd_angles_to_reeb(o, out, err);
    if (vol->parsed()) return cmd_volume(o, out);
    if (fut->parsed()) return cmd_futaki(o, out);
    if (scal->parsed()) return cmd_scalar(o, out);
    if (klt->parsed()) return cmd_klt(o, out);
    if (fix->parsed()) return cmd_fixtures(o, out);
  } catch (const Error& e) {
    json j{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
    if (!e.indices().empty()) j["indices"] = indices(e.indices());
    if (!e.certificate().empty()) j["certificate"] = ints(e.certificate());
    emit(out, j);
    err << "toric-cy: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "toric-cy: " << e.what() << '\n';
    return InputError;
  }
  return InputError;
}

}  // namespace toric_cy::cli
