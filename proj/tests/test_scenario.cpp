#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ahx/expr.hpp"
#include "ahx/scenario.hpp"

using namespace ahx;
using scenario::Json;

namespace {

Json small() {
  return scenario::parse_json(R"({
    "name": "small",
    "seed": 3,
    "algebra": {"backend": "pointwise", "points": {"kind": "abstract", "count": 2},
                "functions": {"a": [1, 0]}},
    "polynomials": [{"name": "alpha", "expr": "x^2 - a"}],
    "operations": [{"op": "tractable", "poly": "alpha"}]
  })");
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

const Json& result(const Json& report, const std::string& op, std::size_t nth = 0) {
  for (const auto& r : report.at("results")) {
    if (r.at("op") == op && nth-- == 0) return r.at("outputs");
  }
  throw std::runtime_error("no result for " + op);
}

}  // namespace

TEST_CASE("expressions") {
  using expr::Expression;
  CVector z(3);
  z << 1.0, Complex(0, 1), -2.0;
  const std::map<std::string, CVector> vars{{"z", z}};
  auto p = Expression::parse("x^2 - (z - 1)").evaluate(vars, 3);
  REQUIRE(p.coeffs.size() == 3);
  CHECK(p.degree() == 2);
  CHECK((p.coeffs[0] - (CVector::Ones(3) - z)).norm() < 1e-15);
  CHECK(p.coeffs[1].norm() == 0.0);
  CHECK((p.coeffs[2] - CVector::Ones(3)).norm() == 0.0);

  p = Expression::parse("(z + 1)/2 + i*z^2").evaluate(vars, 3);
  CHECK(p.degree() == 0);
  CHECK(std::abs(p.coeffs[0][1] - (Complex(0.5, 0.5) + Complex(0, -1))) < 1e-15);
  CHECK(std::abs(Expression::parse("2e-3").evaluate({}, 1).coeffs[0][0] - 2e-3) < 1e-18);
  CHECK(Expression::parse("(x + 1)^3").evaluate({}, 1).coeffs[1][0] == Complex(3));

  const auto e = Expression::parse("a*x + b0 - x");
  CHECK(e.names() == std::set<std::string>{"a", "b0"});
  CHECK(e.uses_x());
  CHECK_FALSE(Expression::parse("z*z").uses_x());

  CHECK(kind_of([] { Expression::parse("x^"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Expression::parse("(x + 1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Expression::parse("x^-1"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Expression::parse("x^100"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { Expression::parse("1 $ 2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([&] { Expression::parse("1/x").evaluate(vars, 3); }) != ErrorKind::OwnerMismatch);
  CHECK(kind_of([&] { Expression::parse("w + 1").evaluate(vars, 3); }) == ErrorKind::ValidationError);
}

TEST_CASE("small scenario runs") {
  const Json report = scenario::run(small());
  const Json& out = result(report, "tractable");
  CHECK(out.at("tractable") == false);
  CHECK(out.at("radical_dimension") == 1);
  CHECK(report.at("seed") == 3);
  CHECK(report.at("results")[0].contains("provenance"));
  CHECK(report.contains("tolerances"));
}

TEST_CASE("validation errors") {
  auto expect_invalid = [](Json s) {
    CHECK(kind_of([&] { scenario::run(s); }) == ErrorKind::ValidationError);
  };
  Json s = small();
  s["extra_field"] = 1;
  expect_invalid(s);
  s = small();
  s["operations"] = Json::array();
  expect_invalid(s);
  s = small();
  s.erase("operations");
  expect_invalid(s);
  s = small();
  s["algebra"]["backend"] = "banach";
  expect_invalid(s);
  s = small();
  s["operations"][0]["op"] = "integrate";
  expect_invalid(s);
  s = small();
  s["operations"][0]["poly"] = "beta";
  expect_invalid(s);
  s = small();
  s["polynomials"][0]["expr"] = "x^2 - w";
  expect_invalid(s);
  s = small();
  s["polynomials"][0]["expr"] = "2*x^2 - a";  // not monic
  expect_invalid(s);
  s = small();
  s["polynomials"][0]["expr"] = "a";  // no x
  expect_invalid(s);
  s = small();
  s["algebra"]["points"]["count"] = 0;
  expect_invalid(s);
  s = small();
  s["tolerances"] = {{"root_tol", -1.0}};
  expect_invalid(s);
  s = small();
  s["tolerances"] = {{"made_up_tol", 1.0}};
  expect_invalid(s);
  s = small();
  s["polynomials"][0]["t"] = "largest";
  expect_invalid(s);
  s = small();
  s["operations"][0]["bogus"] = true;
  expect_invalid(s);
  s = small();
  s["algebra"]["functions"]["a"] = {1, 0, 3};
  expect_invalid(s);

  CHECK(kind_of([] { scenario::parse_json("{\"name\": "); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { scenario::read_json_file("/nonexistent/file.json"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { scenario::generate_example("no-such-example"); }) == ErrorKind::UnknownExample);
}

TEST_CASE("bad parameters and numerical failures") {
  Json s = small();
  // t below the minimal parameter is bad input
  s["polynomials"][0]["t"] = 0.5;
  ErrorKind k = kind_of([&] { scenario::run(s); });
  CHECK(k == ErrorKind::InvalidParameter);
  CHECK(scenario::exit_code(Error(k, "")) == 2);

  // a two-layer tower multiplies degree-2 coefficients past the bound
  const Json overflow = scenario::parse_json(R"({
    "name": "overflow",
    "algebra": {"backend": "poly", "points": {"kind": "disc", "boundary": 16}, "degree_bound": 2},
    "polynomials": [{"name": "alpha", "expr": "x^2 - z^2"}],
    "operations": [{"op": "tower", "polys": ["alpha", "alpha"]}]
  })");
  k = kind_of([&] { scenario::run(overflow); });
  CHECK(k == ErrorKind::DegreeOverflow);
  CHECK(scenario::exit_code(Error(k, "")) == 3);
}

TEST_CASE("exit codes") {
  CHECK(scenario::exit_code(Error(ErrorKind::ParseError, "")) == 2);
  CHECK(scenario::exit_code(Error(ErrorKind::ValidationError, "")) == 2);
  CHECK(scenario::exit_code(Error(ErrorKind::UnknownExample, "")) == 2);
  CHECK(scenario::exit_code(Error(ErrorKind::NonConvergence, "")) == 3);
  CHECK(scenario::exit_code(Error(ErrorKind::DegreeOverflow, "")) == 3);
  CHECK(scenario::exit_code(Error(ErrorKind::NotARoot, "")) == 3);
}

TEST_CASE("tolerance profiles") {
  const Tolerances t = scenario::tolerances_from_json(Json{{"root_tol", 1e-9}});
  CHECK(t.root_tol == 1e-9);
  CHECK(t.rank_rel_tol == Tolerances{}.rank_rel_tol);
  const Json back = scenario::tolerances_to_json(t);
  CHECK(scenario::tolerances_from_json(back).root_tol == 1e-9);
  CHECK(kind_of([] { scenario::tolerances_from_json(Json{{"nope", 1.0}}); }) == ErrorKind::ValidationError);
}

TEST_CASE("canonical rendering") {
  const Json j = scenario::parse_json(R"({"b": 0.1, "a": [1, 2.5e-300, -0.0], "c": {"y": true, "x": null}})");
  const std::string s = scenario::canonical_dump(j);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(scenario::canonical_dump(scenario::parse_json(s)) == s);
  CHECK(scenario::canonical_dump(Json(std::nan(""))) == "null");
}

TEST_CASE("catalog reports") {
  const auto& names = scenario::example_names();
  CHECK(names.size() == 8);
  for (const auto& name : names) {
    CAPTURE(name);
    const Json sc = scenario::generate_example(name);
    CHECK(sc.at("name") == name);
    CHECK_NOTHROW(scenario::validate(sc));
    const Json report = scenario::run(sc);
    // round trip is bit-exact and runs are deterministic
    const std::string text = scenario::canonical_dump(report, 2);
    CHECK(scenario::canonical_dump(scenario::parse_json(text), 2) == text);
    CHECK(scenario::canonical_dump(scenario::run(sc), 2) == text);
    CHECK_FALSE(scenario::render_table(report).empty());
    for (const auto& r : report.at("results")) {
      const std::string basis = r.at("provenance").at("basis");
      CHECK_FALSE(basis.empty());
    }

    if (name == "disc-sqrt-z") {
      CHECK(result(report, "compare").at("verdict") == "topologically isomorphic");
      CHECK(std::abs(result(report, "norm").at("norm").get<double>() - 2.0) <= 1e-9);
    } else if (name == "example-4-4") {
      const Json& rho = result(report, "cole").at("rho_star");
      CHECK(std::abs(rho.at("ah_norm").get<double>() - 2.0) <= 1e-9);
      CHECK(rho.at("cole_sup_norm").get<double>() < 2.0);
      CHECK(report.at("notes").get<std::string>().find("not checked") != std::string::npos);
    } else if (name == "theorem-3-15") {
      CHECK(result(report, "zero_divisor").at("zero_divisor") == true);
      CHECK(result(report, "tractable").at("tractable") == false);
      CHECK(result(report, "quotient").at("tractable") == true);
      CHECK(report.at("notes").get<std::string>().find("out of scope") != std::string::npos);
    } else if (name == "cole-feinstein-counterexample") {
      const Json& c = result(report, "compare");
      CHECK(c.at("verdict") == "not isomorphic");
      CHECK(c.at("discriminant_zero_divisor") == false);
      CHECK(c.at("boundary_min").get<double>() <= 1e-6);
    } else if (name == "corollary-2-11") {
      CHECK(result(report, "tractable", 0).at("tractable") == false);
      CHECK(result(report, "tractable", 1).at("tractable") == true);
      CHECK(result(report, "characters").at("count") == 3);
    } else if (name == "silov-disc") {
      const Json& s = result(report, "silov");
      CHECK(s.at("interior_kept") == 0);
      CHECK(s.at("is_boundary") == true);
      CHECK(s.at("is_minimal") == true);
    } else if (name == "cole-tower") {
      const Json& t = result(report, "cole_tower");
      CHECK(t.at("projections_compatible") == true);
      CHECK(t.at("max_root_residual").get<double>() <= 1e-8);
    } else if (name == "standard-tower") {
      CHECK(result(report, "tower").at("restrictions_surjective") == true);
    }
  }
}

TEST_CASE("seed override changes only seeded parts") {
  const Json sc = scenario::generate_example("silov-disc");
  scenario::RunOptions opts;
  opts.seed = 99;
  const Json a = scenario::run(sc, opts);
  CHECK(a.at("seed") == 99);
  CHECK(result(a, "silov").at("interior_kept") == 0);
}

TEST_CASE("bundled scenario files match the catalog") {
  for (const auto& name : scenario::example_names()) {
    CAPTURE(name);
    const Json file = scenario::read_json_file(std::string(AHX_SCENARIO_DIR) + "/" + name + ".json");
    CHECK(scenario::canonical_dump(file) == scenario::canonical_dump(scenario::generate_example(name)));
  }
}
