#include <catch_amalgamated.hpp>

#include "tcat/catalog.hpp"
#include "tcat/category_io.hpp"
#include "tcat/validate.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace tcat;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

const char* trivial_doc = R"({
  "name": "trivial", "labels": ["1"], "dual": [0], "fusion": [[0, 0, 0]],
  "F": [{"a": 0, "b": 0, "c": 0, "d": 0, "e": 0, "f": 0, "re": 1, "im": 0}],
  "R": [{"a": 0, "b": 0, "c": 0, "re": 1, "im": 0}],
  "pivotal": [{"i": 0, "re": 1, "im": 0}]
})";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("loading a trivial document gives one label") {
  const CategoryData cat = load_category(trivial_doc);
  CHECK(cat.n() == 1);
  CHECK(cat.name() == "trivial");
}

TEST_CASE("serialize and load round-trip every catalog entry exactly") {
  for (const auto& name : catalog_names()) {
    const CategoryData cat = catalog(name);
    const std::string text = serialize(cat);
    const CategoryData back = load_category(text);
    INFO(name);
    CHECK(back.n() == cat.n());
    CHECK(serialize(back) == text);
    for (Label a = 0; a < cat.n(); ++a)
      for (Label b = 0; b < cat.n(); ++b)
        for (Label c : cat.channels(a, b)) CHECK(back.R(a, b, c) == cat.R(a, b, c));
  }
}

TEST_CASE("fibonacci round trip keeps labels 1 and tau") {
  const CategoryData back = load_category(serialize(catalog("fibonacci")));
  REQUIRE(back.n() == 2);
  CHECK(back.label_name(0) == "1");
}

TEST_CASE("a unit that is not self-dual is rejected") {
  const std::string doc = R"({"name": "bad", "labels": ["1", "g"], "dual": [1, 0],
    "fusion": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]], "F": [], "R": [], "pivotal": []})";
  CHECK_THROWS_MATCHES(load_category(doc), ParseError, Catch::Matchers::MessageMatches(ContainsSubstring("unit must be self-dual")));
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(load_category("{not json"), ParseError);
  CHECK_THROWS_AS(load_category(R"({"name": "x"})"), ParseError);
  CHECK_THROWS_AS(load_category(read_file(TCAT_TEST_DATA "/malformed.json")), ParseError);
}

TEST_CASE("every catalog entry validates") {
  for (const auto& name : catalog_names()) {
    const ValidationReport rep = validate(catalog(name));
    INFO(name);
    CHECK(rep.pass);
    CHECK(rep.value("pentagon") < 1e-10);
    CHECK(rep.value("hexagon") < 1e-10);
    CHECK(rep.value("hexagon_inverse") < 1e-10);
    CHECK(rep.value("sphericality") < 1e-10);
  }
}

TEST_CASE("trivial category residuals are exactly zero") {
  const ValidationReport rep = validate(catalog("trivial"));
  CHECK(rep.pass);
  for (const char* n : {"pentagon", "hexagon", "hexagon_inverse", "sphericality", "unit_normalization"})
    CHECK(rep.value(n) == 0.0);
}

TEST_CASE("perturbing one fibonacci F-symbol breaks the pentagon") {
  const CategoryData cat = load_category(read_file(TCAT_TEST_DATA "/fibonacci_perturbed.json"));
  const ValidationReport rep = validate(cat);
  CHECK_FALSE(rep.pass);
  CHECK(rep.value("pentagon") >= 1e-4);

  // same perturbation applied in memory
  CategoryTables t = catalog("fibonacci").tables();
  t.f[{1, 1, 1, 1, 1, 1}] += 1e-3;
  CHECK(validate(CategoryData(t)).value("pentagon") >= 1e-4);
}

TEST_CASE("quantum dimensions") {
  CHECK_THAT(std::abs(catalog("ising").quantum_dim(0) - 1.0), WithinAbs(0.0, 1e-14));
  const Scalar d = catalog("fibonacci").quantum_dim(1);
  // positive root of d^2 = d + 1
  CHECK_THAT(std::abs(d * d - d - 1.0), WithinAbs(0.0, 1e-12));
  CHECK(d.real() > 0);
  CHECK_THAT(d.real(), WithinAbs(1.6180340, 1e-7));
  CHECK_THAT(std::abs(catalog("vec_z2_sym").quantum_dim(1) - 1.0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(catalog("ising").quantum_dim(1) - std::sqrt(2.0)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("global dimensions") {
  CHECK_THAT(std::abs(catalog("trivial").global_dim() - 1.0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(catalog("fibonacci").global_dim() - (1.0 + phi * phi)), WithinAbs(0.0, 1e-12));
  CHECK_THAT(catalog("fibonacci").global_dim().real(), WithinAbs(3.6180340, 1e-7));
  CHECK_THAT(std::abs(catalog("ising").global_dim() - 4.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("catalog entries") {
  CHECK(catalog("trivial").n() == 1);
  const CategoryData semion = catalog("semion");
  CHECK(semion.n() == 2);
  CHECK_THAT(std::abs(semion.R(1, 1, 0) - Scalar(0.0, 1.0)), WithinAbs(0.0, 1e-14));
  const CategoryData z2 = catalog("vec_z2_sym");
  CHECK(z2.n() == 2);
  for (Label a = 0; a < 2; ++a)
    for (Label b = 0; b < 2; ++b)
      for (Label c : z2.channels(a, b)) CHECK(z2.R(a, b, c) == Scalar(1.0));
  CHECK_THROWS_MATCHES(catalog("nope"), LookupError, Catch::Matchers::MessageMatches(ContainsSubstring("fibonacci")));
}

TEST_CASE("tolerance overrides are checked") {
  const CategoryData fib = catalog("fibonacci");
  CHECK(fib.with_tolerances({1e-12, 1e-11}).tol().eps_identity == 1e-11);
  CHECK_THROWS_AS(fib.with_tolerances({-1.0, 1e-9}), InvalidCategory);
  CHECK_THROWS_AS(fib.with_tolerances({1e-8, 1e-9}), InvalidCategory);
}

TEST_CASE("missing F-symbols are reported") {
  CategoryTables t = catalog("fibonacci").tables();
  t.f.erase({1, 1, 1, 1, 0, 0});
  const ValidationReport rep = [&] {
    try {
      return validate(CategoryData(t));
    } catch (const CategoryError&) {
      ValidationReport r;
      r.pass = false;
      return r;
    }
  }();
  CHECK_FALSE(rep.pass);
}
