#include <catch_amalgamated.hpp>

#include "tcat/catalog.hpp"
#include "tcat/modularity.hpp"

#include <cmath>

using namespace tcat;

namespace {

const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

// s_ab from twists and dimensions: sum_c N_ab^c d_c theta_c / (theta_a theta_b).
Matrix twist_formula(const CategoryData& cat) {
  Matrix s = Matrix::Zero(cat.n(), cat.n());
  for (Label a = 0; a < cat.n(); ++a)
    for (Label b = 0; b < cat.n(); ++b)
      for (Label c : cat.channels(a, b))
        s(a, b) += static_cast<double>(cat.N(a, b, c)) * cat.quantum_dim(c) * cat.twist(c) / (cat.twist(a) * cat.twist(b));
  return s;
}

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("S-matrices of small catalog entries") {
  const SMatrix t = s_matrix(catalog("trivial"));
  CHECK((t.entries - from_rows({{1}})).norm() < 1e-14);
  CHECK(t.rank == 1);

  const SMatrix z2 = s_matrix(catalog("vec_z2_sym"));
  CHECK((z2.entries - from_rows({{1, 1}, {1, 1}})).norm() < 1e-12);
  CHECK(z2.rank == 1);

  const SMatrix sem = s_matrix(catalog("semion"));
  CHECK((sem.entries - from_rows({{1, 1}, {1, -1}})).norm() < 1e-12);
  CHECK(sem.rank == 2);

  const SMatrix fib = s_matrix(catalog("fibonacci"));
  CHECK((fib.entries - from_rows({{1, phi}, {phi, -1}})).norm() < 1e-12);
}

TEST_CASE("S-matrix agrees with the twist formula") {
  for (const auto& name : catalog_names()) {
    const CategoryData cat = catalog(name);
    INFO(name);
    CHECK((s_matrix(cat).entries - twist_formula(cat)).norm() < 1e-9);
  }
}

TEST_CASE("S-matrix entries are traces of double braidings") {
  const CategoryData cat = catalog("ising");
  const SMatrix s = s_matrix(cat);
  for (Label a = 0; a < cat.n(); ++a)
    for (Label b = 0; b < cat.n(); ++b) {
      const ObjectExpr A = ObjectExpr::simple(a), B = ObjectExpr::simple(b);
      const Scalar tr = quantum_trace(cat, compose(braiding(cat, B, A), braiding(cat, A, B)));
      CHECK(std::abs(tr - s.entries(a, b)) < 1e-12);
      CHECK(std::abs(s.entries(a, b) - s.entries(b, a)) < 1e-12);
    }
}

TEST_CASE("modularity verdicts") {
  CHECK(is_modular(catalog("trivial")).modular);
  const ModularityVerdict fib = is_modular(catalog("fibonacci"));
  CHECK(fib.modular);
  // determinant of {{1, phi}, {phi, -1}}
  CHECK(std::abs(fib.abs_det - std::abs(-1.0 - phi * phi)) < 1e-12);
  const ModularityVerdict z2 = is_modular(catalog("vec_z2_sym"));
  CHECK_FALSE(z2.modular);
  CHECK(z2.rank == 1);
  CHECK(is_modular(catalog("semion")).modular);
  CHECK(is_modular(catalog("ising")).modular);
  CHECK(is_modular(catalog("vec_z3_modular")).modular);
  CHECK_FALSE(is_modular(catalog("svec")).modular);
}

TEST_CASE("Muger centers") {
  CHECK(muger_center(catalog("trivial")).transparent == std::vector<Label>{0});

  const MugerReport fib = muger_center(catalog("fibonacci"));
  CHECK(fib.transparent == std::vector<Label>{0});
  CHECK(fib.monodromy_defects[1] > 0.5);
  CHECK(fib.consistent);

  const MugerReport z2 = muger_center(catalog("vec_z2_sym"));
  CHECK(z2.transparent == std::vector<Label>{0, 1});
  CHECK(z2.consistent);
}

TEST_CASE("modular iff trivial Muger center, across the catalog") {
  for (const auto& name : catalog_names()) {
    const CategoryData cat = catalog(name);
    const MugerReport m = muger_center(cat);
    INFO(name);
    CHECK(m.consistent);
    CHECK(is_modular(cat).modular == (m.transparent.size() == 1));
  }
}

TEST_CASE("S-matrix squared is proportional to charge conjugation for modular entries") {
  for (const char* name : {"fibonacci", "ising", "semion", "vec_z3_modular"}) {
    const CategoryData cat = catalog(name);
    const Matrix s = s_matrix(cat).entries;
    Matrix c = Matrix::Zero(cat.n(), cat.n());
    for (Label a = 0; a < cat.n(); ++a) c(a, cat.dual(a)) = 1.0;
    INFO(name);
    CHECK((s * s - cat.global_dim() * c).norm() < 1e-9);
  }
}
