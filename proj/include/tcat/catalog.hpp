#ifndef TCAT_CATALOG_HPP
#define TCAT_CATALOG_HPP

// Built-in premodular categories, generated in code.

#include "tcat/skeletal_category.hpp"

#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace tcat {

namespace detail {

/// Fills every admissible F-symbol with 1 and every admissible R-symbol with 1;
/// callers then overwrite the nontrivial entries.
inline CategoryTables trivial_gauge_tables(std::string name, std::vector<std::string> labels,
                                           std::vector<Label> dual,
                                           const std::function<bool(Label, Label, Label)>& fuses) {
  CategoryTables t;
  t.name = std::move(name);
  t.labels = std::move(labels);
  t.dual = std::move(dual);
  const int n = static_cast<int>(t.labels.size());
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (fuses(a, b, c)) t.fusion.push_back({a, b, c});
  auto N = [&](Label a, Label b, Label c) { return fuses(a, b, c); };
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label f = 0; f < n; ++f)
              if (N(a, b, e) && N(e, c, d) && N(b, c, f) && N(a, f, d)) t.f[{a, b, c, d, e, f}] = 1.0;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        if (N(a, b, c)) t.r[{a, b, c}] = 1.0;
  for (Label a = 0; a < n; ++a) t.pivotal[a] = 1.0;
  return t;
}

inline Scalar phase(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

inline CategoryTables trivial_tables() {
  return trivial_gauge_tables("trivial", {"1"}, {0}, [](Label a, Label b, Label c) {
    return a == 0 && b == 0 && c == 0;
  });
}

// Z/m grading with trivial associator; the braiding is supplied by the caller.
inline CategoryTables cyclic_tables(std::string name, int m, std::vector<std::string> labels) {
  std::vector<Label> dual;
  for (Label a = 0; a < m; ++a) dual.push_back((m - a) % m);
  return trivial_gauge_tables(std::move(name), std::move(labels), std::move(dual),
                              [m](Label a, Label b, Label c) { return (a + b) % m == c; });
}

inline CategoryTables fibonacci_tables() {
  // 1 = 0, tau = 1; tau x tau = 1 + tau
  auto t = trivial_gauge_tables("fibonacci", {"1", "tau"}, {0, 1}, [](Label a, Label b, Label c) {
    if (a == 0) return b == c;
    if (b == 0) return a == c;
    return true;
  });
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  t.f[{1, 1, 1, 1, 0, 0}] = 1.0 / phi;
  t.f[{1, 1, 1, 1, 0, 1}] = 1.0 / std::sqrt(phi);
  t.f[{1, 1, 1, 1, 1, 0}] = 1.0 / std::sqrt(phi);
  t.f[{1, 1, 1, 1, 1, 1}] = -1.0 / phi;
  t.r[{1, 1, 0}] = phase(-2.0 / 5.0);
  t.r[{1, 1, 1}] = phase(3.0 / 10.0);
  return t;
}

inline CategoryTables ising_tables() {
  // 1 = 0, sigma = 1, psi = 2
  auto fuses = [](Label a, Label b, Label c) {
    if (a == 0) return b == c;
    if (b == 0) return a == c;
    if (a == 1 && b == 1) return c == 0 || c == 2;
    if (a == 2 && b == 2) return c == 0;
    return c == 1;  // sigma psi, psi sigma
  };
  auto t = trivial_gauge_tables("ising", {"1", "sigma", "psi"}, {0, 1, 2}, fuses);
  const double s = 1.0 / std::sqrt(2.0);
  t.f[{1, 1, 1, 1, 0, 0}] = s;
  t.f[{1, 1, 1, 1, 0, 2}] = s;
  t.f[{1, 1, 1, 1, 2, 0}] = s;
  t.f[{1, 1, 1, 1, 2, 2}] = -s;
  t.f[{2, 1, 2, 1, 1, 1}] = -1.0;
  t.f[{1, 2, 1, 2, 1, 1}] = -1.0;
  t.r[{1, 1, 0}] = phase(-1.0 / 16.0);
  t.r[{1, 1, 2}] = phase(3.0 / 16.0);
  t.r[{1, 2, 1}] = Scalar{0.0, -1.0};
  t.r[{2, 1, 1}] = Scalar{0.0, -1.0};
  t.r[{2, 2, 0}] = -1.0;
  return t;
}

inline CategoryTables semion_tables() {
  auto t = cyclic_tables("semion", 2, {"1", "s"});
  t.f[{1, 1, 1, 1, 0, 0}] = -1.0;
  t.r[{1, 1, 0}] = Scalar{0.0, 1.0};
  t.pivotal[1] = -1.0;
  return t;
}

inline CategoryTables vec_z2_sym_tables() { return cyclic_tables("vec_z2_sym", 2, {"1", "g"}); }

inline CategoryTables svec_tables() {
  auto t = cyclic_tables("svec", 2, {"1", "f"});
  t.r[{1, 1, 0}] = -1.0;
  return t;
}

inline CategoryTables vec_z3_modular_tables() {
  auto t = cyclic_tables("vec_z3_modular", 3, {"1", "w", "w2"});
  for (Label a = 0; a < 3; ++a)
    for (Label b = 0; b < 3; ++b) t.r[{a, b, (a + b) % 3}] = phase(static_cast<double>(a * b) / 3.0);
  return t;
}

struct CatalogEntry {
  const char* name;
  CategoryTables (*make)();
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"trivial", &trivial_tables},       {"fibonacci", &fibonacci_tables},
      {"ising", &ising_tables},           {"semion", &semion_tables},
      {"vec_z2_sym", &vec_z2_sym_tables}, {"vec_z3_modular", &vec_z3_modular_tables},
      {"svec", &svec_tables},
  };
  return entries;
}

}  // namespace detail

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : detail::catalog_entries()) names.emplace_back(e.name);
  return names;
}

inline CategoryData catalog(const std::string& name) {
  for (const auto& e : detail::catalog_entries())
    if (name == e.name) return CategoryData(e.make());
  std::string msg = "unknown category '" + name + "'; available:";
  for (const auto& n : catalog_names()) msg += " " + n;
  throw LookupError(msg);
}

}  // namespace tcat

#endif  // TCAT_CATALOG_HPP
