#ifndef TCAT_VALIDATE_HPP
#define TCAT_VALIDATE_HPP

#include "tcat/skeletal_category.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace tcat {

struct Residual {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::string category;
  std::vector<Residual> residuals;
  std::vector<std::string> failures;  ///< hard structural failures
  bool pass = true;

  const Residual* find(const std::string& name) const {
    for (const auto& r : residuals)
      if (r.name == name) return &r;
    return nullptr;
  }
  double value(const std::string& name) const {
    const Residual* r = find(name);
    return r ? r->value : 0.0;
  }
};

namespace detail {

inline Scalar finv(const CategoryData& cat, Label a, Label b, Label c, Label d, Label row, Label col) {
  // (F(a,b,c;d))^{-1}[row, col], row in b(x)c side, col in a(x)b side
  const FMove& m = cat.fmove(a, b, c, d);
  const int r = m.col_index(row), s = m.row_index(col);
  if (r < 0 || s < 0 || !m.invertible) return 0.0;
  return m.inv(r, s);
}

inline double hexagon_residual(const CategoryData& cat, const std::function<Scalar(Label, Label, Label)>& br) {
  double worst = 0.0;
  const int n = cat.n();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e : cat.channels(a, b)) {
            if (!cat.N(e, c, d)) continue;
            for (Label g : cat.channels(c, a)) {
              if (!cat.N(g, b, d)) continue;
              const Scalar lhs = br(e, c, d) * finv(cat, c, a, b, d, e, g);
              Scalar rhs{0.0};
              for (Label f : cat.channels(b, c)) {
                if (!cat.N(a, f, d)) continue;
                rhs += cat.F(a, b, c, d, e, f) * br(b, c, f) * finv(cat, a, c, b, d, f, g) * br(a, c, g);
              }
              worst = std::max(worst, std::abs(lhs - rhs));
            }
          }
  return worst;
}

}  // namespace detail

/// Maximum pentagon residual over all admissible label tuples.
inline double pentagon_residual(const CategoryData& cat) {
  double worst = 0.0;
  const int n = cat.n();
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d)
          for (Label e = 0; e < n; ++e)
            for (Label f : cat.channels(a, b))
              for (Label g : cat.channels(f, c)) {
                if (!cat.N(g, d, e)) continue;
                for (Label l : cat.channels(c, d)) {
                  if (!cat.N(f, l, e)) continue;
                  for (Label k : cat.channels(b, l)) {
                    if (!cat.N(a, k, e)) continue;
                    const Scalar lhs = cat.F(f, c, d, e, g, l) * cat.F(a, b, l, e, f, k);
                    Scalar rhs{0.0};
                    for (Label h : cat.channels(b, c))
                      rhs += cat.F(a, b, c, g, f, h) * cat.F(a, h, d, e, g, k) * cat.F(b, c, d, k, h, l);
                    worst = std::max(worst, std::abs(lhs - rhs));
                  }
                }
              }
  return worst;
}

/// Hexagon for the braiding c (first) and for the reversed braiding c^{-1} (second).
inline std::pair<double, double> hexagon_residuals(const CategoryData& cat) {
  auto fwd = [&](Label x, Label y, Label z) { return cat.R(x, y, z); };
  auto rev = [&](Label x, Label y, Label z) {
    const Scalar r = cat.R(y, x, z);
    return std::abs(r) == 0.0 ? Scalar{0.0} : Scalar{1.0} / r;
  };
  return {detail::hexagon_residual(cat, fwd), detail::hexagon_residual(cat, rev)};
}

inline ValidationReport validate(const CategoryData& cat) {
  ValidationReport rep;
  rep.category = cat.name();
  const int n = cat.n();
  const double eps = cat.tol().eps_structural;
  auto add = [&](std::string name, double v) {
    const bool ok = v < eps;
    rep.residuals.push_back({std::move(name), v, eps, ok});
    rep.pass = rep.pass && ok;
  };
  auto fail = [&](std::string msg) {
    rep.failures.push_back(std::move(msg));
    rep.pass = false;
  };

  for (Label i = 0; i < n; ++i)
    for (Label k = 0; k < n; ++k) {
      const int want = i == k ? 1 : 0;
      if (cat.N(i, 0, k) != want || cat.N(0, i, k) != want)
        fail("unit axiom violated at (" + cat.label_name(i) + ", " + cat.label_name(k) + ")");
    }
  for (Label i = 0; i < n; ++i)
    for (Label j = 0; j < n; ++j)
      if ((cat.N(i, j, 0) == 1) != (j == cat.dual(i)))
        fail("duality violated at (" + cat.label_name(i) + ", " + cat.label_name(j) + ")");
  for (Label i = 0; i < n; ++i)
    for (Label j = 0; j < n; ++j)
      for (Label k = 0; k < n; ++k)
        for (Label l = 0; l < n; ++l) {
          int lhs = 0, rhs = 0;
          for (Label m = 0; m < n; ++m) {
            lhs += cat.N(i, j, m) * cat.N(m, k, l);
            rhs += cat.N(j, k, m) * cat.N(i, m, l);
          }
          if (lhs != rhs) {
            fail("fusion ring not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                 std::to_string(k) + "," + std::to_string(l) + ")");
          }
          if (lhs > 1 && (i == 0 || j == 0 || k == 0)) fail("fusion multiplicity exceeds 1");
        }

  bool fmats_ok = true;
  double worst_cond = 1.0;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d) {
          const FMove& m = cat.fmove(a, b, c, d);
          if (m.rows.size() != m.cols.size()) {
            fmats_ok = false;
            fail("F-matrix (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ";" +
                 std::to_string(d) + ") is not square");
          } else if (!m.invertible) {
            fmats_ok = false;
            fail("F-matrix (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ";" +
                 std::to_string(d) + ") is singular");
          } else {
            worst_cond = std::max(worst_cond, m.condition);
          }
        }
  rep.residuals.push_back({"f_condition_number", worst_cond, INFINITY, fmats_ok});

  // Unit-leg F- and R-symbols must be trivial; the tree calculus relies on it.
  double unit_res = 0.0;
  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b)
      for (Label c = 0; c < n; ++c)
        for (Label d = 0; d < n; ++d) {
          if (a != 0 && b != 0 && c != 0) continue;
          const FMove& m = cat.fmove(a, b, c, d);
          for (std::size_t r = 0; r < m.rows.size(); ++r)
            for (std::size_t s = 0; s < m.cols.size(); ++s)
              unit_res = std::max(unit_res, std::abs(m.mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) - 1.0));
        }
  for (Label a = 0; a < n; ++a)
    unit_res = std::max({unit_res, std::abs(cat.R(0, a, a) - 1.0), std::abs(cat.R(a, 0, a) - 1.0)});
  add("unit_normalization", unit_res);

  add("pentagon", pentagon_residual(cat));
  if (fmats_ok) {
    const auto [h1, h2] = hexagon_residuals(cat);
    add("hexagon", h1);
    add("hexagon_inverse", h2);
  }

  double sph = std::abs(cat.pivotal(0) - 1.0);
  bool dims_ok = fmats_ok;
  if (fmats_ok) {
    for (Label a = 0; a < n; ++a) {
      const Scalar dl = cat.quantum_dim(a), dr = cat.right_dim(a);
      sph = std::max(sph, std::abs(dl - dr));
      if (std::abs(dl) < cat.tol().eps_identity) {
        dims_ok = false;
        fail("quantum dimension of " + cat.label_name(a) + " vanishes");
      }
      sph = std::max(sph, std::abs(dl - cat.quantum_dim(cat.dual(a))));
    }
  }
  add("sphericality", sph);
  if (dims_ok) {
    Scalar omega{0.0};
    for (Label a = 0; a < n; ++a) omega += cat.quantum_dim(a) * cat.quantum_dim(a);
    if (std::abs(omega) < cat.tol().eps_identity) fail("global dimension vanishes");
  }
  return rep;
}

}  // namespace tcat

#endif  // TCAT_VALIDATE_HPP
