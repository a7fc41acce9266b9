#ifndef TCAT_MODULARITY_HPP
#define TCAT_MODULARITY_HPP

// S-matrix, modularity verdict and the Muger center of transparent simples.

#include "tcat/diagram.hpp"

#include <string>
#include <vector>

namespace tcat {

struct SMatrix {
  Matrix entries;
  int rank = 0;
  Scalar det{0.0};
  std::vector<double> singular_values;
};

/// Double braiding c_{Y,X} c_{X,Y} on X (x) Y.
inline Morphism monodromy(const CategoryData& cat, const ObjectExpr& x, const ObjectExpr& y) {
  return compose(braiding(cat, y, x), braiding(cat, x, y));
}

/// s_XY = Tr(c_{Y,X} c_{X,Y}); rank by singular values above eps_identity * ||S||.
inline SMatrix s_matrix(const CategoryData& cat) {
  const int n = cat.n();
  SMatrix s;
  s.entries = Matrix::Zero(n, n);
  for (Label x = 0; x < n; ++x)
    for (Label y = 0; y < n; ++y)
      s.entries(x, y) = quantum_trace(cat, monodromy(cat, ObjectExpr::simple(x), ObjectExpr::simple(y)));
  Eigen::JacobiSVD<Matrix> svd(s.entries);
  const auto& sv = svd.singularValues();
  const double cut = cat.tol().eps_identity * sv(0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    s.singular_values.push_back(sv(k));
    if (sv(k) > cut) ++s.rank;
  }
  s.det = s.entries.determinant();
  return s;
}

struct ModularityVerdict {
  bool modular = false;
  int rank = 0;
  double abs_det = 0.0;
};

inline ModularityVerdict is_modular(const CategoryData& cat) {
  const SMatrix s = s_matrix(cat);
  return {s.rank == cat.n(), s.rank, std::abs(s.det)};
}

struct MugerReport {
  std::vector<Label> transparent;
  std::vector<double> monodromy_defects;  ///< per label: max_Y ||c_{Y,X} c_{X,Y} - id||
  bool consistent = true;                 ///< transparency agrees with s_XY = dim X dim Y
};

inline MugerReport muger_center(const CategoryData& cat) {
  MugerReport rep;
  const double eps = cat.tol().eps_identity;
  const SMatrix s = s_matrix(cat);
  for (Label x = 0; x < cat.n(); ++x) {
    double worst = 0.0, s_dev = 0.0;
    for (Label y = 0; y < cat.n(); ++y) {
      const ObjectExpr X = ObjectExpr::simple(x), Y = ObjectExpr::simple(y);
      worst = std::max(worst, distance(monodromy(cat, X, Y), Morphism::identity(cat, tensor(X, Y))));
      s_dev = std::max(s_dev, std::abs(s.entries(x, y) - cat.quantum_dim(x) * cat.quantum_dim(y)));
    }
    rep.monodromy_defects.push_back(worst);
    const bool transparent = worst < eps;
    if (transparent) rep.transparent.push_back(x);
    if (transparent != (s_dev < eps)) rep.consistent = false;
  }
  return rep;
}

}  // namespace tcat

#endif  // TCAT_MODULARITY_HPP
