#ifndef TCAT_TESTS_SUPPORT_HPP
#define TCAT_TESTS_SUPPORT_HPP

// Helpers shared by the unit tests and the acceptance binary.

#include "tcat/diagram.hpp"

#include <random>

namespace tcat::testing {

inline Morphism random_morphism(const CategoryData& cat, const ObjectExpr& src, const ObjectExpr& tgt, std::mt19937& rng) {
  std::normal_distribution<double> nd;
  Morphism f = Morphism::zero(cat, src, tgt);
  for (Label i = 0; i < cat.n(); ++i) {
    Matrix& b = f.block(i);
    for (Eigen::Index r = 0; r < b.rows(); ++r)
      for (Eigen::Index c = 0; c < b.cols(); ++c) b(r, c) = Scalar(nd(rng), nd(rng));
  }
  return f;
}

/// (1_Y ev_Y 1_X)(1_{YY*} c_{X,Y})(1_Y c_{X,Y*} 1_Y)(c_{X,Y} 1_{Y*Y})(1_X coev_Y 1_Y) : X Y -> Y X.
inline Morphism pass_through_bend(const CategoryData& cat, const ObjectExpr& x, const ObjectExpr& y) {
  const ObjectExpr yd = y.dual(cat);
  auto id = [&](const ObjectExpr& o) { return Morphism::identity(cat, o); };
  auto t = [&](const Morphism& a, const Morphism& b) { return tensor(cat, a, b); };
  return compose_all({t(t(id(y), cup_cap(cat, y, CupCap::eval)), id(x)),
                      t(id(tensor(y, yd)), braiding(cat, x, y)),
                      t(t(id(y), braiding(cat, x, yd)), id(y)),
                      t(braiding(cat, x, y), id(tensor(yd, y))),
                      t(t(id(x), cup_cap(cat, y, CupCap::coev)), id(y))});
}

inline double regression_residual(const CategoryData& cat) {
  double worst = 0.0;
  for (Label x = 0; x < cat.n(); ++x)
    for (Label y = 0; y < cat.n(); ++y) {
      const ObjectExpr X = ObjectExpr::simple(x), Y = ObjectExpr::simple(y);
      worst = std::max(worst, distance(pass_through_bend(cat, X, Y), braiding(cat, X, Y)));
    }
  return worst;
}

/// Omega_{W'} o f - f o Omega_W for a random f : W -> W'.
inline double coupon_slide_residual(const CategoryData& cat, const ObjectExpr& w, const ObjectExpr& w2, std::mt19937& rng) {
  const Morphism f = random_morphism(cat, w, w2, rng);
  return distance(compose(omega_loop(cat, w2), f), compose(f, omega_loop(cat, w)));
}

/// max_k || sum_j dim(j) L_{k j}(W) - dim(k) Omega_W ||.
inline double handle_slide_residual(const CategoryData& cat, const ObjectExpr& w) {
  const Morphism omega = omega_loop(cat, w);
  double worst = 0.0;
  for (Label k = 0; k < cat.n(); ++k) {
    const ObjectExpr K = ObjectExpr::simple(k);
    Morphism acc = Morphism::zero(cat, w, w);
    for (Label j = 0; j < cat.n(); ++j) acc += cat.quantum_dim(j) * colored_loop(cat, tensor(K, ObjectExpr::simple(j)), w);
    worst = std::max(worst, distance(acc, cat.quantum_dim(k) * omega));
  }
  return worst;
}

/// Label with the largest quantum dimension (last one on ties).
inline Label heaviest(const CategoryData& cat) {
  Label best = cat.n() - 1;
  for (Label a = cat.n() - 1; a >= 0; --a)
    if (std::abs(cat.quantum_dim(a)) > std::abs(cat.quantum_dim(best)) + 1e-9) best = a;
  return best;
}

/// Words of length 1..n.
inline std::vector<ObjectExpr> words_up_to(const CategoryData& cat, int n) {
  std::vector<ObjectExpr> out;
  std::vector<Word> layer{{}};
  for (int len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (Label a = 0; a < cat.n(); ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    for (const auto& w : next) out.push_back(ObjectExpr::word(w));
    layer = std::move(next);
  }
  return out;
}

}  // namespace tcat::testing

#endif
