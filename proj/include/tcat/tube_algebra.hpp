#ifndef TCAT_TUBE_ALGEBRA_HPP
#define TCAT_TUBE_ALGEBRA_HPP

// Tube algebra realized as End_{Z(C)}(I(0) + ... + I(n-1)), where I(a) = sum_j j a j*
// is the induced center object. Its block decomposition gives the simples of Z(C).

#include "tcat/center_object.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace tcat {

/// Induced center object I(a) = sum_j j a j*; gamma_k routes k around the tube without crossing a.
inline CenterObject induced_object(const CategoryData& cat, Label a) {
  const int n = cat.n();
  std::vector<Summand> summands;
  for (Label j = 0; j < n; ++j) summands.push_back({{j, a, cat.dual(j)}, 1});
  CenterObject z{ObjectExpr(std::move(summands)), {}};
  const ObjectExpr A = ObjectExpr::simple(a);
  for (Label k = 0; k < n; ++k) {
    const ObjectExpr K = ObjectExpr::simple(k);
    Morphism g = Morphism::zero(cat, tensor(K, z.X), tensor(z.X, K));
    const BlockView v(cat, g.source(), g.target());
    for (Label j = 0; j < n; ++j) {
      const ObjectExpr J = ObjectExpr::simple(j), Jd = J.dual(cat);
      for (Label i : cat.channels(k, j)) {
        const ObjectExpr I = ObjectExpr::simple(i), Id = I.dual(cat);
        const CasimirPair cp = hom_basis(cat, ObjectExpr::word({k, j}), i);
        Morphism comp = Morphism::zero(cat, ObjectExpr::word({k, j, a, cat.dual(j)}),
                                       ObjectExpr::word({i, a, cat.dual(i), k}));
        for (std::size_t t = 0; t < cp.basis.size(); ++t) {
          const Morphism beta = compose_all(
              {tensor(cat, Morphism::identity(cat, tensor(Id, K)), cup_cap(cat, J, CupCap::eval_prime)),
               tensor(cat, tensor(cat, Morphism::identity(cat, Id), cp.dual_basis[t]), Morphism::identity(cat, Jd)),
               tensor(cat, cup_cap(cat, I, CupCap::coev_prime), Morphism::identity(cat, Jd))});
          comp += cat.quantum_dim(i) *
                  compose(tensor(cat, Morphism::identity(cat, tensor(I, A)), beta),
                          tensor(cat, cp.basis[t], Morphism::identity(cat, tensor(A, Jd))));
        }
        v.add(g, static_cast<std::size_t>(i), static_cast<std::size_t>(j), comp);
      }
    }
    z.gamma.push_back(std::move(g));
  }
  return z;
}

/// The Z(C)-morphism I(a) -> Y adjoint to f : a -> Y:
/// on the summand j a j* it is (1_Y (x) ev'_j)(beta_j (x) 1_{j*})(1_j (x) f (x) 1_{j*}).
inline Morphism induced_lift(const CategoryData& cat, Label a, const CenterObject& y, const Morphism& f) {
  std::vector<Summand> summands;
  for (Label j = 0; j < cat.n(); ++j) summands.push_back({{j, a, cat.dual(j)}, 1});
  const ObjectExpr src(std::move(summands));
  Morphism out = Morphism::zero(cat, src, y.X);
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j), Jd = J.dual(cat);
    const Morphism part = compose_all(
        {tensor(cat, Morphism::identity(cat, y.X), cup_cap(cat, J, CupCap::eval_prime)),
         tensor(cat, y.gamma[static_cast<std::size_t>(j)], Morphism::identity(cat, Jd)),
         tensor(cat, tensor(cat, Morphism::identity(cat, J), f), Morphism::identity(cat, Jd))});
    detail::embed(cat, out, 0, static_cast<std::size_t>(j), part);
  }
  return out;
}

struct TubeIndex {
  Label source;  ///< a, the summand I(a) the element starts from
  Label loop;    ///< j, the tube label
  Label target;  ///< b
  int channel;   ///< fusion tree of j b j* in sector a
};

struct TubeAlgebra {
  CenterObject regular;               ///< I(0) + ... + I(n-1)
  std::vector<std::size_t> offsets;   ///< slot offset of I(a) inside regular.X
  std::vector<Morphism> basis;        ///< Z(C)-endomorphisms of regular
  std::vector<TubeIndex> index;
  double z_residual = 0.0;            ///< worst Z(C)-morphism residual over the basis
  double unit_residual = 0.0;         ///< distance of the identity from the span of the basis
  double closure_residual = 0.0;      ///< products of basis elements leaving the span
  std::vector<Morphism> central_idempotents;
  std::vector<Morphism> minimal_idempotents;
  std::vector<int> block_sizes;       ///< d with block = M_d
  std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline Morphism polynomial_projector(const Morphism& s, const Morphism& unit, const std::vector<Scalar>& roots, Scalar lambda) {
  Morphism p = unit;
  for (const Scalar mu : roots) {
    if (mu == lambda) continue;
    p = compose(Scalar{1.0} / (lambda - mu) * (s - mu * unit), p);
  }
  return p;
}

/// Distinct eigenvalues of a block-diagonal morphism, clustered at tol * scale; sorted by (re, im).
inline std::vector<Scalar> spectrum(const Morphism& m, double tol) {
  std::vector<Scalar> ev;
  double scale = 1.0;
  for (const auto& b : m.blocks()) {
    if (b.size() == 0) continue;
    Eigen::ComplexEigenSolver<Matrix> es(b);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      ev.push_back(es.eigenvalues()(k));
      scale = std::max(scale, std::abs(ev.back()));
    }
  }
  std::vector<Scalar> clusters;
  std::vector<int> counts;
  for (const Scalar v : ev) {
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size(); ++c)
      if (std::abs(clusters[c] - v) < tol * scale) {
        clusters[c] = (clusters[c] * Scalar(counts[c]) + v) / Scalar(counts[c] + 1);
        ++counts[c];
        placed = true;
        break;
      }
    if (!placed) {
      clusters.push_back(v);
      counts.push_back(1);
    }
  }
  std::sort(clusters.begin(), clusters.end(), [](Scalar x, Scalar y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return clusters;
}

inline Matrix span_matrix(const std::vector<Morphism>& ms) {
  if (ms.empty()) return Matrix(0, 0);
  Matrix B(flatten(ms[0]).size(), static_cast<Eigen::Index>(ms.size()));
  for (std::size_t k = 0; k < ms.size(); ++k) B.col(static_cast<Eigen::Index>(k)) = flatten(ms[k]);
  return B;
}

inline double span_residual(const Eigen::CompleteOrthogonalDecomposition<Matrix>& cod, const Matrix& B, const Vector& v) {
  const Vector c = cod.solve(v);
  return (B * c - v).norm();
}

inline Morphism random_element(const std::vector<Morphism>& basis, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Morphism x = basis[0];
  x *= Scalar{g(rng), g(rng)};
  for (std::size_t k = 1; k < basis.size(); ++k) x += Scalar{g(rng), g(rng)} * basis[k];
  return x;
}

}  // namespace detail

/// Builds the tube algebra and decomposes it into matrix blocks.
/// Deterministic: the random elements come from a fixed-seed generator.
inline TubeAlgebra tube_algebra(const CategoryData& cat, unsigned seed = 20240521u) {
  TubeAlgebra T;
  const int n = cat.n();
  std::vector<CenterObject> parts;
  for (Label a = 0; a < n; ++a) parts.push_back(induced_object(cat, a));
  T.regular = direct_sum(cat, parts);
  std::size_t off = 0;
  for (Label a = 0; a < n; ++a) {
    T.offsets.push_back(off);
    off += parts[static_cast<std::size_t>(a)].X.slot_count();
  }

  for (Label a = 0; a < n; ++a)
    for (Label b = 0; b < n; ++b) {
      const CenterObject& ib = parts[static_cast<std::size_t>(b)];
      const BlockView v(cat, ObjectExpr::simple(a), ib.X);
      int r = 0;
      for (Label j = 0; j < n; ++j) {
        const int d = v.target_layout().size[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
        for (int t = 0; t < d; ++t, ++r) {
          Morphism f = Morphism::zero(cat, ObjectExpr::simple(a), ib.X);
          f.block(a)(r, 0) = 1.0;
          const Morphism lift = induced_lift(cat, a, ib, f);
          T.z_residual = std::max(T.z_residual, center_morphism_residual(cat, parts[static_cast<std::size_t>(a)], ib, lift));
          Morphism e = Morphism::zero(cat, T.regular.X, T.regular.X);
          detail::embed(cat, e, T.offsets[static_cast<std::size_t>(b)], T.offsets[static_cast<std::size_t>(a)], lift);
          T.basis.push_back(std::move(e));
          T.index.push_back({a, j, b, t});
        }
      }
    }

  const Morphism unit = Morphism::identity(cat, T.regular.X);
  const Matrix B = detail::span_matrix(T.basis);
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(B);
  T.unit_residual = detail::span_residual(cod, B, detail::flatten(unit));

  // Center of the algebra: sum_i c_i [b_i, b_k] = 0 for all k.
  const std::size_t m = T.basis.size();
  const Eigen::Index len = B.rows();
  Matrix C(len * static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      const Morphism bik = compose(T.basis[i], T.basis[k]);
      const Morphism bki = compose(T.basis[k], T.basis[i]);
      if (k == i || k + 1 == m)
        T.closure_residual = std::max(T.closure_residual, detail::span_residual(cod, B, detail::flatten(bik)));
      C.block(static_cast<Eigen::Index>(k) * len, static_cast<Eigen::Index>(i), len, 1) = detail::flatten(bik - bki);
    }
  const Matrix centre = detail::null_space(C, 1e-9);
  std::vector<Morphism> zbasis;
  for (Eigen::Index c = 0; c < centre.cols(); ++c) zbasis.push_back(detail::unflatten(unit, B * centre.col(c)));

  std::mt19937 rng(seed);
  const Morphism z = detail::random_element(zbasis, rng);
  const auto zroots = detail::spectrum(z, 1e-6);
  for (const Scalar lambda : zroots) T.central_idempotents.push_back(detail::polynomial_projector(z, unit, zroots, lambda));
  if (T.central_idempotents.size() != zbasis.size())
    throw NumericalError("tube_algebra: found " + std::to_string(T.central_idempotents.size()) +
                         " spectral clusters for a center of dimension " + std::to_string(zbasis.size()));

  for (const Morphism& e : T.central_idempotents) {
    // Block size d: dim(e A) = d^2.
    std::vector<Morphism> ea;
    for (const auto& b : T.basis) ea.push_back(compose(e, b));
    const Matrix EA = detail::span_matrix(ea);
    const Eigen::Index r = detail::range_basis(EA, 1e-9).cols();
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(r))));
    if (d * d != r) throw NumericalError("tube_algebra: block of dimension " + std::to_string(r) + " is not a matrix algebra");
    T.block_sizes.push_back(d);
    if (d == 1) {
      T.minimal_idempotents.push_back(e);
      continue;
    }
    const Morphism x = detail::random_element(T.basis, rng);
    const double shift = 10.0 * (1.0 + spectral_norm(x));
    const Morphism s = compose(compose(e, x), e) + shift * e;
    const auto roots = detail::spectrum(s, 1e-6);
    Scalar best = roots.front();
    for (const Scalar v : roots)
      if (v.real() > best.real()) best = v;
    Morphism p = compose(e, detail::polynomial_projector(s, unit, roots, best));
    T.minimal_idempotents.push_back(std::move(p));
  }
  return T;
}

/// Representative simple center objects, one per block, in a deterministic order.
inline std::vector<CenterObject> center_simples(const CategoryData& cat, const TubeAlgebra& T) {
  struct Item {
    std::vector<int> ranks;
    std::vector<std::pair<double, double>> chi;
    CenterObject obj;
  };
  std::vector<Item> items;
  for (const auto& p : T.minimal_idempotents) {
    auto [obj, split] = center_image(cat, T.regular, p);
    Item it{split.ranks, {}, std::move(obj)};
    for (Label j = 0; j < cat.n(); ++j) {
      const ObjectExpr J = ObjectExpr::simple(j);
      const Scalar c = sector_trace(cat, compose(braiding(cat, it.obj.X, J), it.obj.gamma[static_cast<std::size_t>(j)]));
      it.chi.push_back({std::round(c.real() * 1e6) / 1e6, std::round(c.imag() * 1e6) / 1e6});
    }
    items.push_back(std::move(it));
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    const int da = std::accumulate(a.ranks.begin(), a.ranks.end(), 0), db = std::accumulate(b.ranks.begin(), b.ranks.end(), 0);
    if (da != db) return da < db;
    if (a.ranks != b.ranks) return a.ranks > b.ranks;
    return a.chi < b.chi;
  });
  std::vector<CenterObject> out;
  for (auto& it : items) out.push_back(std::move(it.obj));
  return out;
}

inline std::vector<CenterObject> center_simples(const CategoryData& cat) { return center_simples(cat, tube_algebra(cat)); }

}  // namespace tcat

#endif  // TCAT_TUBE_ALGEBRA_HPP
