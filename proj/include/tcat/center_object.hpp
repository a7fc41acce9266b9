#ifndef TCAT_CENTER_OBJECT_HPP
#define TCAT_CENTER_OBJECT_HPP

// Objects (X, gamma) of the Drinfeld center, their verification, the
// tautological functor from C |x| C^bop, and Hom spaces between center objects.

#include "tcat/deligne.hpp"
#include "tcat/diagram.hpp"

#include <string>
#include <vector>

namespace tcat {

/// gamma[j] : j (x) X -> X (x) j for every simple j.
struct CenterObject {
  ObjectExpr X;
  std::vector<Morphism> gamma;
};

struct CenterReport {
  double unit = 0.0;          ///< ||gamma_1 - id||
  double tensoriality = 0.0;  ///< max over j, k, l of the fusion-vertex compatibility residual
  double naturality = 0.0;    ///< commutation of gamma_{jk} with the projectors onto l in j (x) k
  double condition = 1.0;     ///< worst condition number over the gamma blocks
  bool pass = true;
};

namespace detail {

/// Fusion vertex l -> j k (iota) and its splitting j k -> l (pi) with pi iota = 1.
inline Morphism vertex_in(const CategoryData& cat, Label j, Label k, Label l) {
  Morphism m = Morphism::zero(cat, ObjectExpr::simple(l), ObjectExpr::word({j, k}));
  m.block(l)(0, 0) = 1.0;
  return m;
}
inline Morphism vertex_out(const CategoryData& cat, Label j, Label k, Label l) {
  Morphism m = Morphism::zero(cat, ObjectExpr::word({j, k}), ObjectExpr::simple(l));
  m.block(l)(0, 0) = 1.0;
  return m;
}

/// (gamma_j (x) 1_k)(1_j (x) gamma_k) : j k X -> X j k.
inline Morphism gamma_pair(const CategoryData& cat, const CenterObject& z, Label j, Label k) {
  const ObjectExpr J = ObjectExpr::simple(j), K = ObjectExpr::simple(k);
  return compose(tensor(cat, z.gamma[static_cast<std::size_t>(j)], Morphism::identity(cat, K)),
                 tensor(cat, Morphism::identity(cat, J), z.gamma[static_cast<std::size_t>(k)]));
}

inline double worst_condition(const Morphism& m) {
  double worst = 1.0;
  for (const auto& b : m.blocks()) {
    if (b.size() == 0) continue;
    if (b.rows() != b.cols()) return INFINITY;
    Eigen::JacobiSVD<Matrix> svd(b);
    const auto& s = svd.singularValues();
    const double lo = s(s.size() - 1);
    worst = std::max(worst, lo > 0.0 ? s(0) / lo : INFINITY);
  }
  return worst;
}

}  // namespace detail

inline CenterReport verify_center_object(const CategoryData& cat, const CenterObject& z) {
  CenterReport rep;
  const int n = cat.n();
  if (static_cast<int>(z.gamma.size()) != n) {
    rep.pass = false;
    rep.unit = rep.tensoriality = INFINITY;
    return rep;
  }
  rep.unit = distance(z.gamma[0], braiding(cat, ObjectExpr::simple(0), z.X));
  for (Label j = 0; j < n; ++j) rep.condition = std::max(rep.condition, detail::worst_condition(z.gamma[static_cast<std::size_t>(j)]));
  for (Label j = 0; j < n; ++j)
    for (Label k = 0; k < n; ++k) {
      const Morphism pair = detail::gamma_pair(cat, z, j, k);
      for (Label l : cat.channels(j, k)) {
        const Morphism in = detail::vertex_in(cat, j, k, l), out = detail::vertex_out(cat, j, k, l);
        const Morphism lhs = compose(pair, tensor(cat, in, Morphism::identity(cat, z.X)));
        const Morphism rhs = compose(tensor(cat, Morphism::identity(cat, z.X), in), z.gamma[static_cast<std::size_t>(l)]);
        rep.tensoriality = std::max(rep.tensoriality, distance(lhs, rhs));
        const Morphism proj = compose(in, out);
        const Morphism a = compose(pair, tensor(cat, proj, Morphism::identity(cat, z.X)));
        const Morphism b = compose(tensor(cat, Morphism::identity(cat, z.X), proj), pair);
        rep.naturality = std::max(rep.naturality, distance(a, b));
      }
    }
  const double eps = cat.tol().eps_identity;
  rep.pass = rep.unit < eps && rep.tensoriality < eps && rep.naturality < eps && std::isfinite(rep.condition);
  return rep;
}

/// Inverse of every gamma_j, block by block.
inline std::vector<Morphism> inverse_gamma(const CenterObject& z) {
  std::vector<Morphism> out;
  for (const auto& g : z.gamma) {
    std::vector<Matrix> blocks;
    for (const auto& b : g.blocks()) blocks.push_back(b.size() ? Matrix(b.inverse()) : b);
    out.emplace_back(g.target(), g.source(), std::move(blocks));
  }
  return out;
}

// ---- tautological functor ----------------------------------------------

/// F(X |x| Y) = (X Y, (1_X (x) c^{-1}_{Y,j})(c_{j,X} (x) 1_Y)).
inline CenterObject functor_F(const CategoryData& cat, const ObjectExpr& x, const ObjectExpr& y) {
  CenterObject z{tensor(x, y), {}};
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    z.gamma.push_back(compose(tensor(cat, Morphism::identity(cat, x), braiding(cat, J, y, true)),
                              tensor(cat, braiding(cat, J, x), Morphism::identity(cat, y))));
  }
  return z;
}

namespace detail {

/// Appends the slot blocks of `small` into `big` at the given slot offsets.
inline void embed(const CategoryData& cat, Morphism& big, std::size_t tgt_off, std::size_t src_off, const Morphism& small) {
  const BlockView vb(cat, big.source(), big.target()), vs(cat, small.source(), small.target());
  for (std::size_t p2 = 0; p2 < small.target().slot_count(); ++p2)
    for (std::size_t p = 0; p < small.source().slot_count(); ++p)
      vb.add(big, tgt_off + p2, src_off + p, vs.get(small, p2, p));
}

inline Morphism extract(const CategoryData& cat, const Morphism& big, const ObjectExpr& src, const ObjectExpr& tgt,
                        std::size_t tgt_off, std::size_t src_off) {
  Morphism out = Morphism::zero(cat, src, tgt);
  const BlockView vb(cat, big.source(), big.target()), vo(cat, src, tgt);
  for (std::size_t p2 = 0; p2 < tgt.slot_count(); ++p2)
    for (std::size_t p = 0; p < src.slot_count(); ++p) vo.add(out, p2, p, vb.get(big, tgt_off + p2, src_off + p));
  return out;
}

}  // namespace detail

/// Direct sum of center objects, summands in order.
inline CenterObject direct_sum(const CategoryData& cat, const std::vector<CenterObject>& parts) {
  CenterObject z;
  for (const auto& p : parts) z.X = direct_sum(z.X, p.X);
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    Morphism g = Morphism::zero(cat, tensor(J, z.X), tensor(z.X, J));
    std::size_t off = 0;
    for (const auto& p : parts) {
      detail::embed(cat, g, off, off, p.gamma[static_cast<std::size_t>(j)]);
      off += p.X.slot_count();
    }
    z.gamma.push_back(std::move(g));
  }
  return z;
}

/// F on a general Deligne object: direct sum of F on its terms.
inline CenterObject functor_F(const CategoryData& cat, const DeligneObject& x) {
  std::vector<CenterObject> parts;
  for (const auto& t : x.terms()) parts.push_back(functor_F(cat, t.left, t.right));
  return direct_sum(cat, parts);
}

/// F on morphisms: the block of m in sector pair (a, b) is expanded over elementary
/// sector morphisms E_a (x) E_b, each sent to their tensor product.
inline Morphism functor_F(const CategoryData& cat, const DeligneMorphism& m) {
  const auto& S = m.source().terms();
  const auto& T = m.target().terms();
  CenterObject zs = functor_F(cat, m.source()), zt = functor_F(cat, m.target());
  Morphism out = Morphism::zero(cat, zs.X, zt.X);
  std::size_t toff = 0;
  for (std::size_t u = 0; u < T.size(); ++u) {
    std::size_t soff = 0;
    for (std::size_t s = 0; s < S.size(); ++s) {
      const ObjectExpr src = tensor(S[s].left, S[s].right), tgt = tensor(T[u].left, T[u].right);
      Morphism part = Morphism::zero(cat, src, tgt);
      for (Label a = 0; a < cat.n(); ++a) {
        const int ra = sector_dim(cat, T[u].left, a), ca = sector_dim(cat, S[s].left, a);
        for (Label b = 0; b < cat.n(); ++b) {
          const int rb = sector_dim(cat, T[u].right, b), cb = sector_dim(cat, S[s].right, b);
          if (!ra || !ca || !rb || !cb) continue;
          const int r0 = detail::term_offsets(cat, m.target(), a, b)[u];
          const int c0 = detail::term_offsets(cat, m.source(), a, b)[s];
          const Matrix blk = m.block(a, b).block(r0, c0, ra * rb, ca * cb);
          for (int i1 = 0; i1 < ra; ++i1)
            for (int j1 = 0; j1 < ca; ++j1) {
              const Matrix sub = blk.block(i1 * rb, j1 * cb, rb, cb);
              if (sub.cwiseAbs().maxCoeff() == 0.0) continue;
              Morphism ea = Morphism::zero(cat, S[s].left, T[u].left);
              ea.block(a)(i1, j1) = 1.0;
              Morphism gb = Morphism::zero(cat, S[s].right, T[u].right);
              gb.block(b) = sub;
              part += tensor(cat, ea, gb);
            }
        }
      }
      detail::embed(cat, out, toff, soff, part);
      soff += src.slot_count();
    }
    toff += tensor(T[u].left, T[u].right).slot_count();
  }
  return out;
}

// ---- Hom spaces in the center --------------------------------------------

namespace detail {

inline Vector flatten(const Morphism& m) {
  Eigen::Index total = 0;
  for (const auto& b : m.blocks()) total += b.size();
  Vector v(total);
  Eigen::Index o = 0;
  for (const auto& b : m.blocks())
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r) v(o++) = b(r, c);
  return v;
}

inline Morphism unflatten(const Morphism& shape, const Vector& v) {
  Morphism m = shape;
  Eigen::Index o = 0;
  for (Label i = 0; i < m.sectors(); ++i) {
    Matrix& b = m.block(i);
    for (Eigen::Index c = 0; c < b.cols(); ++c)
      for (Eigen::Index r = 0; r < b.rows(); ++r) b(r, c) = v(o++);
  }
  return m;
}

/// Orthonormal basis of the null space of A (columns), singular values below tol * max(1, ||A||).
inline Matrix null_space(const Matrix& A, double tol) {
  if (A.cols() == 0) return Matrix(0, 0);
  if (A.rows() == 0) return Matrix::Identity(A.cols(), A.cols());
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * scale) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

/// Orthonormal basis of the column space, same thresholding.
inline Matrix range_basis(const Matrix& A, double tol) {
  if (A.size() == 0) return Matrix(A.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > tol * scale) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace detail

/// Z(C)-morphism residual of f : (X, gamma) -> (Y, beta): max_j ||(f (x) 1_j) gamma_j - beta_j (1_j (x) f)||.
inline double center_morphism_residual(const CategoryData& cat, const CenterObject& a, const CenterObject& b,
                                       const Morphism& f) {
  double worst = 0.0;
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    const Morphism lhs = compose(tensor(cat, f, Morphism::identity(cat, J)), a.gamma[static_cast<std::size_t>(j)]);
    const Morphism rhs = compose(b.gamma[static_cast<std::size_t>(j)], tensor(cat, Morphism::identity(cat, J), f));
    worst = std::max(worst, distance(lhs, rhs));
  }
  return worst;
}

/// Basis of Hom_{Z(C)}(a, b): the null space of f -> (f (x) 1_j) gamma_j - beta_j (1_j (x) f) over all j.
inline std::vector<Morphism> center_hom_basis(const CategoryData& cat, const CenterObject& a, const CenterObject& b) {
  const Morphism shape = Morphism::zero(cat, a.X, b.X);
  const Eigen::Index params = detail::flatten(shape).size();
  std::vector<Vector> cols;
  Eigen::Index rows = 0;
  for (Eigen::Index p = 0; p < params; ++p) {
    Vector e = Vector::Zero(params);
    e(p) = 1.0;
    const Morphism f = detail::unflatten(shape, e);
    std::vector<Vector> parts;
    Eigen::Index len = 0;
    for (Label j = 0; j < cat.n(); ++j) {
      const ObjectExpr J = ObjectExpr::simple(j);
      const Morphism r = compose(tensor(cat, f, Morphism::identity(cat, J)), a.gamma[static_cast<std::size_t>(j)]) -
                         compose(b.gamma[static_cast<std::size_t>(j)], tensor(cat, Morphism::identity(cat, J), f));
      parts.push_back(detail::flatten(r));
      len += parts.back().size();
    }
    Vector col(len);
    Eigen::Index o = 0;
    for (const auto& q : parts) {
      col.segment(o, q.size()) = q;
      o += q.size();
    }
    rows = len;
    cols.push_back(std::move(col));
  }
  Matrix A(rows, params);
  for (Eigen::Index p = 0; p < params; ++p) A.col(p) = cols[static_cast<std::size_t>(p)];
  const Matrix ns = detail::null_space(A, 1e-8);
  std::vector<Morphism> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) out.push_back(detail::unflatten(shape, ns.col(c)));
  return out;
}

inline int center_hom_dim(const CategoryData& cat, const CenterObject& a, const CenterObject& b) {
  return static_cast<int>(center_hom_basis(cat, a, b).size());
}

/// Splits an idempotent e : X -> X as incl o proj with proj o incl = 1 on I = sum_c c^{rank_c}.
struct ImageSplit {
  ObjectExpr I;
  Morphism incl;
  Morphism proj;
  std::vector<int> ranks;
};

inline ImageSplit image_factorization(const CategoryData& cat, const Morphism& e, double tol = 1e-8) {
  ImageSplit out;
  std::vector<Matrix> U;
  std::vector<Summand> summands;
  for (Label c = 0; c < cat.n(); ++c) {
    U.push_back(detail::range_basis(e.block(c), tol));
    const int r = static_cast<int>(U.back().cols());
    out.ranks.push_back(r);
    if (r > 0) summands.push_back({{c}, r});
  }
  out.I = ObjectExpr(std::move(summands));
  out.incl = Morphism::zero(cat, out.I, e.target());
  out.proj = Morphism::zero(cat, e.source(), out.I);
  for (Label c = 0; c < cat.n(); ++c) {
    if (!U[static_cast<std::size_t>(c)].cols()) continue;
    const Matrix& u = U[static_cast<std::size_t>(c)];
    out.incl.block(c) = u;
    out.proj.block(c) = u.adjoint() * e.block(c);
  }
  return out;
}

/// Center object on the image of a Z(C)-idempotent e of z.
inline std::pair<CenterObject, ImageSplit> center_image(const CategoryData& cat, const CenterObject& z, const Morphism& e) {
  ImageSplit s = image_factorization(cat, e);
  CenterObject img{s.I, {}};
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    img.gamma.push_back(compose_all({tensor(cat, s.proj, Morphism::identity(cat, J)), z.gamma[static_cast<std::size_t>(j)],
                                     tensor(cat, Morphism::identity(cat, J), s.incl)}));
  }
  return {std::move(img), std::move(s)};
}

}  // namespace tcat

#endif  // TCAT_CENTER_OBJECT_HPP
