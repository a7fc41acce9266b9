#ifndef TCAT_DIAGRAM_HPP
#define TCAT_DIAGRAM_HPP

// Graphical-calculus primitives evaluated eagerly into sector block form:
// tensor product, braiding, cups and caps, traces, dual bases and Omega-loops.

#include "tcat/morphism.hpp"
#include "tcat/validate.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcat {

enum class CupCap { coev, eval, coev_prime, eval_prime };

namespace detail {

inline Label tree_root(const Word& t) { return t.empty() ? 0 : t.back(); }

inline std::map<Word, int> index_of(const std::vector<Word>& trees) {
  std::map<Word, int> out;
  for (std::size_t k = 0; k < trees.size(); ++k) out[trees[k]] = static_cast<int>(k);
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Left-combed trees of X++Y in sector i, expanded in the split basis
// (X -> e) (x) (Y -> f) -> i. Rows are split states ordered by (e, f) then
// X-tree then Y-tree; columns are the left-combed trees.
struct SplitBasis {
  struct Row {
    Label e, f;
    int tx, ty;
  };
  std::vector<Row> rows;
  Matrix P;
};

inline SplitBasis split_basis(const CategoryData& cat, const Word& x, const Word& y, Label i) {
  SplitBasis sb;
  const int n = cat.n();
  std::map<std::pair<Word, Word>, int> row_of;
  std::vector<std::vector<Word>> xtrees(static_cast<std::size_t>(n)), ytrees(static_cast<std::size_t>(n));
  for (Label a = 0; a < n; ++a) {
    xtrees[static_cast<std::size_t>(a)] = fusion_trees(cat, x, a);
    ytrees[static_cast<std::size_t>(a)] = fusion_trees(cat, y, a);
  }
  for (Label e = 0; e < n; ++e)
    for (Label f = 0; f < n; ++f) {
      if (!cat.N(e, f, i)) continue;
      const auto& tx = xtrees[static_cast<std::size_t>(e)];
      const auto& ty = ytrees[static_cast<std::size_t>(f)];
      for (std::size_t p = 0; p < tx.size(); ++p)
        for (std::size_t q = 0; q < ty.size(); ++q) {
          row_of[{tx[p], ty[q]}] = static_cast<int>(sb.rows.size());
          sb.rows.push_back({e, f, static_cast<int>(p), static_cast<int>(q)});
        }
    }
  const Word xy = concat(x, y);
  const auto cols = fusion_trees(cat, xy, i);
  sb.P = Matrix::Zero(static_cast<Eigen::Index>(sb.rows.size()), static_cast<Eigen::Index>(cols.size()));
  const std::size_t nx = x.size();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Word& t = cols[c];
    const Word tx(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(nx));
    const Label e = tree_root(tx);
    std::map<Word, Scalar> states{{Word{}, Scalar{1.0}}};
    for (std::size_t k = 0; k < y.size(); ++k) {
      const Label b = y[k];
      const Label g = nx + k == 0 ? 0 : t[nx + k - 1];
      const Label ik = t[nx + k];
      std::map<Word, Scalar> next;
      for (const auto& [ty, coef] : states) {
        const Label fp = tree_root(ty);
        for (Label f : cat.channels(fp, b)) {
          if (!cat.N(e, f, ik)) continue;
          const Scalar v = coef * cat.F(e, fp, b, ik, g, f);
          if (v == Scalar{0.0}) continue;
          Word ty2 = ty;
          ty2.push_back(f);
          next[ty2] += v;
        }
      }
      states = std::move(next);
    }
    for (const auto& [ty, coef] : states)
      sb.P(row_of.at({tx, ty}), static_cast<Eigen::Index>(c)) = coef;
  }
  return sb;
}

/// f (x) g for single-word morphisms.
inline Morphism word_tensor(const CategoryData& cat, const Morphism& f, const Morphism& g) {
  const Word& x = f.source().summands()[0].word;
  const Word& xp = f.target().summands()[0].word;
  const Word& y = g.source().summands()[0].word;
  const Word& yp = g.target().summands()[0].word;
  std::vector<Matrix> blocks;
  for (Label i = 0; i < cat.n(); ++i) {
    const SplitBasis src = split_basis(cat, x, y, i);
    const SplitBasis tgt = split_basis(cat, xp, yp, i);
    if (src.rows.empty() || tgt.rows.empty()) {
      blocks.push_back(Matrix::Zero(tgt.P.cols(), src.P.cols()));
      continue;
    }
    Matrix D = Matrix::Zero(static_cast<Eigen::Index>(tgt.rows.size()), static_cast<Eigen::Index>(src.rows.size()));
    for (std::size_t r = 0; r < tgt.rows.size(); ++r)
      for (std::size_t s = 0; s < src.rows.size(); ++s) {
        const auto& a = tgt.rows[r];
        const auto& b = src.rows[s];
        if (a.e != b.e || a.f != b.f) continue;
        D(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
            f.block(a.e)(a.tx, b.tx) * g.block(a.f)(a.ty, b.ty);
      }
    blocks.push_back(tgt.P.partialPivLu().solve(D * src.P));
  }
  return Morphism(tensor(f.source(), g.source()), tensor(f.target(), g.target()), std::move(blocks));
}

/// Slot index of (slot of X, slot of Y) inside tensor(X, Y).
inline std::vector<std::vector<std::size_t>> tensor_slots(const ObjectExpr& x, const ObjectExpr& y) {
  std::vector<std::vector<std::size_t>> out(x.slot_count(), std::vector<std::size_t>(y.slot_count()));
  std::size_t base = 0, xoff = 0;
  for (const auto& s : x.summands()) {
    std::size_t yoff = 0;
    for (const auto& t : y.summands()) {
      for (int cs = 0; cs < s.multiplicity; ++cs)
        for (int ct = 0; ct < t.multiplicity; ++ct)
          out[xoff + static_cast<std::size_t>(cs)][yoff + static_cast<std::size_t>(ct)] =
              base + static_cast<std::size_t>(cs * t.multiplicity + ct);
      base += static_cast<std::size_t>(s.multiplicity * t.multiplicity);
      yoff += static_cast<std::size_t>(t.multiplicity);
    }
    xoff += static_cast<std::size_t>(s.multiplicity);
  }
  return out;
}

inline Scalar braid_eigenvalue(const CategoryData& cat, Label x, Label y, Label z, bool inverse) {
  if (!inverse) return cat.R(x, y, z);
  const Scalar r = cat.R(y, x, z);
  if (r == Scalar{0.0}) throw NumericalError("braiding: vanishing R-symbol");
  return Scalar{1.0} / r;
}

/// Crossing of the letters at positions p, p+1 of a word: c_{x,y}, or c^{-1}_{y,x} when inverse.
inline Morphism elementary_crossing(const CategoryData& cat, const Word& w, std::size_t p, bool inverse) {
  Word w2 = w;
  std::swap(w2[p], w2[p + 1]);
  const Label x = w[p], y = w[p + 1];
  std::vector<Matrix> blocks;
  for (Label i = 0; i < cat.n(); ++i) {
    const auto src = fusion_trees(cat, w, i);
    const auto tgt = fusion_trees(cat, w2, i);
    const auto tix = index_of(tgt);
    Matrix M = Matrix::Zero(static_cast<Eigen::Index>(tgt.size()), static_cast<Eigen::Index>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
      const Word& t = src[c];
      if (p == 0) {
        Word t2 = t;
        t2[0] = y;
        M(tix.at(t2), static_cast<Eigen::Index>(c)) += braid_eigenvalue(cat, x, y, t[1], inverse);
        continue;
      }
      const Label a = t[p - 1], ep = t[p], d = t[p + 1];
      for (Label g : cat.channels(a, y)) {
        if (!cat.N(g, x, d)) continue;
        Scalar v{0.0};
        for (Label f : cat.channels(x, y)) {
          if (!cat.N(a, f, d)) continue;
          v += cat.F(a, x, y, d, ep, f) * braid_eigenvalue(cat, x, y, f, inverse) * finv(cat, a, y, x, d, f, g);
        }
        Word t2 = t;
        t2[p] = g;
        M(tix.at(t2), static_cast<Eigen::Index>(c)) += v;
      }
    }
    blocks.push_back(std::move(M));
  }
  return Morphism(ObjectExpr::word(w), ObjectExpr::word(w2), std::move(blocks));
}

inline Morphism word_braiding(const CategoryData& cat, const Word& x, const Word& y, bool inverse) {
  Word cur = concat(x, y);
  Morphism acc = Morphism::identity(cat, ObjectExpr::word(cur));
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t p = n + j; p-- > j;) {
      Morphism s = elementary_crossing(cat, cur, p, inverse);
      cur = s.target().summands()[0].word;
      acc = compose(s, acc);
    }
  return acc;
}

inline Morphism scalar_map(const CategoryData& cat, const Word& src, const Word& tgt, Scalar v) {
  Morphism m = Morphism::zero(cat, ObjectExpr::word(src), ObjectExpr::word(tgt));
  m.block(0)(0, 0) = v;
  return m;
}

}  // namespace detail

/// f (x) g. Summands of the result follow tensor(ObjectExpr, ObjectExpr).
inline Morphism tensor(const CategoryData& cat, const Morphism& f, const Morphism& g) {
  const ObjectExpr S = tensor(f.source(), g.source());
  const ObjectExpr T = tensor(f.target(), g.target());
  if (f.source().slot_count() == 1 && f.target().slot_count() == 1 && g.source().slot_count() == 1 &&
      g.target().slot_count() == 1 && f.source().summands().size() == 1 && f.target().summands().size() == 1 &&
      g.source().summands().size() == 1 && g.target().summands().size() == 1)
    return detail::word_tensor(cat, f, g);
  Morphism out = Morphism::zero(cat, S, T);
  const BlockView vf(cat, f.source(), f.target()), vg(cat, g.source(), g.target()), vo(cat, S, T);
  const auto is = detail::tensor_slots(f.source(), g.source());
  const auto it = detail::tensor_slots(f.target(), g.target());
  const double tiny = 0.0;
  std::vector<std::vector<std::optional<Morphism>>> gb(g.target().slot_count(),
                                                       std::vector<std::optional<Morphism>>(g.source().slot_count()));
  for (std::size_t q2 = 0; q2 < g.target().slot_count(); ++q2)
    for (std::size_t q = 0; q < g.source().slot_count(); ++q) {
      Morphism b = vg.get(g, q2, q);
      if (!is_zero(b, tiny)) gb[q2][q] = std::move(b);
    }
  for (std::size_t p2 = 0; p2 < f.target().slot_count(); ++p2)
    for (std::size_t p = 0; p < f.source().slot_count(); ++p) {
      const Morphism fb = vf.get(f, p2, p);
      if (is_zero(fb, tiny)) continue;
      for (std::size_t q2 = 0; q2 < g.target().slot_count(); ++q2)
        for (std::size_t q = 0; q < g.source().slot_count(); ++q)
          if (gb[q2][q]) vo.add(out, it[p2][q2], is[p][q], detail::word_tensor(cat, fb, *gb[q2][q]));
    }
  return out;
}

/// c_{X,Y} : X (x) Y -> Y (x) X, or c^{-1}_{Y,X} with the same source and target when inverse.
inline Morphism braiding(const CategoryData& cat, const ObjectExpr& x, const ObjectExpr& y, bool inverse = false) {
  const ObjectExpr S = tensor(x, y), T = tensor(y, x);
  Morphism out = Morphism::zero(cat, S, T);
  const BlockView vo(cat, S, T);
  const auto is = detail::tensor_slots(x, y);
  const auto it = detail::tensor_slots(y, x);
  const auto xs = x.slots(), ys = y.slots();
  for (std::size_t p = 0; p < xs.size(); ++p)
    for (std::size_t q = 0; q < ys.size(); ++q)
      vo.add(out, it[q][p], is[p][q], detail::word_braiding(cat, xs[p], ys[q], inverse));
  return out;
}

namespace detail {

inline Morphism id_word(const CategoryData& cat, const Word& w) { return Morphism::identity(cat, ObjectExpr::word(w)); }

inline Word dual_word(const CategoryData& cat, const Word& w) {
  Word d(w.rbegin(), w.rend());
  for (auto& l : d) l = cat.dual(l);
  return d;
}

// id_left (x) m (x) id_right on words.
inline Morphism sandwich(const CategoryData& cat, const Word& left, const Morphism& m, const Word& right) {
  return tensor(cat, tensor(cat, id_word(cat, left), m), id_word(cat, right));
}

inline Morphism word_cup_cap(const CategoryData& cat, const Word& w, CupCap kind) {
  const Word wd = dual_word(cat, w);
  switch (kind) {
    case CupCap::coev: {  // [] -> w w*
      Morphism acc = Morphism::identity(cat, ObjectExpr::unit());
      Word prefix;
      for (Label a : w) {
        const Morphism cup = scalar_map(cat, {}, {a, cat.dual(a)}, 1.0);
        acc = compose(sandwich(cat, prefix, cup, dual_word(cat, prefix)), acc);
        prefix.push_back(a);
      }
      return acc;
    }
    case CupCap::eval_prime: {  // w w* -> []
      Morphism acc = id_word(cat, concat(w, wd));
      for (std::size_t k = w.size(); k-- > 0;) {
        const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        const Label a = w[k];
        const Morphism cap = scalar_map(cat, {a, cat.dual(a)}, {}, cat.pivotal(a) * cat.eta(cat.dual(a)));
        acc = compose(sandwich(cat, prefix, cap, dual_word(cat, prefix)), acc);
      }
      return acc;
    }
    case CupCap::eval: {  // w* w -> []
      Morphism acc = id_word(cat, concat(wd, w));
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Word rest(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        const Label a = w[k];
        const Morphism cap = scalar_map(cat, {cat.dual(a), a}, {}, cat.eta(a));
        acc = compose(sandwich(cat, dual_word(cat, rest), cap, rest), acc);
      }
      return acc;
    }
    case CupCap::coev_prime: {  // [] -> w* w
      Morphism acc = Morphism::identity(cat, ObjectExpr::unit());
      for (std::size_t k = w.size(); k-- > 0;) {
        const Word rest(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        const Label a = w[k];
        const Morphism cup = scalar_map(cat, {}, {cat.dual(a), a}, Scalar{1.0} / cat.pivotal(a));
        acc = compose(sandwich(cat, dual_word(cat, rest), cup, rest), acc);
      }
      return acc;
    }
  }
  throw CategoryError("cup_cap: unknown kind");
}

}  // namespace detail

/// coev: 1 -> X X*, eval: X* X -> 1, coev': 1 -> X* X, eval': X X* -> 1.
inline Morphism cup_cap(const CategoryData& cat, const ObjectExpr& x, CupCap kind) {
  const ObjectExpr xd = x.dual(cat);
  const bool into = kind == CupCap::coev || kind == CupCap::coev_prime;
  const ObjectExpr pair = (kind == CupCap::coev || kind == CupCap::eval_prime) ? tensor(x, xd) : tensor(xd, x);
  const ObjectExpr unit = ObjectExpr::unit();
  Morphism out = into ? Morphism::zero(cat, unit, pair) : Morphism::zero(cat, pair, unit);
  const BlockView vo = into ? BlockView(cat, unit, pair) : BlockView(cat, pair, unit);
  const auto idx = detail::tensor_slots(x, xd);
  const auto xs = x.slots();
  for (std::size_t p = 0; p < xs.size(); ++p) {
    const std::size_t slot = idx[p][p];
    const Morphism w = detail::word_cup_cap(cat, xs[p], kind);
    if (into) vo.add(out, slot, 0, w);
    else vo.add(out, 0, slot, w);
  }
  return out;
}

/// Left quantum trace, closing every strand on the right: ev'_X (f (x) 1) coev_X.
inline Scalar quantum_trace(const CategoryData& cat, const Morphism& f) {
  if (!(f.source() == f.target())) throw CompositionError("quantum_trace: morphism is not an endomorphism");
  const ObjectExpr& x = f.source();
  if (x.empty()) return 0.0;
  const ObjectExpr xd = x.dual(cat);
  const Morphism loop = compose_all({cup_cap(cat, x, CupCap::eval_prime), tensor(cat, f, Morphism::identity(cat, xd)),
                                     cup_cap(cat, x, CupCap::coev)});
  return loop.block(0)(0, 0);
}

/// Sum over sectors of dim(i) times the ordinary trace of block i.
inline Scalar sector_trace(const CategoryData& cat, const Morphism& f) {
  if (!(f.source() == f.target())) throw CompositionError("sector_trace: morphism is not an endomorphism");
  Scalar s{0.0};
  for (Label i = 0; i < cat.n(); ++i) s += cat.quantum_dim(i) * f.block(i).trace();
  return s;
}

inline Scalar quantum_dim(const CategoryData& cat, const ObjectExpr& x) {
  return quantum_trace(cat, Morphism::identity(cat, x));
}

/// Closes J on the left: h : J A -> J B gives (ev_J (x) 1_B)(1_{J*} (x) h)(coev'_J (x) 1_A) : A -> B.
inline Morphism ptr_left(const CategoryData& cat, const ObjectExpr& j, const ObjectExpr& a, const ObjectExpr& b,
                         const Morphism& h) {
  if (!(h.source() == tensor(j, a)) || !(h.target() == tensor(j, b)))
    throw CompositionError("ptr_left: morphism does not have the shape J(x)A -> J(x)B");
  const ObjectExpr jd = j.dual(cat);
  return compose_all({tensor(cat, cup_cap(cat, j, CupCap::eval), Morphism::identity(cat, b)),
                      tensor(cat, Morphism::identity(cat, jd), h),
                      tensor(cat, cup_cap(cat, j, CupCap::coev_prime), Morphism::identity(cat, a))});
}

/// Closes J on the right: h : A J -> B J gives (1_B (x) ev'_J)(h (x) 1_{J*})(1_A (x) coev_J) : A -> B.
inline Morphism ptr_right(const CategoryData& cat, const ObjectExpr& j, const ObjectExpr& a, const ObjectExpr& b,
                          const Morphism& h) {
  if (!(h.source() == tensor(a, j)) || !(h.target() == tensor(b, j)))
    throw CompositionError("ptr_right: morphism does not have the shape A(x)J -> B(x)J");
  const ObjectExpr jd = j.dual(cat);
  return compose_all({tensor(cat, Morphism::identity(cat, b), cup_cap(cat, j, CupCap::eval_prime)),
                      tensor(cat, h, Morphism::identity(cat, jd)),
                      tensor(cat, Morphism::identity(cat, a), cup_cap(cat, j, CupCap::coev))});
}

/// A basis phi_k of Hom(X, l) and its trace-dual basis phi^k in Hom(l, X):
/// Tr(phi_k o phi^m) = delta_km.
struct CasimirPair {
  Label label = 0;
  std::vector<Morphism> basis;
  std::vector<Morphism> dual_basis;
  Matrix pairing;  ///< Gram matrix of the starting basis against the canonical co-basis
  double condition = 1.0;
};

/// Canonical fusion-tree basis, optionally mixed by an invertible `rotation` (row k = coefficients of phi_k).
inline CasimirPair hom_basis(const CategoryData& cat, const ObjectExpr& x, Label l, const Matrix* rotation = nullptr) {
  CasimirPair cp;
  cp.label = l;
  const ObjectExpr target = ObjectExpr::simple(l);
  const int d = sector_dim(cat, x, l);
  if (d == 0) return cp;
  const Matrix rot = rotation ? *rotation : Matrix::Identity(d, d);
  if (rot.rows() != d || rot.cols() != d) throw CategoryError("hom_basis: rotation has the wrong size");
  std::vector<Morphism> co;
  for (int k = 0; k < d; ++k) {
    Morphism phi = Morphism::zero(cat, x, target);
    phi.block(l).row(0) = rot.row(k);
    cp.basis.push_back(std::move(phi));
    Morphism psi = Morphism::zero(cat, target, x);
    psi.block(l)(k, 0) = 1.0;
    co.push_back(std::move(psi));
  }
  cp.pairing = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m)
      cp.pairing(k, m) = quantum_trace(cat, compose(cp.basis[static_cast<std::size_t>(k)], co[static_cast<std::size_t>(m)]));
  Eigen::JacobiSVD<Matrix> svd(cp.pairing);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) <= 0.0) throw NumericalError("hom_basis: degenerate trace pairing");
  cp.condition = sv(0) / sv(d - 1);
  const Matrix ginv = cp.pairing.inverse();
  for (int k = 0; k < d; ++k) {
    Morphism dual = Morphism::zero(cat, target, x);
    for (int m = 0; m < d; ++m) dual += ginv(m, k) * co[static_cast<std::size_t>(m)];
    cp.dual_basis.push_back(std::move(dual));
  }
  return cp;
}

struct ResolutionTerm {
  Label label;
  Morphism phi;       ///< W -> i
  Morphism phi_dual;  ///< i -> W
};

/// Terms of 1_W = sum_i sum_l dim(i) phi^l o phi_l.
inline std::vector<ResolutionTerm> identity_resolution(const CategoryData& cat, const ObjectExpr& w) {
  std::vector<ResolutionTerm> out;
  for (Label i = 0; i < cat.n(); ++i) {
    CasimirPair cp = hom_basis(cat, w, i);
    for (std::size_t k = 0; k < cp.basis.size(); ++k) out.push_back({i, cp.basis[k], cp.dual_basis[k]});
  }
  return out;
}

inline Morphism resolution_sum(const CategoryData& cat, const ObjectExpr& w, const std::vector<ResolutionTerm>& terms) {
  Morphism acc = Morphism::zero(cat, w, w);
  for (const auto& t : terms) acc += cat.quantum_dim(t.label) * compose(t.phi_dual, t.phi);
  return acc;
}

/// j (x) W -> W (x) j crossing used where the loop passes the strands.
using Crossing = std::function<Morphism(Label j)>;

/// sum_j dim(j) ptr_L(c_{W,j} o crossing_j). The default crossing is c_{j,W}, i.e. a plain loop around W.
inline Morphism omega_loop(const CategoryData& cat, const ObjectExpr& w, const Crossing& crossing = {}) {
  Morphism acc = Morphism::zero(cat, w, w);
  for (Label j = 0; j < cat.n(); ++j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    const Morphism cross = crossing ? crossing(j) : braiding(cat, J, w);
    const Morphism h = compose(braiding(cat, w, J), cross);
    acc += cat.quantum_dim(j) * ptr_left(cat, J, w, w, h);
  }
  return acc;
}

/// Closed loop colored by K encircling W: ptr_L(c_{W,K} c_{K,W}).
inline Morphism colored_loop(const CategoryData& cat, const ObjectExpr& k, const ObjectExpr& w) {
  return ptr_left(cat, k, w, w, compose(braiding(cat, w, k), braiding(cat, k, w)));
}

}  // namespace tcat

#endif  // TCAT_DIAGRAM_HPP
