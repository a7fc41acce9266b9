#ifndef TCAT_DELIGNE_HPP
#define TCAT_DELIGNE_HPP

// C (x) C^bop: objects are direct sums of pairs A |x| B, morphisms are stored
// per pair of simple sectors (a, b) acting on sum_t Hom(a, A_t) (x) Hom(b, B_t).

#include "tcat/morphism.hpp"

#include <string>
#include <vector>

namespace tcat {

struct DeligneTerm {
  ObjectExpr left;
  ObjectExpr right;
};

class DeligneObject {
 public:
  DeligneObject() = default;
  explicit DeligneObject(std::vector<DeligneTerm> terms) : terms_(std::move(terms)) {}
  static DeligneObject pair(ObjectExpr left, ObjectExpr right) { return DeligneObject({{std::move(left), std::move(right)}}); }
  static DeligneObject simple(Label a, Label b) { return pair(ObjectExpr::simple(a), ObjectExpr::simple(b)); }

  const std::vector<DeligneTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend bool operator==(const DeligneObject& x, const DeligneObject& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t t = 0; t < x.terms_.size(); ++t)
      if (!(x.terms_[t].left == y.terms_[t].left) || !(x.terms_[t].right == y.terms_[t].right)) return false;
    return true;
  }

  std::string to_string(const CategoryData& cat) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      if (t) out += " + ";
      out += "(" + terms_[t].left.to_string(cat) + ")|x|(" + terms_[t].right.to_string(cat) + ")";
    }
    return out;
  }

 private:
  std::vector<DeligneTerm> terms_;
};

/// dim Hom(a |x| b, X).
inline int sector_dim(const CategoryData& cat, const DeligneObject& x, Label a, Label b) {
  int d = 0;
  for (const auto& t : x.terms()) d += sector_dim(cat, t.left, a) * sector_dim(cat, t.right, b);
  return d;
}

inline int deligne_simple_count(const CategoryData& cat) { return cat.n() * cat.n(); }

class DeligneMorphism {
 public:
  DeligneMorphism() = default;
  DeligneMorphism(DeligneObject source, DeligneObject target, int n, std::vector<Matrix> blocks)
      : source_(std::move(source)), target_(std::move(target)), n_(n), blocks_(std::move(blocks)) {}

  static DeligneMorphism zero(const CategoryData& cat, const DeligneObject& s, const DeligneObject& t) {
    std::vector<Matrix> blocks;
    for (Label a = 0; a < cat.n(); ++a)
      for (Label b = 0; b < cat.n(); ++b) blocks.push_back(Matrix::Zero(sector_dim(cat, t, a, b), sector_dim(cat, s, a, b)));
    return DeligneMorphism(s, t, cat.n(), std::move(blocks));
  }

  static DeligneMorphism identity(const CategoryData& cat, const DeligneObject& x) {
    std::vector<Matrix> blocks;
    for (Label a = 0; a < cat.n(); ++a)
      for (Label b = 0; b < cat.n(); ++b) {
        const int d = sector_dim(cat, x, a, b);
        blocks.push_back(Matrix::Identity(d, d));
      }
    return DeligneMorphism(x, x, cat.n(), std::move(blocks));
  }

  const DeligneObject& source() const { return source_; }
  const DeligneObject& target() const { return target_; }
  int labels() const { return n_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(Label a, Label b) const { return blocks_.at(static_cast<std::size_t>(a * n_ + b)); }
  Matrix& block(Label a, Label b) { return blocks_.at(static_cast<std::size_t>(a * n_ + b)); }

  DeligneMorphism& operator+=(const DeligneMorphism& o) {
    if (!(source_ == o.source_) || !(target_ == o.target_))
      throw CompositionError("addition of Deligne morphisms with different source/target");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
    return *this;
  }
  DeligneMorphism& operator*=(Scalar s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }
  friend DeligneMorphism operator+(DeligneMorphism a, const DeligneMorphism& b) { return a += b; }
  friend DeligneMorphism operator*(Scalar s, DeligneMorphism a) { return a *= s; }

 private:
  DeligneObject source_;
  DeligneObject target_;
  int n_ = 0;
  std::vector<Matrix> blocks_;
};

inline DeligneMorphism compose(const DeligneMorphism& g, const DeligneMorphism& f) {
  if (!(f.target() == g.source()))
    throw CompositionError("compose: target of the first Deligne morphism differs from source of the second");
  std::vector<Matrix> blocks;
  for (std::size_t k = 0; k < f.blocks().size(); ++k) {
    if (g.blocks()[k].cols() != f.blocks()[k].rows())
      throw CompositionError("compose: Deligne block shape mismatch in sector pair " + std::to_string(k));
    blocks.push_back(g.blocks()[k] * f.blocks()[k]);
  }
  return DeligneMorphism(f.source(), g.target(), f.labels(), std::move(blocks));
}

inline double distance(const DeligneMorphism& x, const DeligneMorphism& y) {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.blocks().size(); ++k) {
    const Matrix& a = x.blocks()[k];
    const Matrix& b = y.blocks().at(k);
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw CompositionError("distance: Deligne block shape mismatch in sector pair " + std::to_string(k));
    if (a.size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(a - b);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

namespace detail {

inline Matrix kron_matrix(const Matrix& x, const Matrix& y) {
  Matrix k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) k.block(r * y.rows(), c * y.cols(), y.rows(), y.cols()) = x(r, c) * y;
  return k;
}

// Offsets of each term inside the (a, b) block of a Deligne object.
inline std::vector<int> term_offsets(const CategoryData& cat, const DeligneObject& x, Label a, Label b) {
  std::vector<int> off;
  int o = 0;
  for (const auto& t : x.terms()) {
    off.push_back(o);
    o += sector_dim(cat, t.left, a) * sector_dim(cat, t.right, b);
  }
  return off;
}

}  // namespace detail

/// Adds f |x| g into the block from term `src_term` of m's source to term `tgt_term` of its target.
inline void add_kron(const CategoryData& cat, DeligneMorphism& m, std::size_t tgt_term, std::size_t src_term,
                     const Morphism& f, const Morphism& g) {
  const auto& st = m.source().terms().at(src_term);
  const auto& tt = m.target().terms().at(tgt_term);
  if (!(f.source() == st.left) || !(f.target() == tt.left) || !(g.source() == st.right) || !(g.target() == tt.right))
    throw CompositionError("add_kron: factor morphisms do not match the selected terms");
  for (Label a = 0; a < cat.n(); ++a)
    for (Label b = 0; b < cat.n(); ++b) {
      const Matrix k = detail::kron_matrix(f.block(a), g.block(b));
      if (k.size() == 0) continue;
      const int r0 = detail::term_offsets(cat, m.target(), a, b)[tgt_term];
      const int c0 = detail::term_offsets(cat, m.source(), a, b)[src_term];
      m.block(a, b).block(r0, c0, k.rows(), k.cols()) += k;
    }
}

/// f |x| g on single-term objects.
inline DeligneMorphism kron(const CategoryData& cat, const Morphism& f, const Morphism& g) {
  DeligneMorphism m = DeligneMorphism::zero(cat, DeligneObject::pair(f.source(), g.source()),
                                            DeligneObject::pair(f.target(), g.target()));
  add_kron(cat, m, 0, 0, f, g);
  return m;
}

}  // namespace tcat

#endif  // TCAT_DELIGNE_HPP
