#ifndef TCAT_MORPHISM_HPP
#define TCAT_MORPHISM_HPP

// Morphisms X -> Y stored as their action on Hom(i, -) for every simple i:
// one matrix per sector, dim Hom(i, Y) x dim Hom(i, X), in fusion-tree coordinates.

#include "tcat/object.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace tcat {

class CompositionError : public CategoryError {
 public:
  using CategoryError::CategoryError;
};

class Morphism {
 public:
  Morphism() = default;
  Morphism(ObjectExpr source, ObjectExpr target, std::vector<Matrix> blocks)
      : source_(std::move(source)), target_(std::move(target)), blocks_(std::move(blocks)) {}

  static Morphism zero(const CategoryData& cat, const ObjectExpr& source, const ObjectExpr& target) {
    std::vector<Matrix> blocks;
    for (Label i = 0; i < cat.n(); ++i)
      blocks.push_back(Matrix::Zero(sector_dim(cat, target, i), sector_dim(cat, source, i)));
    return Morphism(source, target, std::move(blocks));
  }

  static Morphism identity(const CategoryData& cat, const ObjectExpr& x) {
    std::vector<Matrix> blocks;
    for (Label i = 0; i < cat.n(); ++i) {
      const int d = sector_dim(cat, x, i);
      blocks.push_back(Matrix::Identity(d, d));
    }
    return Morphism(x, x, std::move(blocks));
  }

  const ObjectExpr& source() const { return source_; }
  const ObjectExpr& target() const { return target_; }
  int sectors() const { return static_cast<int>(blocks_.size()); }
  const Matrix& block(Label i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  Matrix& block(Label i) { return blocks_.at(static_cast<std::size_t>(i)); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Morphism& operator+=(const Morphism& o) {
    check_same_shape(o, "addition");
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
    return *this;
  }
  Morphism& operator-=(const Morphism& o) {
    check_same_shape(o, "subtraction");
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
    return *this;
  }
  Morphism& operator*=(Scalar s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }
  friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
  friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
  friend Morphism operator*(Scalar s, Morphism a) { return a *= s; }

 private:
  void check_same_shape(const Morphism& o, const char* what) const {
    if (!(source_ == o.source_) || !(target_ == o.target_) || blocks_.size() != o.blocks_.size())
      throw CompositionError(std::string(what) + " of morphisms with different source/target");
  }

  ObjectExpr source_;
  ObjectExpr target_;
  std::vector<Matrix> blocks_;
};

/// g o f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source()))
    throw CompositionError("compose: target of the first morphism differs from source of the second");
  if (f.sectors() != g.sectors()) throw CompositionError("compose: sector count mismatch");
  std::vector<Matrix> blocks;
  for (Label i = 0; i < f.sectors(); ++i) {
    if (g.block(i).cols() != f.block(i).rows())
      throw CompositionError("compose: block shape mismatch in sector " + std::to_string(i));
    blocks.push_back(g.block(i) * f.block(i));
  }
  return Morphism(f.source(), g.target(), std::move(blocks));
}

/// Composes right to left: compose_all({h, g, f}) = h o g o f.
inline Morphism compose_all(std::initializer_list<Morphism> ms) {
  std::vector<Morphism> v(ms);
  Morphism acc = v.back();
  for (std::size_t k = v.size() - 1; k-- > 0;) acc = compose(v[k], acc);
  return acc;
}

/// Maximum over sectors of the spectral norm.
inline double spectral_norm(const Morphism& m) {
  double worst = 0.0;
  for (const auto& b : m.blocks()) {
    if (b.size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(b);
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

/// Defect norm ||a - b||: max over sectors of the spectral norm of the difference.
inline double distance(const Morphism& a, const Morphism& b) {
  if (a.sectors() != b.sectors()) throw CompositionError("distance: sector count mismatch");
  double worst = 0.0;
  for (Label i = 0; i < a.sectors(); ++i) {
    if (a.block(i).rows() != b.block(i).rows() || a.block(i).cols() != b.block(i).cols())
      throw CompositionError("distance: block shape mismatch in sector " + std::to_string(i));
    if (a.block(i).size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(a.block(i) - b.block(i));
    worst = std::max(worst, svd.singularValues()(0));
  }
  return worst;
}

/// Reads and writes the block between one slot of the source and one slot of the target.
class BlockView {
 public:
  BlockView(const CategoryData& cat, const ObjectExpr& source, const ObjectExpr& target)
      : n_(cat.n()), src_(layout(cat, source)), tgt_(layout(cat, target)) {}

  const Layout& source_layout() const { return src_; }
  const Layout& target_layout() const { return tgt_; }

  Morphism get(const Morphism& m, std::size_t tgt_slot, std::size_t src_slot) const {
    std::vector<Matrix> blocks;
    for (Label i = 0; i < n_; ++i) {
      const auto si = static_cast<std::size_t>(i);
      blocks.push_back(m.block(i).block(tgt_.offset[si][tgt_slot], src_.offset[si][src_slot],
                                        tgt_.size[si][tgt_slot], src_.size[si][src_slot]));
    }
    return Morphism(ObjectExpr::word(src_.slots[src_slot]), ObjectExpr::word(tgt_.slots[tgt_slot]),
                    std::move(blocks));
  }

  void add(Morphism& m, std::size_t tgt_slot, std::size_t src_slot, const Morphism& w) const {
    for (Label i = 0; i < n_; ++i) {
      const auto si = static_cast<std::size_t>(i);
      m.block(i).block(tgt_.offset[si][tgt_slot], src_.offset[si][src_slot], tgt_.size[si][tgt_slot],
                       src_.size[si][src_slot]) += w.block(i);
    }
  }

 private:
  int n_;
  Layout src_, tgt_;
};

inline bool is_zero(const Morphism& m, double tol = 0.0) {
  for (const auto& b : m.blocks())
    if (b.size() && b.cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

/// Structured-text dump: sector -> matrix, used for golden comparisons.
inline std::string dump(const CategoryData& cat, const Morphism& m) {
  nlohmann::json doc;
  doc["source"] = m.source().to_string(cat);
  doc["target"] = m.target().to_string(cat);
  nlohmann::json sectors = nlohmann::json::object();
  for (Label i = 0; i < m.sectors(); ++i) {
    const Matrix& b = m.block(i);
    if (b.size() == 0) continue;
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back({b(r, c).real(), b(r, c).imag()});
      rows.push_back(row);
    }
    sectors[cat.label_name(i)] = rows;
  }
  doc["sectors"] = sectors;
  return doc.dump();
}

}  // namespace tcat

#endif  // TCAT_MORPHISM_HPP
