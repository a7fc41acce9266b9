#ifndef TCAT_SKELETAL_CATEGORY_HPP
#define TCAT_SKELETAL_CATEGORY_HPP

// Finite skeletal premodular-category data: fusion rules, F- and R-symbols,
// pivotal coefficients and the numeric tolerance policy.
//
// Conventions (splitting-tree basis, left-combed):
//   |((a b)e c)d>  =  sum_f F(a,b,c;d;e,f) |(a (b c)f)d>
//   c_{a,b} psi^{ab}_c = R(a,b;c) psi^{ba}_c
// Cups and caps:
//   coev_a  : 1 -> a a*     coefficient 1
//   ev_a    : a* a -> 1     coefficient 1 / F(a,a*,a;a;1,1)
//   ev'_a   : a a* -> 1     coefficient t_a * ev_{a*}
//   coev'_a : 1 -> a* a     coefficient 1 / t_a

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcat {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Label = int;
using Word = std::vector<Label>;

class CategoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed category document.
class ParseError : public CategoryError {
 public:
  using CategoryError::CategoryError;
};

/// Category data that cannot support the requested computation.
class InvalidCategory : public CategoryError {
 public:
  using CategoryError::CategoryError;
};

class LookupError : public CategoryError {
 public:
  using CategoryError::CategoryError;
};

/// Failure of a numerical decomposition or factorization.
class NumericalError : public CategoryError {
 public:
  using CategoryError::CategoryError;
};

struct ToleranceCfg {
  double eps_structural = 1e-10;  ///< axiom residuals
  double eps_identity = 1e-9;     ///< composite-vs-identity checks

  void check() const {
    if (!(eps_structural > 0.0 && eps_structural <= eps_identity && eps_identity < 1.0))
      throw InvalidCategory("tolerances must satisfy 0 < eps_structural <= eps_identity < 1");
  }
};

struct SimpleLabel {
  Label id = 0;
  std::string name;
};

using FKey = std::array<Label, 6>;  // a b c d e f
using RKey = std::array<Label, 3>;  // a b c

/// One F-matrix F(a,b,c;d) with its admissible row labels e and column labels f.
struct FMove {
  std::vector<Label> rows;  // e with N(a,b,e) N(e,c,d)
  std::vector<Label> cols;  // f with N(b,c,f) N(a,f,d)
  Matrix mat;
  Matrix inv;
  bool invertible = false;
  double condition = 0.0;

  int row_index(Label e) const {
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k] == e) return static_cast<int>(k);
    return -1;
  }
  int col_index(Label f) const {
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (cols[k] == f) return static_cast<int>(k);
    return -1;
  }
};

/// Raw tables exactly as loaded or generated; these are what serialization writes.
struct CategoryTables {
  std::string name;
  std::vector<std::string> labels;
  std::vector<Label> dual;
  std::vector<std::array<Label, 3>> fusion;
  std::map<FKey, Scalar> f;
  std::map<RKey, Scalar> r;
  std::map<Label, Scalar> pivotal;
  ToleranceCfg tol;
};

/// Immutable, fully indexed category. Construction checks only the structural
/// shape of the data (unit, duality involution, index ranges); axioms are the
/// job of validate().
class CategoryData {
 public:
  explicit CategoryData(CategoryTables tables) : t_(std::move(tables)) { index(); }

  const CategoryTables& tables() const { return t_; }
  const std::string& name() const { return t_.name; }
  int n() const { return n_; }
  const ToleranceCfg& tol() const { return t_.tol; }

  SimpleLabel label(Label i) const { return {i, t_.labels.at(static_cast<std::size_t>(i))}; }
  const std::string& label_name(Label i) const { return t_.labels.at(static_cast<std::size_t>(i)); }
  Label dual(Label i) const { return t_.dual[static_cast<std::size_t>(i)]; }

  int N(Label a, Label b, Label c) const { return fusion_[idx3(a, b, c)]; }

  /// Labels c with N(a,b,c) = 1, ascending.
  const std::vector<Label>& channels(Label a, Label b) const {
    return channels_[static_cast<std::size_t>(a * n_ + b)];
  }

  Scalar F(Label a, Label b, Label c, Label d, Label e, Label f) const {
    auto it = t_.f.find({a, b, c, d, e, f});
    return it == t_.f.end() ? Scalar{0.0} : it->second;
  }

  Scalar R(Label a, Label b, Label c) const {
    auto it = t_.r.find({a, b, c});
    return it == t_.r.end() ? Scalar{0.0} : it->second;
  }

  const FMove& fmove(Label a, Label b, Label c, Label d) const {
    return fmoves_[static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d)];
  }

  Scalar pivotal(Label i) const { return pivotal_[static_cast<std::size_t>(i)]; }

  /// Value of the left evaluation ev_a : a* a -> 1 on the splitting vertex.
  Scalar eta(Label a) const {
    const FMove& m = fmove(a, dual(a), a, a);
    const int e = m.row_index(0), f = m.col_index(0);
    if (e < 0 || f < 0) throw InvalidCategory("missing rigidity F-symbol for label " + label_name(a));
    const Scalar v = m.mat(e, f);
    if (std::abs(v) == 0.0)
      throw InvalidCategory("rigidity F-symbol vanishes for label " + label_name(a));
    return Scalar{1.0} / v;
  }

  /// Left quantum dimension, the loop value ev'_a coev_a.
  Scalar quantum_dim(Label a) const { return pivotal(a) * eta(dual(a)); }

  /// Right quantum dimension ev_a coev'_a; equals quantum_dim on spherical data.
  Scalar right_dim(Label a) const { return eta(a) / pivotal(a); }

  /// Ribbon twist derived from braiding and pivotal data.
  Scalar twist(Label a) const {
    Scalar s{0.0};
    for (Label c : channels(a, a)) s += quantum_dim(c) * R(a, a, c);
    return s / quantum_dim(a);
  }

  /// dim(Omega) = sum_i dim(i)^2.
  Scalar global_dim() const {
    Scalar s{0.0};
    for (Label i = 0; i < n_; ++i) s += quantum_dim(i) * quantum_dim(i);
    if (std::abs(s) < t_.tol.eps_identity) throw InvalidCategory("global dimension vanishes");
    return s;
  }

  CategoryData with_tolerances(const ToleranceCfg& tol) const {
    CategoryTables t = t_;
    t.tol = tol;
    return CategoryData(std::move(t));
  }

 private:
  std::size_t idx3(Label a, Label b, Label c) const {
    return static_cast<std::size_t>((a * n_ + b) * n_ + c);
  }

  void index() {
    n_ = static_cast<int>(t_.labels.size());
    if (n_ == 0) throw ParseError("labels: at least the unit label is required");
    t_.tol.check();
    if (static_cast<int>(t_.dual.size()) != n_)
      throw ParseError("dual: expected " + std::to_string(n_) + " entries, got " +
                       std::to_string(t_.dual.size()));
    for (Label i = 0; i < n_; ++i) {
      const Label d = t_.dual[static_cast<std::size_t>(i)];
      if (d < 0 || d >= n_) throw ParseError("dual: label id out of range at index " + std::to_string(i));
    }
    if (t_.dual[0] != 0) throw ParseError("unit must be self-dual");
    for (Label i = 0; i < n_; ++i)
      if (dual(dual(i)) != i) throw ParseError("dual: map is not an involution at label " + std::to_string(i));

    auto in_range = [&](Label x) { return x >= 0 && x < n_; };
    fusion_.assign(static_cast<std::size_t>(n_ * n_ * n_), 0);
    for (const auto& tr : t_.fusion) {
      if (!in_range(tr[0]) || !in_range(tr[1]) || !in_range(tr[2]))
        throw ParseError("fusion: label id out of range");
      fusion_[idx3(tr[0], tr[1], tr[2])] = 1;
    }
    for (Label i = 0; i < n_; ++i)
      if (!N(0, i, i) || !N(i, 0, i)) throw ParseError("fusion: missing unit rule for label " + std::to_string(i));

    channels_.assign(static_cast<std::size_t>(n_ * n_), {});
    for (Label a = 0; a < n_; ++a)
      for (Label b = 0; b < n_; ++b)
        for (Label c = 0; c < n_; ++c)
          if (N(a, b, c)) channels_[static_cast<std::size_t>(a * n_ + b)].push_back(c);

    for (const auto& [k, v] : t_.f) {
      for (Label x : k)
        if (!in_range(x)) throw ParseError("F: label id out of range");
      (void)v;
    }
    for (const auto& [k, v] : t_.r) {
      for (Label x : k)
        if (!in_range(x)) throw ParseError("R: label id out of range");
      (void)v;
    }

    pivotal_.assign(static_cast<std::size_t>(n_), Scalar{1.0});
    for (const auto& [i, v] : t_.pivotal) {
      if (!in_range(i)) throw ParseError("pivotal: label id out of range");
      pivotal_[static_cast<std::size_t>(i)] = v;
    }
    if (t_.pivotal.size() != static_cast<std::size_t>(n_))
      throw ParseError("pivotal: expected one coefficient per label");

    fmoves_.assign(static_cast<std::size_t>(n_ * n_ * n_ * n_), {});
    for (Label a = 0; a < n_; ++a)
      for (Label b = 0; b < n_; ++b)
        for (Label c = 0; c < n_; ++c)
          for (Label d = 0; d < n_; ++d) {
            FMove& m = fmoves_[static_cast<std::size_t>(((a * n_ + b) * n_ + c) * n_ + d)];
            for (Label e : channels(a, b))
              if (N(e, c, d)) m.rows.push_back(e);
            for (Label f : channels(b, c))
              if (N(a, f, d)) m.cols.push_back(f);
            m.mat = Matrix::Zero(static_cast<Eigen::Index>(m.rows.size()),
                                 static_cast<Eigen::Index>(m.cols.size()));
            for (std::size_t r = 0; r < m.rows.size(); ++r)
              for (std::size_t s = 0; s < m.cols.size(); ++s)
                m.mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
                    F(a, b, c, d, m.rows[r], m.cols[s]);
            if (m.rows.size() == m.cols.size()) {
              if (m.rows.empty()) {
                m.invertible = true;
                m.inv = m.mat;
                m.condition = 1.0;
              } else {
                Eigen::JacobiSVD<Matrix> svd(m.mat);
                const auto& sv = svd.singularValues();
                const double smin = sv(sv.size() - 1);
                m.condition = smin > 0.0 ? sv(0) / smin : INFINITY;
                m.invertible = smin > 1e-12 * std::max(1.0, sv(0));
                if (m.invertible) m.inv = m.mat.inverse();
              }
            }
          }
  }

  CategoryTables t_;
  int n_ = 0;
  std::vector<int> fusion_;
  std::vector<std::vector<Label>> channels_;
  std::vector<Scalar> pivotal_;
  std::vector<FMove> fmoves_;
};

}  // namespace tcat

#endif  // TCAT_SKELETAL_CATEGORY_HPP
