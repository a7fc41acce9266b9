#ifndef TCAT_OBJECT_HPP
#define TCAT_OBJECT_HPP

// Objects as direct sums of tensor words, and their left-combed fusion-tree bases.

#include "tcat/skeletal_category.hpp"

#include <map>
#include <string>
#include <vector>

namespace tcat {

struct Summand {
  Word word;
  int multiplicity = 1;
};

/// Direct sum of tensor words over simple labels. The empty word is the unit.
/// Summand order is significant: it fixes the block order of every morphism.
class ObjectExpr {
 public:
  ObjectExpr() = default;  // the zero object
  explicit ObjectExpr(std::vector<Summand> summands) : summands_(std::move(summands)) {
    for (const auto& s : summands_)
      if (s.multiplicity <= 0) throw CategoryError("ObjectExpr: multiplicities must be positive");
  }

  static ObjectExpr unit() { return ObjectExpr({Summand{{}, 1}}); }
  static ObjectExpr word(Word w) { return ObjectExpr({Summand{std::move(w), 1}}); }
  static ObjectExpr simple(Label i) { return word({i}); }

  const std::vector<Summand>& summands() const { return summands_; }

  /// One entry per copy: summands expanded by multiplicity, in order.
  std::vector<Word> slots() const {
    std::vector<Word> out;
    for (const auto& s : summands_)
      for (int c = 0; c < s.multiplicity; ++c) out.push_back(s.word);
    return out;
  }

  std::size_t slot_count() const {
    std::size_t n = 0;
    for (const auto& s : summands_) n += static_cast<std::size_t>(s.multiplicity);
    return n;
  }

  bool empty() const { return summands_.empty(); }

  friend bool operator==(const ObjectExpr& x, const ObjectExpr& y) { return x.slots() == y.slots(); }

  ObjectExpr dual(const CategoryData& cat) const {
    std::vector<Summand> out;
    for (const auto& s : summands_) {
      Word w(s.word.rbegin(), s.word.rend());
      for (auto& l : w) l = cat.dual(l);
      out.push_back({std::move(w), s.multiplicity});
    }
    return ObjectExpr(std::move(out));
  }

  std::string to_string(const CategoryData& cat) const {
    if (summands_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < summands_.size(); ++k) {
      if (k) out += " + ";
      const auto& s = summands_[k];
      if (s.multiplicity > 1) out += std::to_string(s.multiplicity) + "*";
      if (s.word.empty()) out += "1";
      for (std::size_t q = 0; q < s.word.size(); ++q) {
        if (q) out += "(x)";
        out += cat.label_name(s.word[q]);
      }
    }
    return out;
  }

 private:
  std::vector<Summand> summands_;
};

/// Tensor product distributed over summands, left summand index major.
inline ObjectExpr tensor(const ObjectExpr& x, const ObjectExpr& y) {
  std::vector<Summand> out;
  for (const auto& s : x.summands())
    for (const auto& t : y.summands()) {
      Word w = s.word;
      w.insert(w.end(), t.word.begin(), t.word.end());
      out.push_back({std::move(w), s.multiplicity * t.multiplicity});
    }
  return ObjectExpr(std::move(out));
}

inline ObjectExpr direct_sum(const ObjectExpr& x, const ObjectExpr& y) {
  std::vector<Summand> out = x.summands();
  out.insert(out.end(), y.summands().begin(), y.summands().end());
  return ObjectExpr(std::move(out));
}

/// Left-combed fusion trees of `word` with root `root`. A tree is the sequence
/// of partial-fusion labels e_0 = w_0, e_k in e_{k-1} (x) w_k, ending at root.
/// Trees are listed in lexicographic order.
inline std::vector<Word> fusion_trees(const CategoryData& cat, const Word& word, Label root) {
  std::vector<Word> out;
  if (word.empty()) {
    if (root == 0) out.push_back({});
    return out;
  }
  Word cur{word[0]};
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == word.size()) {
      if (cur.back() == root) out.push_back(cur);
      return;
    }
    for (Label e : cat.channels(cur.back(), word[k])) {
      cur.push_back(e);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// dim Hom(i, X): number of fusion trees from the words of X to i.
inline int sector_dim(const CategoryData& cat, const ObjectExpr& x, Label i) {
  int d = 0;
  for (const auto& s : x.summands())
    d += s.multiplicity * static_cast<int>(fusion_trees(cat, s.word, i).size());
  return d;
}

/// Row/column offsets of every slot inside each sector block.
struct Layout {
  std::vector<Word> slots;
  std::vector<std::vector<int>> offset;  // [sector][slot]
  std::vector<std::vector<int>> size;    // [sector][slot]
  std::vector<int> total;                // [sector]
};

inline Layout layout(const CategoryData& cat, const ObjectExpr& x) {
  Layout l;
  l.slots = x.slots();
  const int n = cat.n();
  l.offset.assign(static_cast<std::size_t>(n), {});
  l.size.assign(static_cast<std::size_t>(n), {});
  l.total.assign(static_cast<std::size_t>(n), 0);
  std::map<Word, std::vector<int>> counts;
  for (const auto& w : l.slots) {
    if (counts.count(w)) continue;
    std::vector<int> c(static_cast<std::size_t>(n));
    for (Label i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>(fusion_trees(cat, w, i).size());
    counts[w] = std::move(c);
  }
  for (Label i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(i);
    int off = 0;
    for (const auto& w : l.slots) {
      const int sz = counts[w][si];
      l.offset[si].push_back(off);
      l.size[si].push_back(sz);
      off += sz;
    }
    l.total[si] = off;
  }
  return l;
}

}  // namespace tcat

#endif  // TCAT_OBJECT_HPP
