#ifndef TCAT_FACTORIZATION_HPP
#define TCAT_FACTORIZATION_HPP

// Coupling idempotents, the functor G : Z(C) -> C |x| C^bop, the natural
// transformations d, q, b, p and the invertibility report.

#include "tcat/modularity.hpp"
#include "tcat/tube_algebra.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace tcat {

struct CouplingIdempotent {
  Label i = 0;
  CenterObject center_obj;
  Morphism Gamma;        ///< on i (x) X
  ImageSplit image;      ///< Gamma = incl o proj, proj o incl = 1
  double idempotency = 0.0;
  int rank = 0;
};

/// Gamma_{i,(X,gamma)} = (1/dim Omega) sum_j dim(j) ptr_L(c_{iX,j} o (1_i (x) gamma_j)(c_{j,i} (x) 1_X)).
inline CouplingIdempotent coupling_gamma(const CategoryData& cat, Label i, const CenterObject& obj) {
  CouplingIdempotent c;
  c.i = i;
  c.center_obj = obj;
  const ObjectExpr I = ObjectExpr::simple(i);
  const ObjectExpr W = tensor(I, obj.X);
  const Crossing through = [&](Label j) {
    const ObjectExpr J = ObjectExpr::simple(j);
    return compose(tensor(cat, Morphism::identity(cat, I), obj.gamma[static_cast<std::size_t>(j)]),
                   tensor(cat, braiding(cat, J, I), Morphism::identity(cat, obj.X)));
  };
  c.Gamma = (Scalar{1.0} / cat.global_dim()) * omega_loop(cat, W, through);
  c.idempotency = distance(compose(c.Gamma, c.Gamma), c.Gamma);

  const double eps = cat.tol().eps_identity;
  int rank = 0;
  for (const auto& b : c.Gamma.blocks()) {
    if (b.size() == 0) continue;
    Eigen::ComplexEigenSolver<Matrix> es(b);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const Scalar v = es.eigenvalues()(k);
      const double d0 = std::abs(v), d1 = std::abs(v - 1.0);
      if (std::min(d0, d1) > eps) {
        std::ostringstream msg;
        msg << "coupling_gamma: eigenvalue " << v << " of Gamma for i=" << cat.label_name(i)
            << " is not clustered at 0 or 1 (idempotency residual " << c.idempotency << ")";
        throw NumericalError(msg.str());
      }
      if (d1 < 0.5) ++rank;
    }
  }
  c.rank = rank;
  c.image = image_factorization(cat, c.Gamma);
  int split_rank = 0;
  for (int r : c.image.ranks) split_rank += r;
  if (split_rank != rank) throw NumericalError("coupling_gamma: image rank disagrees with the spectral rank");
  return c;
}

/// G(X, gamma) = sum_i i* |x| I_i, keeping only the nonzero images.
struct GImage {
  DeligneObject obj;
  std::vector<CouplingIdempotent> couplings;  ///< one per term, same order
};

inline GImage functor_G(const CategoryData& cat, const CenterObject& z) {
  GImage g;
  std::vector<DeligneTerm> terms;
  for (Label i = 0; i < cat.n(); ++i) {
    CouplingIdempotent c = coupling_gamma(cat, i, z);
    if (c.rank == 0) continue;
    terms.push_back({ObjectExpr::simple(cat.dual(i)), c.image.I});
    g.couplings.push_back(std::move(c));
  }
  g.obj = DeligneObject(std::move(terms));
  return g;
}

/// G(phi) = sum_i 1_{i*} |x| (proj_Y o (1_i (x) phi) o incl_X).
inline DeligneMorphism functor_G(const CategoryData& cat, const GImage& gx, const GImage& gy, const Morphism& phi) {
  DeligneMorphism m = DeligneMorphism::zero(cat, gx.obj, gy.obj);
  for (std::size_t s = 0; s < gx.couplings.size(); ++s)
    for (std::size_t u = 0; u < gy.couplings.size(); ++u) {
      if (gx.couplings[s].i != gy.couplings[u].i) continue;
      const ObjectExpr I = ObjectExpr::simple(gx.couplings[s].i);
      const Morphism mid = compose_all({gy.couplings[u].image.proj, tensor(cat, Morphism::identity(cat, I), phi),
                                        gx.couplings[s].image.incl});
      add_kron(cat, m, u, s, Morphism::identity(cat, m.source().terms()[s].left), mid);
    }
  return m;
}

// ---- d and q ---------------------------------------------------------------

/// Everything d and q at X |x| Y need: F(X |x| Y), its G-image and the hom bases of Hom(X, i*).
struct DQContext {
  ObjectExpr X, Y;
  CenterObject FXY;
  GImage G;
  std::vector<CasimirPair> bases;  ///< per term of G.obj
};

/// `rotations` (optional, indexed by label i) mixes the basis of Hom(X, i*).
inline DQContext dq_context(const CategoryData& cat, const ObjectExpr& x, const ObjectExpr& y,
                            const std::vector<Matrix>* rotations = nullptr) {
  DQContext ctx{x, y, functor_F(cat, x, y), {}, {}};
  ctx.G = functor_G(cat, ctx.FXY);
  for (const auto& c : ctx.G.couplings) {
    const Label id = cat.dual(c.i);
    const Matrix* rot = rotations ? &(*rotations)[static_cast<std::size_t>(c.i)] : nullptr;
    if (rot && rot->size() == 0) rot = nullptr;
    ctx.bases.push_back(hom_basis(cat, x, id, rot));
  }
  return ctx;
}

namespace detail {
// Dual basis rescaled so that alpha_{i,k} o alpha_i^m = delta_km 1_{i*} (trace pairing gives dim i instead).
inline Morphism comp_dual(const CategoryData& cat, const CasimirPair& cp, std::size_t k) {
  return cat.quantum_dim(cp.label) * cp.dual_basis[k];
}
}  // namespace detail

/// d_i = (1/sqrt dim i) sum_k alpha_{i,k} |x| (proj o ((1_i (x) alpha_i^k) coev_i (x) 1_Y)).
inline DeligneMorphism nat_d(const CategoryData& cat, const DQContext& ctx) {
  const DeligneObject src = DeligneObject::pair(ctx.X, ctx.Y);
  DeligneMorphism d = DeligneMorphism::zero(cat, src, ctx.G.obj);
  for (std::size_t t = 0; t < ctx.G.couplings.size(); ++t) {
    const auto& c = ctx.G.couplings[t];
    const ObjectExpr I = ObjectExpr::simple(c.i);
    const Scalar w = Scalar{1.0} / std::sqrt(cat.quantum_dim(c.i));
    const CasimirPair& cp = ctx.bases[t];
    for (std::size_t k = 0; k < cp.basis.size(); ++k) {
      const Morphism bend =
          compose(tensor(cat, Morphism::identity(cat, I), detail::comp_dual(cat, cp, k)), cup_cap(cat, I, CupCap::coev));
      const Morphism second = w * compose(c.image.proj, tensor(cat, bend, Morphism::identity(cat, ctx.Y)));
      add_kron(cat, d, t, 0, cp.basis[k], second);
    }
  }
  return d;
}

/// q_i = (1/sqrt dim i) sum_k alpha_i^k |x| ((ev'_i (1_i (x) alpha_{i,k}) (x) 1_Y) o incl).
inline DeligneMorphism nat_q(const CategoryData& cat, const DQContext& ctx) {
  const DeligneObject tgt = DeligneObject::pair(ctx.X, ctx.Y);
  DeligneMorphism q = DeligneMorphism::zero(cat, ctx.G.obj, tgt);
  for (std::size_t t = 0; t < ctx.G.couplings.size(); ++t) {
    const auto& c = ctx.G.couplings[t];
    const ObjectExpr I = ObjectExpr::simple(c.i);
    const Scalar w = Scalar{1.0} / std::sqrt(cat.quantum_dim(c.i));
    const CasimirPair& cp = ctx.bases[t];
    for (std::size_t k = 0; k < cp.basis.size(); ++k) {
      const Morphism cap = compose(cup_cap(cat, I, CupCap::eval_prime), tensor(cat, Morphism::identity(cat, I), cp.basis[k]));
      const Morphism second = w * compose(tensor(cat, cap, Morphism::identity(cat, ctx.Y)), c.image.incl);
      add_kron(cat, q, 0, t, detail::comp_dual(cat, cp, k), second);
    }
  }
  return q;
}

// ---- b and p ---------------------------------------------------------------

struct BPContext {
  CenterObject Z;
  GImage G;
  CenterObject FG;
  std::vector<std::size_t> offsets;  ///< slot offset of each term i* I_i inside FG.X
};

inline BPContext bp_context(const CategoryData& cat, const CenterObject& z) {
  BPContext ctx{z, functor_G(cat, z), {}, {}};
  ctx.FG = functor_F(cat, ctx.G.obj);
  std::size_t off = 0;
  for (const auto& t : ctx.G.obj.terms()) {
    ctx.offsets.push_back(off);
    off += tensor(t.left, t.right).slot_count();
  }
  return ctx;
}

/// b = sum_i sqrt(dim i) (1_{i*} (x) proj)(coev'_i (x) 1_X) : X -> FG(X).
inline Morphism nat_b(const CategoryData& cat, const BPContext& ctx) {
  Morphism b = Morphism::zero(cat, ctx.Z.X, ctx.FG.X);
  for (std::size_t t = 0; t < ctx.G.couplings.size(); ++t) {
    const auto& c = ctx.G.couplings[t];
    const ObjectExpr I = ObjectExpr::simple(c.i), Id = I.dual(cat);
    const Morphism part = std::sqrt(cat.quantum_dim(c.i)) *
                          compose(tensor(cat, Morphism::identity(cat, Id), c.image.proj),
                                  tensor(cat, cup_cap(cat, I, CupCap::coev_prime), Morphism::identity(cat, ctx.Z.X)));
    detail::embed(cat, b, ctx.offsets[t], 0, part);
  }
  return b;
}

/// p = sum_i sqrt(dim i) (ev_i (x) 1_X)(1_{i*} (x) incl) : FG(X) -> X.
inline Morphism nat_p(const CategoryData& cat, const BPContext& ctx) {
  Morphism p = Morphism::zero(cat, ctx.FG.X, ctx.Z.X);
  for (std::size_t t = 0; t < ctx.G.couplings.size(); ++t) {
    const auto& c = ctx.G.couplings[t];
    const ObjectExpr I = ObjectExpr::simple(c.i), Id = I.dual(cat);
    const Morphism part = std::sqrt(cat.quantum_dim(c.i)) *
                          compose(tensor(cat, cup_cap(cat, I, CupCap::eval), Morphism::identity(cat, ctx.Z.X)),
                                  tensor(cat, Morphism::identity(cat, Id), c.image.incl));
    detail::embed(cat, p, 0, ctx.offsets[t], part);
  }
  return p;
}

// ---- report ----------------------------------------------------------------

struct Defects {
  double qd = 0.0, dq = 0.0, pb = 0.0, bp = 0.0;
};

struct FactorizationReport {
  static constexpr int schema_version = 1;
  std::string category;
  bool modular = false;
  int rank_S = 0;
  Defects defects;
  int center_count = 0;
  int square_count = 0;
  bool factorizable = false;
  bool consistent = true;          ///< verdict agrees with the S-matrix
  double z_morphism_residual = 0.0;  ///< worst b / p compatibility residual
  double idempotency = 0.0;          ///< worst Gamma^2 - Gamma over the test objects
  int deligne_tests = 0;
  int center_tests = 0;

  std::string verdict() const { return factorizable ? "factorizable" : "not factorizable"; }

  nlohmann::json to_json() const {
    return {{"schema", "tcat.factorization"},
            {"schema_version", schema_version},
            {"category", category},
            {"modular", modular},
            {"rank_S", rank_S},
            {"defects", {{"qd", defects.qd}, {"dq", defects.dq}, {"pb", defects.pb}, {"bp", defects.bp}}},
            {"center_count", center_count},
            {"square_count", square_count},
            {"verdict", verdict()},
            {"consistent", consistent},
            {"z_morphism_residual", z_morphism_residual},
            {"idempotency", idempotency},
            {"test_objects", {{"deligne", deligne_tests}, {"center", center_tests}}}};
  }

  std::string to_human() const {
    auto num = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    std::ostringstream os;
    os << "category            " << category << "\n"
       << "modular             " << (modular ? "yes" : "no") << " (rank S = " << rank_S << ")\n"
       << "defect |qd - id|    " << num(defects.qd) << "\n"
       << "defect |dq - id|    " << num(defects.dq) << "\n"
       << "defect |pb - id|    " << num(defects.pb) << "\n"
       << "defect |bp - id|    " << num(defects.bp) << "\n"
       << "b, p in Z(C)        " << num(z_morphism_residual) << "\n"
       << "Gamma^2 - Gamma     " << num(idempotency) << "\n"
       << "center simples      " << center_count << "\n"
       << "C |x| C^bop simples " << square_count << "\n"
       << "test objects        " << deligne_tests << " deligne, " << center_tests << " center\n"
       << "verdict             " << verdict() << (consistent ? "" : " (DISAGREES with S-matrix)") << "\n";
    return os.str();
  }
};

/// All words over the labels of length 1..max_len.
inline std::vector<ObjectExpr> sample_words(const CategoryData& cat, int max_len) {
  std::vector<ObjectExpr> out;
  std::vector<Word> layer{{}};
  for (int len = 1; len <= max_len; ++len) {
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

struct SamplingPolicy {
  int max_word_length = 2;  ///< Deligne test objects X |x| Y with X, Y words up to this length
};

inline Defects dq_defects(const CategoryData& cat, const DQContext& ctx) {
  const DeligneMorphism d = nat_d(cat, ctx), q = nat_q(cat, ctx);
  Defects out;
  out.qd = distance(compose(q, d), DeligneMorphism::identity(cat, d.source()));
  out.dq = distance(compose(d, q), DeligneMorphism::identity(cat, d.target()));
  return out;
}

struct BPResult {
  Defects defects;
  double b_residual = 0.0, p_residual = 0.0;
};

inline BPResult bp_defects(const CategoryData& cat, const BPContext& ctx) {
  const Morphism b = nat_b(cat, ctx), p = nat_p(cat, ctx);
  BPResult r;
  r.defects.pb = distance(compose(p, b), Morphism::identity(cat, ctx.Z.X));
  r.defects.bp = distance(compose(b, p), Morphism::identity(cat, ctx.FG.X));
  r.b_residual = center_morphism_residual(cat, ctx.Z, ctx.FG, b);
  r.p_residual = center_morphism_residual(cat, ctx.FG, ctx.Z, p);
  return r;
}

inline FactorizationReport invertibility_report(const CategoryData& cat, const SamplingPolicy& policy = {}) {
  FactorizationReport rep;
  rep.category = cat.name();
  const SMatrix s = s_matrix(cat);
  rep.rank_S = s.rank;
  rep.modular = s.rank == cat.n();
  rep.square_count = deligne_simple_count(cat);
  const std::vector<CenterObject> simples = center_simples(cat);
  rep.center_count = static_cast<int>(simples.size());

  const auto words = sample_words(cat, std::max(1, policy.max_word_length));
  std::vector<CenterObject> center_tests = simples;
  for (const auto& x : words)
    for (const auto& y : words) {
      const DQContext ctx = dq_context(cat, x, y);
      const Defects d = dq_defects(cat, ctx);
      rep.defects.qd = std::max(rep.defects.qd, d.qd);
      rep.defects.dq = std::max(rep.defects.dq, d.dq);
      for (const auto& c : ctx.G.couplings) rep.idempotency = std::max(rep.idempotency, c.idempotency);
      ++rep.deligne_tests;
      if (x.summands()[0].word.size() == 1 && y.summands()[0].word.size() == 1) center_tests.push_back(ctx.FXY);
    }
  for (const auto& z : center_tests) {
    const BPContext ctx = bp_context(cat, z);
    const BPResult r = bp_defects(cat, ctx);
    rep.defects.pb = std::max(rep.defects.pb, r.defects.pb);
    rep.defects.bp = std::max(rep.defects.bp, r.defects.bp);
    rep.z_morphism_residual = std::max({rep.z_morphism_residual, r.b_residual, r.p_residual});
    for (const auto& c : ctx.G.couplings) rep.idempotency = std::max(rep.idempotency, c.idempotency);
    ++rep.center_tests;
  }
  const double eps = cat.tol().eps_identity;
  rep.factorizable = rep.defects.qd < eps && rep.defects.dq < eps && rep.defects.pb < eps && rep.defects.bp < eps;
  rep.consistent = rep.factorizable == rep.modular;
  return rep;
}

}  // namespace tcat

#endif  // TCAT_FACTORIZATION_HPP
