// tcat: command-line front end for the tcat library.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 usage or IO error.

#include "tcat/catalog.hpp"
#include "tcat/category_io.hpp"
#include "tcat/factorization.hpp"
#include "tcat/modularity.hpp"
#include "tcat/tube_algebra.hpp"
#include "tcat/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tcat;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string category;
  std::optional<double> eps_structural, eps_identity;
  std::string out;
  std::string format = "human";
  bool expect_modular = false;
  int max_word_length = 2;
};

struct Output {
  std::string text;
  int status = 0;
};

std::map<std::string, fs::path> user_catalog() {
  std::map<std::string, fs::path> found;
  const char* dir = std::getenv("TCAT_CATALOG_DIR");
  if (!dir || !*dir) return found;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".json") found[e.path().stem().string()] = e.path();
  return found;
}

std::vector<std::string> all_names() {
  std::vector<std::string> names = catalog_names();
  for (const auto& [n, p] : user_catalog())
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  return names;
}

CategoryData resolve(const Options& o) {
  const auto builtin = catalog_names();
  std::optional<CategoryData> cat;
  if (std::find(builtin.begin(), builtin.end(), o.category) != builtin.end()) {
    cat = catalog(o.category);
  } else if (auto user = user_catalog(); user.count(o.category)) {
    cat = load_category_file(user.at(o.category).string());
  } else if (fs::is_regular_file(o.category)) {
    cat = load_category_file(o.category);
  } else {
    std::string msg = "unknown category '" + o.category + "'; available:";
    for (const auto& n : all_names()) msg += " " + n;
    throw UsageError(msg);
  }
  if (o.eps_structural || o.eps_identity) {
    ToleranceCfg tol = cat->tol();
    if (o.eps_structural) tol.eps_structural = *o.eps_structural;
    if (o.eps_identity) tol.eps_identity = *o.eps_identity;
    if (!(tol.eps_structural > 0.0) || !(tol.eps_identity > 0.0)) throw UsageError("tolerance overrides must be positive");
    cat = cat->with_tolerances(tol);
  }
  return *cat;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scalar_text(Scalar z) {
  const double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  char buf[64];
  if (im == 0.0)
    std::snprintf(buf, sizeof buf, "%.12g", re);
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

json scalar_json(Scalar z) { return json::array({z.real(), z.imag()}); }

std::string dumped(const json& j) { return j.dump(2) + "\n"; }

Output cmd_validate(const Options& o) {
  const CategoryData cat = resolve(o);
  const ValidationReport rep = validate(cat);
  Output out;
  out.status = rep.pass ? 0 : 1;
  if (o.format == "machine") {
    json rs = json::array();
    for (const auto& r : rep.residuals)
      rs.push_back({{"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass}});
    out.text = dumped({{"schema", "tcat.validation"}, {"schema_version", 1}, {"category", rep.category},
                       {"residuals", rs}, {"failures", rep.failures}, {"pass", rep.pass}});
  } else {
    std::ostringstream os;
    os << "category " << rep.category << "\n";
    for (const auto& r : rep.residuals)
      os << "  " << r.name << std::string(r.name.size() < 20 ? 20 - r.name.size() : 1, ' ') << num(r.value)
         << "  (threshold " << num(r.threshold) << ") " << (r.pass ? "ok" : "FAIL") << "\n";
    for (const auto& f : rep.failures) os << "  failure: " << f << "\n";
    os << (rep.pass ? "valid" : "INVALID") << "\n";
    out.text = os.str();
  }
  return out;
}

Output cmd_smatrix(const Options& o) {
  const CategoryData cat = resolve(o);
  const SMatrix s = s_matrix(cat);
  Output out;
  if (o.format == "machine") {
    json rows = json::array();
    for (Eigen::Index r = 0; r < s.entries.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < s.entries.cols(); ++c) row.push_back(scalar_json(s.entries(r, c)));
      rows.push_back(row);
    }
    std::vector<std::string> labels;
    for (Label a = 0; a < cat.n(); ++a) labels.push_back(cat.label_name(a));
    out.text = dumped({{"schema", "tcat.smatrix"}, {"schema_version", 1}, {"category", cat.name()},
                       {"labels", labels}, {"entries", rows}, {"rank", s.rank}, {"det", scalar_json(s.det)},
                       {"singular_values", s.singular_values}, {"modular", s.rank == cat.n()}});
  } else {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index r = 0; r < s.entries.rows(); ++r) {
      os << (r ? ", [" : "[");
      for (Eigen::Index c = 0; c < s.entries.cols(); ++c) os << (c ? ", " : "") << scalar_text(s.entries(r, c));
      os << "]";
    }
    os << "]\n";
    os << "rank " << s.rank << " of " << cat.n() << ", det " << scalar_text(s.det) << ", "
       << (s.rank == cat.n() ? "modular" : "not modular") << "\n";
    out.text = os.str();
  }
  return out;
}

Output cmd_muger(const Options& o) {
  const CategoryData cat = resolve(o);
  const MugerReport m = muger_center(cat);
  Output out;
  out.status = m.consistent ? 0 : 1;
  std::vector<std::string> names;
  for (Label a : m.transparent) names.push_back(cat.label_name(a));
  if (o.format == "machine") {
    out.text = dumped({{"schema", "tcat.muger"}, {"schema_version", 1}, {"category", cat.name()},
                       {"transparent", names}, {"monodromy_defects", m.monodromy_defects},
                       {"consistent", m.consistent}});
  } else {
    std::ostringstream os;
    os << "transparent simples:";
    for (const auto& n : names) os << " " << n;
    os << "\n";
    for (Label a = 0; a < cat.n(); ++a)
      os << "  " << cat.label_name(a) << "  max |c c - id| = " << num(m.monodromy_defects[static_cast<std::size_t>(a)])
         << "\n";
    os << (names.size() == 1 ? "trivial" : "nontrivial") << " Muger center"
       << (m.consistent ? "" : " (DISAGREES with S-matrix)") << "\n";
    out.text = os.str();
  }
  return out;
}

Output cmd_center(const Options& o) {
  const CategoryData cat = resolve(o);
  const TubeAlgebra T = tube_algebra(cat);
  const std::vector<CenterObject> simples = center_simples(cat, T);
  Output out;
  json items = json::array();
  std::ostringstream os;
  os << "tube algebra dimension " << T.dim() << ", " << simples.size() << " simple objects of Z(C)\n";
  bool all_ok = true;
  for (std::size_t k = 0; k < simples.size(); ++k) {
    const CenterObject& z = simples[k];
    const CenterReport r = verify_center_object(cat, z);
    all_ok = all_ok && r.pass;
    std::vector<int> ranks;
    for (Label a = 0; a < cat.n(); ++a) ranks.push_back(sector_dim(cat, z.X, a));
    const Scalar dim = quantum_dim(cat, z.X);
    const double resid = std::max({r.unit, r.tensoriality, r.naturality});
    items.push_back({{"index", k}, {"underlying", z.X.to_string(cat)}, {"multiplicities", ranks},
                     {"dim", scalar_json(dim)}, {"half_braiding_residual", resid}, {"pass", r.pass}});
    os << "  Z" << k << "  X = " << z.X.to_string(cat) << "  dim " << scalar_text(dim) << "  residual " << num(resid)
       << (r.pass ? "" : "  FAIL") << "\n";
  }
  const double z_res = std::max({T.z_residual, T.unit_residual, T.closure_residual});
  if (o.format == "machine") {
    out.text = dumped({{"schema", "tcat.center"}, {"schema_version", 1}, {"category", cat.name()},
                       {"tube_dimension", T.dim()}, {"block_sizes", T.block_sizes}, {"algebra_residual", z_res},
                       {"simples", items}, {"count", simples.size()}});
  } else {
    os << "algebra residual " << num(z_res) << "\n";
    out.text = os.str();
  }
  out.status = all_ok ? 0 : 1;
  return out;
}

Output cmd_factorize(const Options& o) {
  const CategoryData cat = resolve(o);
  if (o.max_word_length < 1) throw UsageError("--max-word-length must be at least 1");
  const FactorizationReport rep = invertibility_report(cat, {o.max_word_length});
  Output out;
  out.text = o.format == "machine" ? dumped(rep.to_json()) : rep.to_human();
  const double eps = cat.tol().eps_identity;
  const auto& d = rep.defects;
  const bool within = std::max({d.qd, d.dq, d.pb, d.bp}) < eps;
  if (!rep.consistent || d.qd >= eps || rep.z_morphism_residual >= eps || rep.idempotency >= eps) out.status = 1;
  if (o.expect_modular && !(rep.factorizable && within)) out.status = 1;
  return out;
}

Output cmd_catalog_list(const Options& o) {
  Output out;
  const auto user = user_catalog();
  if (o.format == "machine") {
    json entries = json::array();
    for (const auto& n : all_names()) entries.push_back({{"name", n}, {"source", user.count(n) ? user.at(n).string() : "builtin"}});
    out.text = dumped({{"schema", "tcat.catalog"}, {"schema_version", 1}, {"entries", entries}});
  } else {
    for (const auto& n : all_names()) out.text += n + (user.count(n) ? "  (" + user.at(n).string() + ")" : "") + "\n";
  }
  return out;
}

Output cmd_dump(const Options& o) {
  const CategoryData cat = resolve(o);
  return {serialize(cat) + "\n", 0};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  const fs::path target(o.out);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f.flush()) throw UsageError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot move report into place: " + ec.message());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcat: premodular categories, Drinfeld centers and factorization checks"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&o](CLI::App* sub, bool needs_category) {
    if (needs_category) sub->add_option("category", o.category, "catalog name or category JSON file")->required();
    sub->add_option("--tolerance-structural", o.eps_structural, "override eps_structural")->check(CLI::PositiveNumber);
    sub->add_option("--tolerance-identity", o.eps_identity, "override eps_identity")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "write the report to this path");
    sub->add_option("--format", o.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  };

  using Handler = Output (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h, bool needs_category = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, needs_category);
    commands.emplace_back(sub, h);
    return sub;
  };
  add("validate", "check pentagon, hexagon and sphericality", &cmd_validate);
  add("smatrix", "S-matrix and modularity", &cmd_smatrix);
  add("muger", "transparent simples", &cmd_muger);
  add("center", "simple objects of the Drinfeld center", &cmd_center);
  CLI::App* fac = add("factorize", "defects of the natural maps between Z(C) and C |x| C^bop", &cmd_factorize);
  fac->add_flag("--expect-modular", o.expect_modular, "exit 1 unless the category is factorizable");
  fac->add_option("--max-word-length", o.max_word_length, "longest word used as a test object");
  add("catalog-list", "list available categories", &cmd_catalog_list, false);
  add("dump", "print the category as JSON", &cmd_dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      const Output out = handler(o);
      emit(o, out.text);
      return out.status;
    }
  } catch (const UsageError& e) {
    std::cerr << "tcat: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "tcat: parse error: " << e.what() << "\n";
    return 2;
  } catch (const LookupError& e) {
    std::cerr << "tcat: " << e.what() << "\n";
    return 2;
  } catch (const InvalidCategory& e) {
    std::cerr << "tcat: invalid category: " << e.what() << "\n";
    return 2;
  } catch (const CategoryError& e) {
    std::cerr << "tcat: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tcat: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
