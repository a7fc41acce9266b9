#include <catch_amalgamated.hpp>

#include "tcat/catalog.hpp"
#include "tcat/category_io.hpp"
#include "tcat/factorization.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

using namespace tcat;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run tcat_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + TCAT_CLI_PATH + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / ("tcat_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("report json is deterministic") {
  const CategoryData cat = catalog("ising");
  CHECK(invertibility_report(cat).to_json().dump() == invertibility_report(cat).to_json().dump());
}

TEST_CASE("exit codes") {
  CHECK(tcat_cli("validate fibonacci").code == 0);
  CHECK(tcat_cli("factorize vec_z2_sym").code == 0);
  CHECK(tcat_cli("factorize vec_z2_sym --expect-modular").code == 1);
  CHECK(tcat_cli("factorize semion --expect-modular").code == 0);
  const Run unknown = tcat_cli("smatrix nope");
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("fibonacci") != std::string::npos);
  CHECK(tcat_cli("").code == 2);
  CHECK(tcat_cli("validate fibonacci --tolerance-identity -1").code == 2);
  CHECK(tcat_cli("validate " TCAT_TEST_DATA "/malformed.json").code == 2);
  CHECK(tcat_cli("validate " TCAT_TEST_DATA "/fibonacci_perturbed.json").code == 1);
}

TEST_CASE("smatrix trivial prints [[1]]") {
  const Run r = tcat_cli("smatrix trivial");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("[[1]]", 0) == 0);
}

TEST_CASE("machine output is schema-versioned and matches the human numbers") {
  const Run m = tcat_cli("factorize fibonacci --format machine");
  const Run h = tcat_cli("factorize fibonacci");
  REQUIRE(m.code == 0);
  const json j = json::parse(m.out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("verdict") == "factorizable");
  std::smatch match;
  const std::regex qd(R"(\|qd - id\|\s+(\S+))");
  REQUIRE(std::regex_search(h.out, match, qd));
  CHECK(std::stod(match[1]) == j.at("defects").at("qd").get<double>());

  const Run m2 = tcat_cli("factorize fibonacci --format machine");
  CHECK(m2.out == m.out);

  for (const char* cmd : {"validate", "smatrix", "muger", "center"}) {
    const Run r = tcat_cli(std::string(cmd) + " ising --format machine");
    INFO(cmd);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out).at("schema_version") == 1);
  }
}

TEST_CASE("--out writes the report and leaves no temp file") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "report.json";
  const Run r = tcat_cli("muger vec_z2_sym --format machine --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const json j = json::parse(slurp(out));
  CHECK(j.at("transparent").size() == 2);
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));
  CHECK(tcat_cli("dump fibonacci --out " + (dir / "missing" / "x.json").string()).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("dump round-trips and user catalog directories are picked up") {
  const fs::path dir = scratch_dir();
  const Run d = tcat_cli("dump semion");
  REQUIRE(d.code == 0);
  CHECK(load_category(d.out).n() == 2);
  {
    std::ofstream f(dir / "my_semion.json");
    f << d.out;
  }
  const std::string env = "TCAT_CATALOG_DIR=" + dir.string();
  const Run list = tcat_cli("catalog-list", env);
  CHECK(list.out.find("my_semion") != std::string::npos);
  CHECK(tcat_cli("factorize my_semion --expect-modular", env).code == 0);
  CHECK(tcat_cli("validate " + (dir / "my_semion.json").string()).code == 0);
  fs::remove_all(dir);
}

TEST_CASE("tolerance overrides reach the pipeline") {
  // with an absurdly tight identity tolerance the fibonacci defects no longer count as zero
  const Run r = tcat_cli("factorize fibonacci --expect-modular --tolerance-structural 1e-30 --tolerance-identity 1e-30");
  CHECK(r.code == 1);
}
