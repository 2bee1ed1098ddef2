#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "helpers.hpp"
#include "symext/cli.hpp"
#include "symext/convert.hpp"
#include "symext/generate.hpp"
#include "symext/instances.hpp"
#include "symext/io.hpp"

using namespace symext;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("symext_unit_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixture(const std::string& name) { return (fs::path(SYMEXT_FIXTURE_DIR) / name).string(); }

}  // namespace

TEST_SUITE("cli-io") {

TEST_CASE("state files round trip exactly") {
  TempDir dir;
  std::mt19937_64 rng(91);
  const DensityMatrix rho = symext::testing::random_state(SystemLayout({3, 2}), rng);
  save_state(rho, dir / "r.json", {std::uint64_t{91}, "unit"});
  const DensityMatrix back = load_state(dir / "r.json");
  CHECK(back.layout() == rho.layout());
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(format_state(back, {std::uint64_t{91}, "unit"}) == slurp(dir / "r.json"));
}

TEST_CASE("bosonic and block files round trip exactly") {
  TempDir dir;
  const auto inst = gen_random_extendible(3, 2, 17);
  save_blocks(inst.witness, dir / "w.json");
  const auto f = load_file(dir / "w.json");
  REQUIRE(std::holds_alternative<BlockState>(f));
  const auto& bs = std::get<BlockState>(f);
  CHECK(bs.k() == 3);
  for (const auto& [lam, X] : inst.witness.blocks()) CHECK((*bs.find(lam) - X).norm() == 0.0);

  const BosonicState sigma = sym_to_bos(inst.witness);
  const std::string text = format_bosonic(sigma);
  CHECK(text.find("\"layout_tag\": \"sym(3)\"") != std::string::npos);
  const auto g = parse_matrix_file(text);
  REQUIRE(std::holds_alternative<BosonicState>(g));
  CHECK((std::get<BosonicState>(g).matrix() - sigma.matrix()).norm() == 0.0);
}

TEST_CASE("qutrit-qubit layout is accepted") {
  std::mt19937_64 rng(93);
  const DensityMatrix rho = symext::testing::random_state(SystemLayout({3, 2}), rng);
  const std::string text = format_state(rho);
  CHECK(std::get<DensityMatrix>(parse_matrix_file(text)).dim() == 6);
}

TEST_CASE("malformed files raise parse errors") {
  const std::string good = format_state(singlet_state());
  CHECK_THROWS_AS(parse_matrix_file(good.substr(0, good.size() / 2)), ParseError);
  try {
    parse_matrix_file(good.substr(0, good.size() / 2));
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }
  CHECK_THROWS_AS(parse_matrix_file("[]"), ParseError);
  CHECK_THROWS_AS(parse_matrix_file(R"({"format_version": 2, "kind": "state", "layout": [1], "entries": [[1, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_file(R"({"format_version": 1, "kind": "matrix", "layout": [1], "entries": [[1, 0]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix_file(R"({"format_version": 1, "kind": "state", "layout": [2], "entries": [[1, 0]]})"), ParseError);
  const std::string non_hermitian =
      R"({"format_version": 1, "kind": "state", "layout": [2], "entries": [[0.5, 0], [0.3, 0], [0, 0], [0.5, 0]]})";
  CHECK_THROWS_AS(parse_matrix_file(non_hermitian), ParseError);
  CHECK_THROWS_AS(parse_matrix_file(R"({"format_version": 1, "kind": "state", "layout": [1], "entries": [["x", 0]]})"), ParseError);
  const std::string tag_mismatch =
      R"j({"format_version": 1, "kind": "bosonic", "layout": [1, 2], "layout_tag": "sym(3)", "entries": [[1, 0], [0, 0], [0, 0], [0, 0]]})j";
  CHECK_THROWS_AS(parse_matrix_file(tag_mismatch), ParseError);
  CHECK_THROWS(load_state("/nonexistent/symext.json"));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.0) == "-2");
}

TEST_CASE("check-sym on a product state") {
  TempDir dir;
  std::mt19937_64 rng(97);
  const DensityMatrix prod(tensor_product(symext::testing::random_density(2, rng), symext::testing::random_density(2, rng)),
                           SystemLayout({2, 2}));
  save_state(prod, dir / "p.json");
  const auto r = run({"check-sym", "--k", "4", "--in", dir / "p.json", "--cert", dir / "c.json"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("status: FEASIBLE") != std::string::npos);
  CHECK(r.out.rfind("command: symext check-sym", 0) == 0);
  CHECK(fs::exists(dir / "c.json"));
  CHECK(run({"verify", "--k", "4", "--ext", dir / "c.json", "--marginal", dir / "p.json", "--tol", "1e-7"}).code == kExitOk);
  CHECK(run({"check-bos", "--k", "4", "--in", dir / "p.json"}).code == kExitOk);
}

TEST_CASE("check-sym on the singlet") {
  TempDir dir;
  save_state(singlet_state(), dir / "s.json");
  const auto r = run({"check-sym", "--k", "2", "--in", dir / "s.json"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("status: INFEASIBLE") != std::string::npos);
  CHECK(run({"check-sym", "--k", "2", "--in", dir / "s.json", "--max-iter", "2"}).code == kExitUndecided);
  CHECK(run({"tilde", "--k", "2", "--in", dir / "s.json"}).code == kExitFail);
}

TEST_CASE("gen, convert and verify pipeline") {
  TempDir dir;
  CHECK(run({"gen", "--k", "4", "--dA", "2", "--seed", "7", "--out", dir / "g.json", "--witness", dir / "w.json"}).code == kExitOk);
  const auto c = run({"convert", "--k", "4", "--in", dir / "g.json", "--out", dir / "b.json"});
  CHECK(c.code == kExitOk);
  const auto v = run({"verify", "--k", "4", "--ext", dir / "b.json", "--marginal", dir / "g.json"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.find("status: PASS") != std::string::npos);

  CHECK(run({"convert", "--k", "4", "--in", dir / "w.json", "--out", dir / "b2.json"}).code == kExitOk);
  CHECK(run({"verify", "--k", "4", "--ext", dir / "b2.json", "--marginal", dir / "g.json"}).code == kExitOk);
  CHECK(run({"verify", "--k", "4", "--ext", dir / "w.json", "--marginal", dir / "g.json"}).code == kExitOk);
  CHECK(run({"tilde", "--k", "4", "--in", dir / "g.json", "--out", dir / "t.json"}).code == kExitOk);
  CHECK(fs::exists(dir / "t.json"));
}

TEST_CASE("gen is deterministic") {
  const auto a = run({"gen", "--k", "3", "--dA", "3", "--seed", "11", "--profile", "exclude-bosonic"});
  const auto b = run({"gen", "--k", "3", "--dA", "3", "--seed", "11", "--profile", "exclude-bosonic"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(std::holds_alternative<DensityMatrix>(parse_matrix_file(a.out)));
}

TEST_CASE("reports are deterministic apart from timing") {
  TempDir dir;
  save_state(gen_random_extendible(3, 2, 5).marginal, dir / "g.json");
  const std::vector<std::string> args{"check-sym", "--k", "3", "--in", dir / "g.json", "--no-timing"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.out.find("elapsed_seconds") == std::string::npos);
}

TEST_CASE("qutrit fixture has no two-bosonic extension") {
  const auto r = run({"check-bos2", "--dB", "3", "--in", fixture("qutrit_counterexample.state.json")});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("status: INFEASIBLE") != std::string::npos);
  const auto v = run({"verify", "--k", "2", "--ext", fixture("qutrit_fermionic_extension.state.json"), "--marginal",
                      fixture("qutrit_counterexample.state.json")});
  CHECK(v.code == kExitOk);
}

TEST_CASE("usage and input errors exit with 1") {
  TempDir dir;
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"check-sym", "--k", "2"}).code == kExitUsage);
  CHECK(run({"check-sym", "--k", "0", "--in", "x"}).code == kExitUsage);
  CHECK(run({"check-sym", "--k", "2", "--in", dir / "missing.json"}).code == kExitUsage);
  const std::string text = format_state(singlet_state());
  write_text(dir / "trunc.json", text.substr(0, text.size() - 20));
  const auto r = run({"check-sym", "--k", "2", "--in", dir / "trunc.json"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("parse error") != std::string::npos);
  save_state(qutrit_marginal(1, 2, 3), dir / "q.json");
  CHECK(run({"check-sym", "--k", "2", "--in", dir / "q.json"}).code == kExitUsage);
  CHECK(run({"gen", "--k", "3", "--dA", "9", "--seed", "1"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("basis export") {
  const auto r = run({"basis", "--k", "2"});
  CHECK(r.code == kExitOk);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
}

}
