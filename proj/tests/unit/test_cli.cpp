#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "extalg/error.hpp"
#include "extalg_cli/cli.hpp"
#include "extalg_cli/module_file.hpp"
#include "support/fixtures.hpp"
#include "support/sampler.hpp"

using namespace extalg;
using namespace extalg::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = EXTALG_GOLDEN_DIR;

struct Run {
  int code = 0;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string input(const std::string& name) { return (kGolden / "inputs" / name).string(); }

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("extalg_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("module files round trip") {
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    GradedModule m = random_module(rng, 1 + t % 3);
    if (t % 5 == 0) m = shift(m, static_cast<int>(t % 7) - 3);
    std::string text = cli::serialize_module(m);
    GradedModule back = cli::parse_module(text);
    CHECK(back == m);
    CHECK(cli::serialize_module(back) == text);
  }
  for (const char* f : {"K2.mod", "J1.mod", "lam_x0.mod", "lam_j2.mod", "K1.mod"}) {
    std::string text = slurp(input(f));
    CHECK(cli::serialize_module(cli::parse_module(text)) == text);
  }
}

TEST_CASE("omitted actions are zero") {
  GradedModule m = cli::parse_module("module\np 7\nr 1\ndegree 0 1\ndegree 1 1\naction 1 0\n1\n");
  CHECK(m.action(0, 0).is_zero());
  CHECK(m.action(1, 0) == Matrix::from_rows({{1}}, 7));
}

TEST_CASE("parse errors name the line") {
  auto err = [](const std::string& text) {
    try {
      cli::parse_module(text, "f.mod");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_input);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(err("modul\n").find("f.mod:1:") == 0);
  CHECK(err("module\np 6\nr 1\ndegree 0 1\n").find("f.mod:2:") == 0);
  CHECK(err("module\np 7\nr 1\ndegree 0 1\ndegree 1 1\naction 1 0\n1 2\n").find("f.mod:7:") == 0);
  CHECK(err("module\np 7\nr 1\ndegree 0 1\ndegree 1 1\naction 2 0\n1\n").find("f.mod:6:") == 0);
  // x_0^2 != 0.
  std::string sq = err("module\np 7\nr 1\ndegree 0 1\ndegree 1 1\ndegree 2 1\naction 0 0\n1\naction 0 1\n1\n");
  CHECK(sq.find("x_0^2") != std::string::npos);
}

TEST_CASE("make and validate") {
  fs::path d = scratch_dir();
  std::string f = (d / "K.mod").string();
  Run m = run_cli({"make", "simple", "-r", "2", "--out", f});
  CHECK(m.code == 0);
  CHECK(cli::read_module_file(f) == K(2));
  CHECK(run_cli({"validate", f}).code == 0);

  Run j = run_cli({"make", "radical", "-r", "2", "-k", "1", "--shift", "1"});
  CHECK(j.code == 0);
  CHECK(cli::parse_module(j.out) == J1(2));
  Run o = run_cli({"make", "syzygy-of-simple", "-r", "1", "-k", "2", "--shift", "2"});
  CHECK(cli::parse_module(o.out) == omega_K(1, 2));
  Run t = run_cli({"make", "twist", "--from", input("K2.mod"), "-k", "1"});
  CHECK(is_isomorphic(cli::parse_module(t.out), J1(2)).value);
  fs::remove_all(d);
}

TEST_CASE("documented examples") {
  Run lf = run_cli({"locally-free", input("lam_x0.mod")});
  CHECK(lf.code == 0);
  CHECK(lf.out.find("not locally free") == 0);

  Run k = run_cli({"koszul", "--bound", "8", input("lam_j2.mod")});
  CHECK(k.code == 0);
  CHECK(k.out.find("not Koszul, witness k=1") == 0);
}

TEST_CASE("exit codes") {
  fs::path d = scratch_dir();
  std::ofstream(d / "bad.mod") << "module\np 7\n";
  CHECK(run_cli({"validate", (d / "bad.mod").string()}).code == cli::kExitInvalidModule);
  CHECK(run_cli({"validate", (d / "missing.mod").string()}).code == cli::kExitInvalidModule);
  // Generated in two degrees: Koszulness is not defined.
  cli::write_module_file((d / "two.mod").string(), direct_sum(K(2), shift(K(2), -1)));
  CHECK(run_cli({"koszul", (d / "two.mod").string()}).code == cli::kExitPrecondition);
  CHECK(run_cli({"locally-free", "--no-summandwise", input("lam_j2.mod")}).code == cli::kExitPrecondition);
  CHECK(run_cli({"rank-table", "--depth", "1", input("K2.mod")}).code == cli::kExitOk);
  CHECK(run_cli({"rank-table", "--depth", "1", input("lam_x0.mod")}).code == cli::kExitPrecondition);
  CHECK(run_cli({"nonsense"}).code == cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == cli::kExitOk);
  CHECK(run_cli({"cohomology", "--twists", "3..1", input("K2.mod")}).code == cli::kExitUsage);
  fs::remove_all(d);
}

TEST_CASE("structured output matches the golden files") {
  struct Case {
    std::string golden;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases{
      {"validate_J1", {"validate", input("J1.mod")}},
      {"resolve_J1", {"resolve", "--betti", "--length", "4", input("J1.mod")}},
      {"koszul_lam_j2", {"koszul", input("lam_j2.mod")}},
      {"locally_free_lam_x0", {"locally-free", "--cross-check", input("lam_x0.mod")}},
      {"cohomology_K2", {"cohomology", "--twists", "-3..3", input("K2.mod")}},
      {"rank_J1", {"rank", input("J1.mod")}},
      {"hilbert_J1", {"hilbert", input("J1.mod")}},
      {"ar_seq_K1", {"ar-seq", input("K1.mod")}},
      {"ar_orbit_K1", {"ar-orbit", "--steps", "2", input("K1.mod")}},
      {"rank_table_J1", {"rank-table", "--depth", "1", input("J1.mod")}},
      {"serre_K2", {"serre-check", "--twists", "-2..2", input("K2.mod")}},
      {"make_radical", {"make", "radical", "-r", "2", "-k", "1", "--shift", "1"}},
  };
  for (const auto& c : cases) {
    std::vector<std::string> args{"--format", "structured", "--seed", "0"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    Run a = run_cli(args);
    INFO(c.golden << ": " << a.err);
    CHECK(a.code == 0);
    // Same seed, same bytes.
    CHECK(run_cli(args).out == a.out);
    // Paths differ between checkouts; the golden files store them relative to golden/.
    std::string got = a.out;
    const std::string root = kGolden.string() + "/";
    for (size_t pos; (pos = got.find(root)) != std::string::npos;) got.erase(pos, root.size());
    CHECK(got == slurp(kGolden / (c.golden + ".json")));
  }
}
