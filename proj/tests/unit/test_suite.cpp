#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sconn/errors.hpp"
#include "sconn/suite.hpp"

using namespace sconn;

namespace {

RunConfig small_torus() {
  RunConfig c;
  c.surface_path = std::string(SCONN_DATA_DIR) + "/torus.surf";
  c.lsq = 200;
  c.k_max = 1;
  c.pairs = 10;
  c.quadruples = 5;
  c.triangles = 8;
  c.qi_samples = 60;
  c.seed = 11;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("square torus detection") {
  CHECK(is_square_torus(fixtures::torus()));
  CHECK_FALSE(is_square_torus(fixtures::l_origami()));
  CHECK_FALSE(is_square_torus(fixtures::pillowcase()));
}

TEST_CASE("saddle connection selection") {
  const auto& t = fixtures::torus();
  CHECK(select_saddle_connection(t, "2,1").holonomy == Vec2(2, 1));
  CHECK(select_saddle_connection(t, "-2,-1").canonical_holonomy() == Vec2(2, 1));
  CHECK_THROWS_AS(select_saddle_connection(t, "2,1:1"), InputError);
  CHECK_THROWS_AS(select_saddle_connection(t, "4,2"), InputError);
  CHECK_THROWS_AS(select_saddle_connection(t, "0,0"), InputError);
  CHECK_THROWS_AS(select_saddle_connection(t, "2"), InputError);
  // three horizontal saddle connections of length 1 on the L-origami
  const auto& l = fixtures::l_origami();
  auto a = select_saddle_connection(l, "1,0:0");
  auto b = select_saddle_connection(l, "1,0:1");
  CHECK_FALSE(a == b);
}

TEST_CASE("suite runs are deterministic and pass on the torus") {
  namespace fs = std::filesystem;
  auto base = fs::temp_directory_path() / "sconn_suite_test";
  fs::remove_all(base);
  auto c = small_torus();
  c.out_dir = (base / "a").string();
  auto r1 = run_suite(c);
  c.out_dir = (base / "b").string();
  auto r2 = run_suite(c);
  CHECK(r1.pass());
  CHECK(exit_code(r1) == kExitPass);
  CHECK(r1.report == r2.report);
  for (const char* f : {"report.txt", "sc_graph.dot", "slope_graph.dot", "hasse.dot", "slices.csv"}) {
    INFO(f);
    CHECK(fs::exists(base / "a" / f));
    CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
    CHECK_FALSE(fs::exists(base / "a" / (std::string(f) + ".tmp")));
  }
  // every constant in scope is covered
  std::set<std::string> constants;
  for (const auto& cert : r1.certificates) constants.insert(cert.constants);
  for (const char* k : {"3", "2", "4", "17", "29", "(2,1)", "(18,17)", "(30,29)"}) CHECK(constants.count(k) == 1);
  fs::remove_all(base);
}

TEST_CASE("suite configuration errors") {
  auto c = small_torus();
  c.kinds = {"nonsense"};
  CHECK_THROWS_AS(run_suite(c), InputError);
  c = small_torus();
  c.surface_path = "/nonexistent.surf";
  CHECK_THROWS_AS(run_suite(c), InputError);
  c = small_torus();
  c.ladder_lsq = 1000;
  CHECK_THROWS_AS(run_suite(c), InputError);
  c = small_torus();
  c.k_max = 3;
  CHECK_THROWS_AS(run_suite(c), StabilityError);
  c = small_torus();
  c.theta0 = parse_slope("13/17");
  CHECK_THROWS_AS(run_suite(c), InputError);
}

TEST_CASE("kind selection") {
  auto c = small_torus();
  c.kinds = {"bottleneck", "linking"};
  auto r = run_suite(c);
  REQUIRE(r.certificates.size() == 2);
  CHECK(r.certificates[0].kind == "bottleneck");
  CHECK(r.certificates[1].kind == "linking");
  // the torus has no linked disjoint pairs of distinct slopes
  CHECK(r.certificates[1].checked == 0);
  CHECK(r.pass());
}

TEST_CASE("failing certificates set the exit code") {
  SuiteResult r;
  Certificate ok, bad;
  bad.record(false, "x");
  r.certificates = {ok};
  CHECK(exit_code(r) == kExitPass);
  r.certificates.push_back(bad);
  CHECK(exit_code(r) == kExitCertificateFailure);
}

TEST_CASE("atomic writes") {
  namespace fs = std::filesystem;
  auto p = fs::temp_directory_path() / "sconn_atomic.txt";
  write_file_atomic(p.string(), "one");
  write_file_atomic(p.string(), "two");
  CHECK(slurp(p) == "two");
  fs::remove(p);
  CHECK_THROWS_AS(write_file_atomic("/nonexistent-dir/x.txt", "y"), IoError);
}
