#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sconn/errors.hpp"
#include "sconn/farey.hpp"
#include "sconn/quasitree.hpp"

using namespace sconn;

namespace {

const Slope kVertical = parse_slope("1/0");

const TruncatedGraph& torus_slopes(int lsq) {
  static std::map<int, TruncatedGraph> cache;
  auto it = cache.find(lsq);
  if (it == cache.end())
    it = cache.emplace(lsq, build_slope_graph(build_sc_graph(fixtures::torus(), Rational(lsq)))).first;
  return it->second;
}

int oracle(const Slope& a, const Slope& b) { return farey_distance(to_farey(a), to_farey(b)); }

std::set<std::string> slope_names(const TruncatedGraph& gs, const std::vector<int>& vs) {
  std::set<std::string> out;
  for (int v : vs) out.insert(to_string(gs.slopes[v]));
  return out;
}

}  // namespace

TEST_CASE("balls around the vertical slope") {
  const auto& gs = torus_slopes(50);
  CHECK(slope_names(gs, ball(gs, kVertical, 0)) == std::set<std::string>{"1/0"});

  // Farey neighbours of 1/0 are the integers
  std::set<std::string> expect{"1/0"};
  for (int n = -7; n <= 7; ++n)
    if (1 + n * n <= 50) expect.insert(to_string(Slope::from_ratio(n, 1)));
  CHECK(slope_names(gs, ball(gs, kVertical, 1)) == expect);

  // radius 2: integers and n +- 1/k
  const auto& g2 = torus_slopes(300);
  std::set<std::string> expect2;
  for (const auto& s : g2.slopes) {
    Integer r = s.x == 0 ? Integer(0) : Integer(((s.y % s.x) + s.x) % s.x);
    if (s.x <= 1 || r == 1 || r == s.x - 1) expect2.insert(to_string(s));
  }
  CHECK(slope_names(g2, ball(g2, kVertical, 2)) == expect2);

  CHECK_THROWS_AS(ball(gs, parse_slope("7/11"), 1), PreconditionError);
}

TEST_CASE("truncated distances equal Farey distances") {
  const auto& gs = torus_slopes(600);
  auto s = build_slices(gs, kVertical, 2);
  for (int v = 0; v < gs.size(); ++v) CHECK(s.distance[v] == oracle(kVertical, gs.slopes[v]));
}

TEST_CASE("complement intervals") {
  auto one = complement_intervals({kVertical}, 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lo == kVertical);
  CHECK(one[0].hi == kVertical);
  CHECK(arc_contains(kVertical, kVertical, parse_slope("3")));
  CHECK_FALSE(arc_contains(kVertical, kVertical, kVertical));
  CHECK_THROWS_AS(complement_intervals({}, 0), PreconditionError);

  const auto& gs = torus_slopes(50);
  std::vector<Slope> b1;
  for (int v : ball(gs, kVertical, 1)) b1.push_back(gs.slopes[v]);
  auto gaps = complement_intervals(b1, 1);
  CHECK(gaps.size() == b1.size());
  int unit = 0;
  for (const auto& g : gaps) {
    if (g.lo == kVertical || g.hi == kVertical) continue;
    // (n, n+1)
    CHECK(g.lo.x == 1);
    CHECK(g.hi.x == 1);
    CHECK(g.hi.y == g.lo.y + 1);
    ++unit;
  }
  CHECK(unit == static_cast<int>(b1.size()) - 2);
}

TEST_CASE("arc containment") {
  auto s = [](const char* x) { return parse_slope(x); };
  CHECK(arc_contains(s("0"), s("1"), s("1/2")));
  CHECK_FALSE(arc_contains(s("0"), s("1"), s("2")));
  CHECK_FALSE(arc_contains(s("0"), s("1"), s("0")));
  // through the vertical
  CHECK(arc_contains(s("2"), s("-2"), s("1/0")));
  CHECK(arc_contains(s("2"), s("-2"), s("-3")));
  CHECK_FALSE(arc_contains(s("2"), s("-2"), s("0")));
  // the two arcs between p and q split the rest of RP^1
  const auto& gs = torus_slopes(60);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, gs.size() - 1);
  for (int k = 0; k < 300; ++k) {
    const auto &p = gs.slopes[pick(rng)], &q = gs.slopes[pick(rng)], &x = gs.slopes[pick(rng)];
    if (p == q || x == p || x == q) continue;
    CHECK(arc_contains(p, q, x) != arc_contains(q, p, x));
  }
}

TEST_CASE("interval tree structure") {
  const auto& gs = torus_slopes(300);
  auto t0 = build_interval_tree(gs, kVertical, 0);
  CHECK(t0.size() == 1);
  CHECK(t0.nodes[0].children.empty());
  CHECK_THROWS_AS(build_interval_tree(gs, kVertical, -1), PreconditionError);

  auto t = build_interval_tree(gs, kVertical, 2);
  for (int n = 1; n < t.size(); ++n) {
    const auto& node = t.nodes[n];
    const auto& p = t.nodes[node.parent];
    CHECK(p.level == node.level - 1);
    bool touches = node.lo == p.lo || node.lo == p.hi || node.hi == p.lo || node.hi == p.hi;
    if (!p.frontier) CHECK(node.frontier == touches);
    if (!node.frontier) {
      CHECK(arc_contains(p.lo, p.hi, node.lo));
      CHECK(arc_contains(p.lo, p.hi, node.hi));
    }
    // endpoints are ball elements at distance exactly level unless shared with the parent
    if (!node.frontier) {
      CHECK(oracle(kVertical, node.lo) == node.level);
      CHECK(oracle(kVertical, node.hi) == node.level);
    }
  }
  int unit = t.find(1, parse_slope("0"), parse_slope("1"));
  REQUIRE(unit >= 0);
  CHECK_FALSE(t.nodes[unit].frontier);
  CHECK(t.locate(1, parse_slope("1/2")) == unit);
  CHECK(t.locate(1, parse_slope("1")) == -1);
  // the gaps next to the basepoint are truncation artifacts
  for (int id : t.levels[1]) {
    const auto& n = t.nodes[id];
    CHECK(n.frontier == (n.lo == kVertical || n.hi == kVertical));
  }

  // monotone subdivision on nodes present in both truncations
  auto big = build_interval_tree(torus_slopes(600), kVertical, 2);
  int compared = 0;
  for (int n = 0; n < t.size(); ++n) {
    const auto& node = t.nodes[n];
    if (node.frontier) continue;
    int j = big.find(node.level, node.lo, node.hi);
    if (j < 0) continue;
    CHECK(big.child_count(j) >= t.child_count(n));
    ++compared;
  }
  CHECK(compared > 10);
  CHECK(big.child_count(0) > t.child_count(0));
}

TEST_CASE("slices") {
  const auto& gs = torus_slopes(600);
  auto s = build_slices(gs, kVertical, 2);
  CHECK(slope_names(gs, s.members[0]) == slope_names(gs, ball(gs, kVertical, 3)));
  std::size_t assigned = 0;
  for (int n = 0; n < s.tree.size(); ++n) {
    const auto& node = s.tree.nodes[n];
    assigned += s.members[n].size();
    for (int v : s.members[n]) {
      if (node.level == 0) continue;
      CHECK(oracle(kVertical, gs.slopes[v]) == node.level + 3);
      CHECK(arc_contains(node.lo, node.hi, gs.slopes[v]));
    }
  }
  std::size_t in_range = 0;
  for (int d : s.distance) in_range += d >= 0 && d <= 5;
  CHECK(assigned == in_range);
  // 2/5 is at distance 3, 5/12 at 4 inside (0, 1)
  int unit = s.tree.find(1, parse_slope("0"), parse_slope("1"));
  CHECK(s.node_of[gs.find_slope(parse_slope("2/5"))] == 0);
  CHECK(s.node_of[gs.find_slope(parse_slope("5/12"))] == unit);
}

TEST_CASE("tree distance") {
  auto t = build_interval_tree(torus_slopes(300), kVertical, 2);
  int a = t.find(1, parse_slope("0"), parse_slope("1"));
  int b = t.find(1, parse_slope("1"), parse_slope("2"));
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK(tree_distance(t, a, a) == 0);
  CHECK(tree_distance(t, 0, a) == 1);
  CHECK(tree_distance(t, a, b) == 2);
  int c = t.find(2, parse_slope("1/3"), parse_slope("1/2"));
  int d = t.find(2, parse_slope("3/2"), parse_slope("5/3"));
  REQUIRE(c >= 0);
  REQUIRE(d >= 0);
  CHECK(t.nodes[c].parent == a);
  CHECK(t.nodes[d].parent == b);
  CHECK(tree_distance(t, c, d) == 4);
  CHECK(tree_distance(t, c, a) == 1);
  for (int x : t.nodes[a].children)
    for (int y : t.nodes[a].children)
      if (x != y) CHECK(tree_distance(t, x, y) == 2);
  CHECK_THROWS_AS(tree_distance(t, 0, t.size()), PreconditionError);
}

TEST_CASE("stabilized slice runs") {
  auto run = build_slice_run(fixtures::torus(), kVertical, 1, Rational(200), Rational(3, 2));
  CHECK(run.lsqs.size() == 3);
  CHECK(run.lsqs[2] == Rational(450));
  CHECK(run.slices[0].tree.nodes[0].stable);
  for (const auto& c : certify_slices(run)) {
    INFO(c.kind << " " << c.constants);
    for (const auto& w : c.witnesses) INFO(w);
    CHECK(c.pass);
    CHECK(c.checked > 0);
  }

  std::mt19937_64 rng(5);
  auto qi = qi_certificate(run, 90, rng, oracle);
  REQUIRE(qi.size() == 2);
  for (const auto& c : qi) {
    CHECK(c.pass);
    CHECK(c.semantics == Semantics::proves_true_claim);
  }
  std::mt19937_64 rng2(5);
  auto trunc = qi_certificate(run, 90, rng2);
  CHECK(trunc[0].semantics == Semantics::at_truncation);
  CHECK(trunc[0].pass);

  try {
    build_slice_run(fixtures::torus(), kVertical, 2, Rational(40), Rational(3, 2));
    FAIL("expected a stability refusal");
  } catch (const StabilityError& e) {
    CHECK(std::string(e.suggestion()).find("L^2 >=") != std::string::npos);
  }
  CHECK_THROWS_AS(build_slice_run(fixtures::torus(), kVertical, 1, Rational(200), Rational(1)), PreconditionError);
}

TEST_CASE("shallow L-origami runs are refused") {
  // slope distances from 0 stay <= 2 until L^2 is near 1000
  CHECK_THROWS_AS(build_slice_run(fixtures::l_origami(), parse_slope("0"), 0, Rational(40), Rational(3, 2)),
                  StabilityError);
  auto gs = build_slope_graph(build_sc_graph(fixtures::l_origami(), Rational(40)));
  auto s = build_slices(gs, parse_slope("0"), 0);
  CHECK(s.members[0].size() == static_cast<std::size_t>(gs.size()));
}

TEST_CASE("tree and slice emitters") {
  auto run = build_slice_run(fixtures::torus(), kVertical, 1, Rational(200), Rational(3, 2));
  std::ostringstream dot, csv;
  write_tree_dot(dot, run.slices[0].tree);
  write_slice_csv(csv, run.slices[0], run.slope_graphs[0]);
  CHECK(dot.str().rfind("digraph hasse {", 0) == 0);
  CHECK(dot.str().find("n0 -> n") != std::string::npos);
  std::size_t assigned = 0;
  for (int n : run.slices[0].node_of) assigned += n >= 0;
  std::string text = csv.str();
  CHECK(text.rfind("slope,level,interval,distance\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == assigned + 1);
}
