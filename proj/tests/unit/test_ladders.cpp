#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "sconn/errors.hpp"
#include "sconn/farey.hpp"
#include "sconn/ladders.hpp"

using namespace sconn;

namespace {

// The unique saddle connection of a slope on the once-marked torus.
SaddleConnection torus_sc(const char* slope) {
  Slope s = parse_slope(slope);
  Vec2 d = s.direction();
  for (const auto& sc : enumerate(fixtures::torus(), norm2(d)))
    if (slope_of(sc) == s) return sc;
  throw std::logic_error("slope not found");
}

std::vector<std::string> names(const std::vector<Slope>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(to_string(s));
  return out;
}

using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("torus ladders reproduce the Farey polygon") {
  const auto& t = fixtures::torus();
  auto lp = ladder_paths(t, torus_sc("2"), torus_sc("-1/4"));
  CHECK(names(lp.right.slopes()) == Names{"-1/4", "0/1", "1/1", "2/1"});
  CHECK(names(lp.left.slopes()) == Names{"-1/4", "-1/3", "-1/2", "-1/1", "1/0", "2/1"});

  lp = ladder_paths(t, torus_sc("1/0"), torus_sc("2/3"));
  CHECK(names(lp.right.slopes()) == Names{"2/3", "1/1", "1/0"});
  CHECK(names(lp.left.slopes()) == Names{"2/3", "1/2", "0/1", "1/0"});
  CHECK(lp.right.entries.size() == lp.left.entries.size());

  auto adjacent = ladder_paths(t, torus_sc("1/2"), torus_sc("1/3"));
  CHECK(adjacent.right.entries.size() == 2);
  CHECK(adjacent.left.entries.size() == 2);
  CHECK(adjacent.right.entries.front() == torus_sc("1/3"));

  auto [r, l] = farey_ladder(parse_slope("-1/4"), parse_slope("2"));
  CHECK(names(r) == Names{"-1/4", "0/1", "1/1", "2/1"});
  CHECK(names(l) == Names{"-1/4", "-1/3", "-1/2", "-1/1", "1/0", "2/1"});
  auto [r2, l2] = farey_ladder(parse_slope("1/0"), parse_slope("2/3"));
  CHECK(names(r2) == Names{"1/0", "0/1", "1/2", "2/3"});
  CHECK(names(l2) == Names{"1/0", "1/1", "2/3"});
  auto [r3, l3] = farey_ladder(parse_slope("1/0"), parse_slope("5"));
  CHECK(r3 == l3);

  CHECK_THROWS_AS(ladder_paths(t, torus_sc("2"), torus_sc("2")), PreconditionError);
  CHECK_THROWS_AS(ladder_paths(fixtures::l_origami(), torus_sc("2"), torus_sc("1")), PreconditionError);
}

TEST_CASE("random torus ladders agree with the Farey fan") {
  const auto& t = fixtures::torus();
  auto scs = enumerate(t, 200);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, scs.size() - 1);
  for (int k = 0; k < 60; ++k) {
    const auto& a = scs[pick(rng)];
    const auto& b = scs[pick(rng)];
    if (a == b) continue;
    auto lp = ladder_paths(t, a, b);
    auto [right, left] = farey_ladder(slope_of(b), slope_of(a));
    CHECK(lp.right.slopes() == right);
    CHECK(lp.left.slopes() == left);
    auto cert = check_ladder_properties(t, lp);
    CHECK(cert.pass);
    for (const auto& w : cert.witnesses) INFO(w);
  }
}

TEST_CASE("ladder properties on other surfaces") {
  std::vector<std::pair<const TriangulatedSurface*, long>> cases = {
      {&fixtures::l_origami(), 20}, {&fixtures::octagon(), 30}, {&fixtures::pillowcase(), 12}};
  std::mt19937_64 rng(8);
  for (auto [t, lsq] : cases) {
    auto scs = enumerate(*t, lsq);
    std::uniform_int_distribution<std::size_t> pick(0, scs.size() - 1);
    int nontrivial = 0;
    for (int k = 0; k < 25; ++k) {
      const auto& a = scs[pick(rng)];
      const auto& b = scs[pick(rng)];
      if (a == b) continue;
      auto lp = ladder_paths(*t, a, b);
      nontrivial += lp.right.entries.size() > 2;
      auto cert = check_ladder_properties(*t, lp);
      for (const auto& w : cert.witnesses) INFO(w);
      CHECK(cert.pass);
      CHECK(cert.failures == 0);
    }
    CHECK(nontrivial > 0);
  }
}

TEST_CASE("normalization frame") {
  auto alpha = torus_sc("1/0");
  auto beta = torus_sc("0");
  CHECK(normalized_direction(alpha, beta, Vec2(1, 0)) == Vec2(1, 0));
  CHECK(normalized_direction(alpha, beta, Vec2(0, 1)) == Vec2(0, 1));
  CHECK(cross(normalized_direction(beta, alpha, Vec2(1, 0)), Vec2(0, 1)) == 0);
  CHECK_THROWS_AS(normalized_direction(alpha, alpha, Vec2(1, 0)), PreconditionError);
}

TEST_CASE("bottleneck certificates") {
  const auto& t = fixtures::torus();
  auto g = build_sc_graph(t, Rational(120));
  auto alpha = torus_sc("2"), beta = torus_sc("-1/4");
  auto lp = ladder_paths(t, alpha, beta);
  // the ladder itself
  std::vector<int> own;
  for (const auto& e : lp.right.dedup()) own.push_back(vertex_of(g, e));
  auto c0 = check_bottleneck(lp.right, own, g);
  CHECK(c0.pass);
  CHECK(c0.semantics == Semantics::proves_true_claim);

  // adjacent endpoints: everything is within 1
  auto near = ladder_paths(t, torus_sc("1/2"), torus_sc("1/3"));
  auto a = vertex_of(g, near.right.target), b = vertex_of(g, near.right.source);
  auto c1 = check_bottleneck(near.left, {b, a}, g);
  CHECK(c1.pass);

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> any(0, g.size() - 1);
  int ia = vertex_of(g, alpha), ib = vertex_of(g, beta);
  for (int k = 0; k < 30; ++k) {
    auto path = detour_path(g.graph, ib, any(rng), ia);
    REQUIRE_FALSE(path.empty());
    CHECK(check_bottleneck(lp.right, path, g).pass);
    CHECK(check_bottleneck(lp.left, path, g).pass);
  }
  CHECK_THROWS_AS(check_bottleneck(lp.right, {ia, ib}, g), PreconditionError);
}

TEST_CASE("linking slopes") {
  const auto& t = fixtures::torus();
  // the example quadruple has crossing a2, a4: Farey edges never link
  CHECK_THROWS_AS(check_linking(t, torus_sc("0"), torus_sc("1"), torus_sc("1/0"), torus_sc("-1")),
                  PreconditionError);
  CHECK_THROWS_AS(check_linking(t, torus_sc("0"), torus_sc("1/0"), torus_sc("1"), torus_sc("2")),
                  PreconditionError);

  // on the L-origami parallel classes make linked disjoint pairs possible
  const auto& l = fixtures::l_origami();
  auto scs = enumerate(l, 20);
  int done = 0;
  for (std::size_t i = 0; i < scs.size() && done < 30; ++i)
    for (std::size_t j = 0; j < scs.size() && done < 30; ++j)
      for (std::size_t k = 0; k < scs.size() && done < 30; ++k)
        for (std::size_t m = 0; m < scs.size() && done < 30; m += 3) {
          Slope s[4] = {slope_of(scs[i]), slope_of(scs[j]), slope_of(scs[k]), slope_of(scs[m])};
          bool distinct = true;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) distinct = distinct && !(s[x] == s[y]);
          if (!distinct || !slopes_separated(s[0], s[2], s[1], s[3])) continue;
          if (crosses(l, scs[i], scs[k]) || crosses(l, scs[j], scs[m])) continue;
          auto r = check_linking(l, scs[i], scs[j], scs[k], scs[m]);
          CHECK(r.certificate.pass);
          REQUIRE(r.witness.has_value());
          CHECK(r.distance <= 2);
          ++done;
        }
  CHECK(done == 30);
}

TEST_CASE("slope separation") {
  auto s = [](const char* x) { return parse_slope(x); };
  CHECK(slopes_separated(s("0"), s("1/0"), s("1"), s("-1")));
  CHECK_FALSE(slopes_separated(s("0"), s("1/0"), s("1"), s("2")));
  CHECK(slopes_separated(s("-1"), s("1"), s("0"), s("1/0")));
  CHECK(slopes_separated(s("1"), s("-1"), s("1/0"), s("0")));
}

TEST_CASE("four-centres on the torus") {
  const auto& t = fixtures::torus();
  auto g = build_sc_graph(t, Rational(200));
  auto fc = four_centre(t, torus_sc("1/0"), torus_sc("0"), torus_sc("1"), g);
  REQUIRE(fc.triple.has_value());
  CHECK(fc.certificate.pass);
  for (int d : fc.side_distance) CHECK(d <= 1);

  fc = four_centre(t, torus_sc("1/0"), torus_sc("2/5"), torus_sc("-3/7"), g);
  REQUIRE(fc.triple.has_value());
  CHECK(fc.certificate.pass);
  const auto& tr = *fc.triple;
  CHECK_FALSE(crosses(t, tr[0], tr[1]));
  CHECK_FALSE(crosses(t, tr[1], tr[2]));
  CHECK_FALSE(crosses(t, tr[0], tr[2]));
  for (int d : fc.side_distance) CHECK(d <= 4);
  // sides are exact geodesics
  CHECK(fc.sides[0].size() - 1 == static_cast<std::size_t>(farey_distance({0, 1}, {5, 2})));
  CHECK_THROWS_AS(four_centre(t, torus_sc("1"), torus_sc("1"), torus_sc("0"), g), PreconditionError);
}
