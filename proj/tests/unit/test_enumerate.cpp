#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "sconn/errors.hpp"
#include "sconn/saddle_connection.hpp"

using namespace sconn;

namespace {

// Lattice oracle: on the once-marked unit torus saddle connections are the primitive
// integer vectors, one per sign class.
std::set<std::pair<long, long>> primitive_vectors(long lsq) {
  std::set<std::pair<long, long>> out;
  for (long x = 0; x * x <= lsq; ++x) {
    for (long y = -lsq; y <= lsq; ++y) {
      if (x * x + y * y > lsq || x * x + y * y == 0) continue;
      if (std::gcd(x, y) != 1) continue;
      if (x == 0 && y < 0) continue;
      out.insert({x, y});
    }
  }
  return out;
}

std::set<std::pair<long, long>> holonomies(const std::vector<SaddleConnection>& scs) {
  std::set<std::pair<long, long>> out;
  for (const auto& sc : scs) out.insert({sc.canonical_holonomy().x.get_num().get_si(), sc.canonical_holonomy().y.get_num().get_si()});
  return out;
}

}  // namespace

TEST_CASE("torus enumeration matches lattice oracle") {
  const auto& t = fixtures::torus();
  CHECK(holonomies(enumerate(t, 1)) == std::set<std::pair<long, long>>{{1, 0}, {0, 1}});
  auto five = enumerate(t, 5);
  CHECK(five.size() == 8);
  CHECK(holonomies(five) == primitive_vectors(5));
  for (long lsq : {2, 10, 50, 130}) {
    auto scs = enumerate(t, lsq);
    CHECK(scs.size() == primitive_vectors(lsq).size());
    CHECK(holonomies(scs) == primitive_vectors(lsq));
    for (const auto& sc : scs) CHECK(is_valid(t, sc));
  }
}

TEST_CASE("enumeration order and systole") {
  const auto& t = fixtures::torus();
  auto scs = enumerate(t, 20);
  CHECK(std::is_sorted(scs.begin(), scs.end(), enumeration_less));
  auto s = systole(t);
  CHECK(s.holonomy == Vec2(1, 0));
  auto sheared = triangulate(apply_matrix(build_from_origami(Origami{{0}, {0}}), Matrix2(1, 1, 0, 1)));
  CHECK(systole(sheared).holonomy == Vec2(1, 0));
  CHECK(systole(fixtures::l_origami()).length2() == 1);
  CHECK_THROWS_AS(enumerate(t, 0), PreconditionError);
}

TEST_CASE("L origami: unit saddle connections") {
  const auto& t = fixtures::l_origami();
  auto unit = enumerate(t, 1);
  // three horizontal and three vertical unit edges of the tiling
  CHECK(unit.size() == 6);
  for (const auto& sc : unit) CHECK(sc.is_edge());
  CHECK(enumerate(t, Rational(99, 100)).empty());
}

TEST_CASE("monotonicity in the bound") {
  for (const auto* t : {&fixtures::torus(), &fixtures::l_origami(), &fixtures::octagon()}) {
    auto small = enumerate(*t, 8);
    auto big = enumerate(*t, 20);
    std::set<std::vector<int>> keys;
    for (const auto& sc : big) keys.insert(sc.key());
    for (const auto& sc : small) CHECK(keys.count(sc.key()) == 1);
    for (const auto& sc : big) CHECK(is_valid(*t, sc));
  }
}

TEST_CASE("unimodular equivariance on the torus") {
  Surface base = build_from_origami(Origami{{0}, {0}});
  for (auto m : {Matrix2(1, 1, 0, 1), Matrix2(2, 1, 1, 1), Matrix2(1, 0, -3, 1), Matrix2(0, -1, 1, 0)}) {
    auto image = triangulate(apply_matrix(base, m));
    // every primitive vector of the image surface is the image of a primitive vector
    auto scs = enumerate(image, 30);
    CHECK(holonomies(scs) == primitive_vectors(30));
    std::set<Slope> got, expect;
    for (const auto& sc : scs) got.insert(slope_of(sc));
    // preimages range over all primitive lattice vectors
    for (long x = -40; x <= 40; ++x) {
      for (long y = -40; y <= 40; ++y) {
        if (std::gcd(x, y) != 1) continue;
        Vec2 w = m.apply(Vec2(x, y));
        if (norm2(w) <= 30) expect.insert(Slope(w));
      }
    }
    CHECK(got == expect);
  }
}

TEST_CASE("pillowcase and octagon produce valid saddle connections") {
  for (const auto* t : {&fixtures::pillowcase(), &fixtures::octagon()}) {
    auto scs = enumerate(*t, 30);
    CHECK(!scs.empty());
    std::set<std::vector<int>> keys;
    for (const auto& sc : scs) {
      CHECK(is_valid(*t, sc));
      CHECK(is_canonical_direction(sc.canonical_holonomy()));
      CHECK(canonicalize(*t, reversed(*t, sc)).key() == sc.key());
      keys.insert(sc.key());
    }
    CHECK(keys.size() == scs.size());
  }
}

TEST_CASE("pillowcase lengths follow the rectangle lattice") {
  // the pillowcase is the 2x1 rectangle torus folded by z -> -z; holonomies of its
  // saddle connections are (2a, b) multiples reaching pole to pole: all vectors
  // (p, q) with p, q integers and gcd(p, q) = 1 after halving p where possible.
  auto scs = enumerate(fixtures::pillowcase(), 5);
  std::set<Slope> slopes;
  for (const auto& sc : scs) slopes.insert(slope_of(sc));
  CHECK(slopes.count(parse_slope("0")) == 1);
  CHECK(slopes.count(parse_slope("1/0")) == 1);
}

TEST_CASE("slopes") {
  CHECK(Slope(Vec2(2, 4)) == Slope(Vec2(1, 2)));
  CHECK(Slope(Vec2(0, -3)) == Slope(Vec2(0, 1)));
  CHECK(Slope(Vec2(-3, 6)) == Slope(Vec2(3, -6)));
  CHECK(Slope(Vec2(-3, 6)).x == 1);
  CHECK(Slope(Vec2(Rational(1, 2), Rational(1, 3))) == Slope(Vec2(3, 2)));
  CHECK(to_string(parse_slope("-1/4")) == "-1/4");
  CHECK(parse_slope("-1/4").direction() == Vec2(4, -1));
  CHECK(parse_slope("1/0") == Slope(Vec2(0, 1)));
  CHECK(parse_slope("-1/0") == Slope(Vec2(0, 1)));
  CHECK(parse_slope("2") == Slope(Vec2(1, 2)));
  CHECK_THROWS_AS(parse_slope("0/0"), InputError);
  CHECK_THROWS_AS(parse_slope("a/b"), InputError);
}
