#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sconn/errors.hpp"
#include "sconn/farey.hpp"
#include "sconn/geodesics.hpp"
#include "sconn/graphs.hpp"

using namespace sconn;

namespace {

int vertex_of(const TruncatedGraph& g, long x, long y) { return g.find_holonomy(Vec2(x, y)); }

int slope_vertex(const TruncatedGraph& g, const char* s) { return g.find_slope(parse_slope(s)); }

// Random connected graph: a random tree plus extra edges.
Graph random_graph(int n, int extra, std::mt19937_64& rng) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int e = 0; e < extra; ++e) {
    int a = pick(rng), b = pick(rng);
    if (a != b) g.add_edge(a, b);
  }
  return g;
}

// Greedy random partition whose classes have g-diameter <= K.
std::vector<int> random_partition(const Graph& g, int K, std::mt19937_64& rng) {
  const int n = g.size();
  std::vector<std::vector<int>> dist(n);
  for (int v = 0; v < n; ++v) dist[v] = bfs_distances(g, v);
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int v : order) {
    if (cls[v] >= 0) continue;
    std::vector<int> members{v};
    cls[v] = next;
    std::vector<int> cand;
    for (int w = 0; w < n; ++w)
      if (cls[w] < 0 && dist[v][w] <= K) cand.push_back(w);
    std::shuffle(cand.begin(), cand.end(), rng);
    for (int w : cand) {
      if (std::bernoulli_distribution(0.7)(rng) == false) continue;
      bool ok = true;
      for (int m : members) ok = ok && dist[m][w] <= K;
      if (!ok) continue;
      members.push_back(w);
      cls[w] = next;
    }
    ++next;
  }
  return cls;
}

}  // namespace

TEST_CASE("sc-graph examples") {
  auto g = build_sc_graph(fixtures::torus(), Rational(2));
  REQUIRE(g.size() == 4);
  CHECK(g.graph.edge_count() == 5);
  int a = vertex_of(g, 1, 1), b = vertex_of(g, 1, -1);
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK_FALSE(g.graph.adjacent(a, b));
  CHECK(g.graph.adjacent(vertex_of(g, 1, 0), vertex_of(g, 0, 1)));

  // the L-origami has six unit saddle connections, pairwise disjoint
  auto l = build_sc_graph(fixtures::l_origami(), Rational(1));
  CHECK(l.size() == 6);
  CHECK(l.graph.edge_count() == 15);

  auto s = build_sc_graph(fixtures::torus(), Rational(1));
  for (int v = 0; v < s.size(); ++v) CHECK_FALSE(s.graph.adjacent(v, v));
}

TEST_CASE("sc-graph edges agree with exact crossing tests") {
  std::vector<std::pair<const TriangulatedSurface*, long>> cases = {
      {&fixtures::torus(), 40}, {&fixtures::l_origami(), 13}, {&fixtures::pillowcase(), 12},
      {&fixtures::octagon(), 30}};
  Matrix2 m(Rational(3, 2), Rational(1, 3), Rational(1, 5), 1);
  auto sheared = triangulate(apply_matrix(build_from_origami(Origami{{0}, {0}}), m));
  cases.emplace_back(&sheared, 30);
  auto two = fixtures::origami(4, "(1 2)(3 4)", "(1 3)");
  cases.emplace_back(&two, 10);
  for (auto [t, lsq] : cases) {
    auto g = build_sc_graph(*t, Rational(lsq));
    std::vector<Trace> traces;
    for (const auto& sc : g.scs) traces.emplace_back(*t, sc);
    int disjoint = 0;
    for (int i = 0; i < g.size(); ++i) {
      CHECK_FALSE(g.graph.adjacent(i, i));
      for (int j = i + 1; j < g.size(); ++j) {
        bool adj = !crosses(*t, traces[i], traces[j]);
        disjoint += adj;
        CHECK(g.graph.adjacent(i, j) == adj);
        CHECK(g.graph.adjacent(j, i) == adj);
      }
    }
    CHECK(disjoint > 0);
  }
}

TEST_CASE("truncation is monotone") {
  const auto& t = fixtures::l_origami();
  auto big = build_sc_graph(t, Rational(40));
  auto small = build_sc_graph(t, Rational(17));
  auto restricted = restrict_sc_graph(big, Rational(17));
  REQUIRE(restricted.size() == small.size());
  for (int i = 0; i < small.size(); ++i) CHECK(restricted.scs[i] == small.scs[i]);
  CHECK(restricted.graph.adj == small.graph.adj);
  for (int u = 0; u < small.size(); ++u) {
    auto ds = bfs_distances(small.graph, u);
    auto db = bfs_distances(big.graph, u);
    for (int v = 0; v < small.size(); ++v) {
      REQUIRE(ds[v] != kDisconnected);
      CHECK(db[v] <= ds[v]);
    }
  }
  CHECK_THROWS_AS(restrict_sc_graph(small, Rational(40)), PreconditionError);
}

TEST_CASE("slope graph of the torus is the Farey graph") {
  auto g = build_slope_graph(build_sc_graph(fixtures::torus(), Rational(60)));
  CHECK(g.size() == static_cast<int>(g.scs.size()));
  for (int i = 0; i < g.size(); ++i) {
    CHECK(g.fibres[i].size() == 1);
    if (i > 0) CHECK(direction_cmp(g.slopes[i - 1].direction(), g.slopes[i].direction()) < 0);
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      CHECK(g.graph.adjacent(i, j) == farey_adjacent(to_farey(g.slopes[i]), to_farey(g.slopes[j])));
    }
  }
  auto g13 = build_slope_graph(build_sc_graph(fixtures::torus(), Rational(13)));
  int inf = slope_vertex(g13, "1/0"), target = slope_vertex(g13, "2/3");
  CHECK(bfs_distance(g13.graph, inf, target) == 2);
  CHECK(bfs_distance(g13.graph, inf, inf) == 0);
  CHECK(bfs_distance(g13.graph, inf, slope_vertex(g13, "0")) == 1);
  auto path = shortest_path(g13.graph, inf, target);
  REQUIRE(path.size() == 3);
  CHECK(path[1] == slope_vertex(g13, "1"));
  CHECK_THROWS_AS(bfs_distance(g13.graph, inf, g13.size()), PreconditionError);
}

TEST_CASE("slope graph collapses parallel classes") {
  auto sc = build_sc_graph(fixtures::l_origami(), Rational(20));
  auto g = build_slope_graph(sc);
  CHECK(g.size() < sc.size());
  int horizontal = slope_vertex(g, "0");
  REQUIRE(horizontal >= 0);
  CHECK(g.fibres[horizontal].size() >= 3);
  for (int v = 0; v < g.size(); ++v) {
    int d = set_diameter(sc.graph, g.fibres[v]);
    CHECK(d >= 0);
    CHECK(d <= 1);
  }
  // adjacency iff some pair of preimages is disjoint
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      if (a == b) continue;
      bool any = false;
      for (int x : g.fibres[a])
        for (int y : g.fibres[b]) any = any || sc.graph.adjacent(x, y);
      CHECK(g.graph.adjacent(a, b) == any);
    }
  auto single = build_slope_graph(restrict_sc_graph(build_sc_graph(fixtures::torus(), Rational(1)), Rational(1)));
  CHECK(single.size() == 2);
}

TEST_CASE("Gromov products") {
  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  CHECK(gromov_product(path, 0, 2, 1) == 0);
  CHECK(gromov_product(path, 0, 0, 2) == 2);
  CHECK(gromov_product(path, 0, 2, 0) == 0);
  Graph split(2);
  CHECK_THROWS_AS(gromov_product(split, 0, 1, 0), PreconditionError);

  std::mt19937_64 rng(5);
  auto g = random_graph(40, 30, rng);
  std::uniform_int_distribution<int> pick(0, 39);
  for (int s = 0; s < 300; ++s) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    Rational p = gromov_product(g, x, y, z);
    CHECK(p >= 0);
    CHECK(Rational(2 * p).get_den() == 1);
    CHECK(p + gromov_product(g, x, z, y) == bfs_distance(g, y, z));
    CHECK(gromov_product(g, x, x, z) == bfs_distance(g, x, z));
  }
}

TEST_CASE("k-centres") {
  std::mt19937_64 rng(9);
  auto tree = random_graph(60, 0, rng);
  std::uniform_int_distribution<int> pick(0, 59);
  for (int s = 0; s < 200; ++s) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    auto c = find_k_centre(tree, x, y, z, 0);
    REQUIRE(c.has_value());
    // the median: on all three geodesics
    int d = bfs_distance(tree, x, c->vertex) + bfs_distance(tree, c->vertex, y);
    CHECK(d == bfs_distance(tree, x, y));
    CHECK(c->dist_xy == 0);
  }
  auto same = find_k_centre(tree, 7, 7, 7, 0);
  REQUIRE(same.has_value());
  CHECK(same->vertex == 7);

  Graph cycle(12);
  for (int v = 0; v < 12; ++v) cycle.add_edge(v, (v + 1) % 12);
  CHECK_FALSE(find_k_centre(cycle, 0, 4, 8, 1).has_value());
  auto c = find_k_centre(cycle, 0, 4, 8, 2);
  REQUIRE(c.has_value());
  CHECK(c->k == 2);

  auto g = build_slope_graph(build_sc_graph(fixtures::torus(), Rational(150)));
  std::uniform_int_distribution<int> any(0, g.size() - 1);
  for (int s = 0; s < 100; ++s) {
    auto k = find_k_centre(g.graph, any(rng), any(rng), any(rng), 4);
    CHECK(k.has_value());
  }
}

TEST_CASE("quotients with bounded classes") {
  std::mt19937_64 rng(3);
  auto g = random_graph(30, 20, rng);
  std::vector<int> singletons(30);
  for (int v = 0; v < 30; ++v) singletons[v] = v;
  auto q = quotient_graph(g, singletons, 0);
  CHECK(q.adj == g.adj);
  auto cert = check_quotient_qi(g, q, singletons, 0, 0, rng);
  CHECK(cert.ok());
  CHECK(cert.pairs == 900);

  std::vector<int> lumped(30, 0);
  CHECK_THROWS_AS(quotient_graph(g, lumped, 1), PreconditionError);
  std::vector<int> gap = singletons;
  gap[0] = 31;
  CHECK_THROWS_AS(quotient_graph(g, gap, 0), PreconditionError);

  for (int K = 1; K <= 3; ++K) {
    for (int trial = 0; trial < 20; ++trial) {
      auto h = random_graph(50, std::uniform_int_distribution<int>(0, 40)(rng), rng);
      auto cls = random_partition(h, K, rng);
      auto hq = quotient_graph(h, cls, K);
      auto c = check_quotient_qi(h, hq, cls, K, 0, rng);
      CHECK(c.ok());
      // the quotient never increases distances
      for (int u = 0; u < 50; u += 7) {
        auto d = bfs_distances(h, u);
        auto e = bfs_distances(hq, cls[u]);
        for (int v = 0; v < 50; ++v) CHECK(e[cls[v]] <= d[v]);
      }
    }
  }

  // the parallel-class quotient of the L-origami is its slope graph, with (2, 1)
  auto sc = build_sc_graph(fixtures::l_origami(), Rational(25));
  auto slopes = build_slope_graph(sc);
  auto pq = quotient_graph(sc.graph, slopes.slope_index, 1);
  CHECK(pq.adj == slopes.graph.adj);
  auto pc = check_quotient_qi(sc.graph, pq, slopes.slope_index, 1, 0, rng);
  CHECK(pc.ok());
  CHECK(pc.pairs == sc.scs.size() * sc.scs.size());
}

TEST_CASE("graph emitters") {
  auto g = build_slope_graph(build_sc_graph(fixtures::torus(), Rational(2)));
  std::ostringstream dot, csv;
  write_dot(dot, g, "torus");
  write_distance_csv(csv, g);
  CHECK(dot.str().find("label=\"1/0\"") != std::string::npos);
  CHECK(dot.str().find(" -- ") != std::string::npos);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 5);
}
