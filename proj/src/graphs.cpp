#include "sconn/graphs.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>

#include "sconn/errors.hpp"
#include "sconn/geodesics.hpp"

namespace sconn {

std::size_t Graph::edge_count() const {
  std::size_t m = 0;
  for (const auto& a : adj) m += a.size();
  return m / 2;
}

bool Graph::adjacent(int u, int v) const { return std::binary_search(adj[u].begin(), adj[u].end(), v); }

void Graph::add_edge(int u, int v) {
  if (u == v) throw PreconditionError("self-loop");
  auto ins = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  ins(adj[u], v);
  ins(adj[v], u);
}

Graph Graph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(size(), -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) pos[vertices[i]] = i;
  Graph h(static_cast<int>(vertices.size()));
  for (int i = 0; i < h.size(); ++i)
    for (int w : adj[vertices[i]])
      if (pos[w] >= 0) h.adj[i].push_back(pos[w]);
  for (auto& a : h.adj) std::sort(a.begin(), a.end());
  return h;
}

const char* to_string(GraphKind k) { return k == GraphKind::sc_graph ? "sc-graph" : "slope-graph"; }

std::string TruncatedGraph::label(int v) const {
  if (kind == GraphKind::slope_graph) return to_string(slopes[v]);
  std::ostringstream os;
  os << "sc" << v << "(" << scs[v].holonomy.x << "," << scs[v].holonomy.y << ")";
  return os.str();
}

int TruncatedGraph::find_slope(const Slope& s) const {
  auto it = std::lower_bound(slopes.begin(), slopes.end(), s, [](const Slope& a, const Slope& b) {
    return direction_cmp(a.direction(), b.direction()) < 0;
  });
  if (it == slopes.end() || !(*it == s)) return -1;
  return static_cast<int>(it - slopes.begin());
}

int TruncatedGraph::find_holonomy(const Vec2& h) const {
  if (kind != GraphKind::sc_graph) return -1;
  Vec2 c = canonical_direction(h);
  for (int i = 0; i < static_cast<int>(scs.size()); ++i)
    if (scs[i].canonical_holonomy() == c) return i;
  return -1;
}

// ---------------------------------------------------------------------------
// crossing filter

namespace {

// Boundary coordinate num/den in [0, 3) of a point on a triangle's boundary: corner i
// is i, the point at parameter u on half-edge 3T+i is i + u.
struct Coord {
  std::int64_t num, den;
  bool corner;
};

// Chord of a saddle connection inside one triangle.
struct Chord {
  Coord lo, hi;
};

// Saddle connection pieces grouped by triangle, with machine-integer coordinates.
struct FastSc {
  bool exact = true;  // false when some coordinate does not fit
  bool edge = false;
  int along = -1;
  std::vector<Chord> chords;
  std::vector<int> offset;         // chords of triangle T are [offset[T], offset[T+1])
  std::vector<int> crossed_edges;  // sorted canonical ids of the crossed edges
};

int cmp_coord(const Coord& x, const Coord& y) {
  __int128 l = static_cast<__int128>(x.num) * y.den;
  __int128 r = static_cast<__int128>(y.num) * x.den;
  return (l > r) - (l < r);
}

FastSc make_fast(const TriangulatedSurface& t, const SaddleConnection& sc) {
  FastSc f;
  const int ntri = t.num_triangles();
  f.offset.assign(ntri + 1, 0);
  for (const auto& c : sc.crossings) f.crossed_edges.push_back(t.edge_id(c.half_edge));
  std::sort(f.crossed_edges.begin(), f.crossed_edges.end());
  if (sc.is_edge()) {
    f.edge = true;
    f.along = t.edge_id(sc.along_edge);
    return f;
  }
  constexpr std::int64_t limit = std::int64_t{1} << 60;
  auto point = [&](int index, const Rational& u) {
    const Integer& n = u.get_num();
    const Integer& d = u.get_den();
    if (!n.fits_slong_p() || !d.fits_slong_p() || d.get_si() >= limit) {
      f.exact = false;
      return Coord{0, 1, false};
    }
    std::int64_t dd = d.get_si();
    return Coord{index * dd + n.get_si(), dd, false};
  };
  std::vector<std::pair<int, Chord>> raw;
  int tri = sc.start.triangle;
  Coord in{sc.start.index, 1, true};
  auto push = [&](const Coord& out) {
    Chord ch = cmp_coord(in, out) < 0 ? Chord{in, out} : Chord{out, in};
    raw.emplace_back(tri, ch);
  };
  for (const auto& c : sc.crossings) {
    push(point(c.half_edge % 3, c.t));
    const int g = t.twin(c.half_edge);
    tri = TriangulatedSurface::tri(g);
    in = point(g % 3, 1 - c.t);
  }
  push(Coord{sc.end.index, 1, true});
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [tr, ch] : raw) {
    f.chords.push_back(ch);
    ++f.offset[tr + 1];
  }
  for (int i = 0; i < ntri; ++i) f.offset[i + 1] += f.offset[i];
  return f;
}

// Two distinct saddle connections: chords sharing a corner do not meet inside the
// triangle, chords sharing a boundary point meet there, otherwise they cross iff
// their endpoints interleave.
bool chords_meet(const Chord& a, const Chord& b) {
  int c[4] = {cmp_coord(b.lo, a.lo), cmp_coord(b.lo, a.hi), cmp_coord(b.hi, a.lo), cmp_coord(b.hi, a.hi)};
  const Coord* bs[4] = {&b.lo, &b.lo, &b.hi, &b.hi};
  bool shared_corner = false;
  for (int k = 0; k < 4; ++k) {
    if (c[k] != 0) continue;
    if (!bs[k]->corner) return true;
    shared_corner = true;
  }
  if (shared_corner) return false;
  bool in1 = c[0] > 0 && c[1] < 0;
  bool in2 = c[2] > 0 && c[3] < 0;
  return in1 != in2;
}

bool fast_crosses(const FastSc& a, const FastSc& b) {
  if (a.edge && b.edge) return false;
  if (a.edge || b.edge) {
    const FastSc& e = a.edge ? a : b;
    const FastSc& o = a.edge ? b : a;
    return std::binary_search(o.crossed_edges.begin(), o.crossed_edges.end(), e.along);
  }
  const int ntri = static_cast<int>(a.offset.size()) - 1;
  for (int tr = 0; tr < ntri; ++tr)
    for (int i = a.offset[tr]; i < a.offset[tr + 1]; ++i)
      for (int j = b.offset[tr]; j < b.offset[tr + 1]; ++j)
        if (chords_meet(a.chords[i], b.chords[j])) return true;
  return false;
}

}  // namespace

TruncatedGraph build_sc_graph(const TriangulatedSurface& t, std::vector<SaddleConnection> scs, const Rational& lsq) {
  TruncatedGraph g;
  g.kind = GraphKind::sc_graph;
  g.lsq = lsq;
  g.scs = std::move(scs);
  const int n = static_cast<int>(g.scs.size());
  g.graph = Graph(n);
  std::vector<FastSc> fast;
  fast.reserve(n);
  for (const auto& sc : g.scs) fast.push_back(make_fast(t, sc));
  for (int i = 0; i < n; ++i) {
    std::optional<Trace> ti;
    for (int j = i + 1; j < n; ++j) {
      bool cross;
      if (fast[i].exact && fast[j].exact) {
        cross = fast_crosses(fast[i], fast[j]);
      } else {
        if (!ti) ti.emplace(t, g.scs[i]);
        cross = crosses(t, *ti, Trace(t, g.scs[j]));
      }
      if (!cross) {
        g.graph.adj[i].push_back(j);
        g.graph.adj[j].push_back(i);
      }
    }
  }
  return g;
}

TruncatedGraph build_sc_graph(const TriangulatedSurface& t, const Rational& lsq) {
  return build_sc_graph(t, enumerate(t, lsq), lsq);
}

TruncatedGraph restrict_sc_graph(const TruncatedGraph& g, const Rational& lsq) {
  if (g.kind != GraphKind::sc_graph) throw PreconditionError("restrict_sc_graph needs an sc-graph");
  if (lsq > g.lsq) throw PreconditionError("cannot restrict to a larger truncation");
  TruncatedGraph h;
  h.kind = GraphKind::sc_graph;
  h.lsq = lsq;
  std::vector<int> keep;
  for (int i = 0; i < g.size(); ++i) {
    if (g.scs[i].length2() <= lsq) {
      keep.push_back(i);
      h.scs.push_back(g.scs[i]);
    }
  }
  h.graph = g.graph.induced(keep);
  return h;
}

namespace {

// Classes a != b are adjacent iff some edge of g joins them.
Graph quotient_edges(const Graph& g, const std::vector<int>& class_of, int classes) {
  std::vector<std::vector<int>> upper(classes);
  for (int u = 0; u < g.size(); ++u)
    for (int v : g.adj[u]) {
      int a = class_of[u], b = class_of[v];
      if (a < b) upper[a].push_back(b);
    }
  Graph q(classes);
  for (int a = 0; a < classes; ++a) {
    auto& list = upper[a];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (int b : list) {
      q.adj[a].push_back(b);
      q.adj[b].push_back(a);
    }
  }
  for (auto& list : q.adj) std::sort(list.begin(), list.end());
  return q;
}

}  // namespace

TruncatedGraph build_slope_graph(const TruncatedGraph& sc_graph) {
  if (sc_graph.kind != GraphKind::sc_graph) throw PreconditionError("build_slope_graph needs an sc-graph");
  TruncatedGraph g;
  g.kind = GraphKind::slope_graph;
  g.lsq = sc_graph.lsq;
  g.scs = sc_graph.scs;
  for (const auto& sc : g.scs) g.slopes.push_back(slope_of(sc));
  std::sort(g.slopes.begin(), g.slopes.end(),
            [](const Slope& a, const Slope& b) { return direction_cmp(a.direction(), b.direction()) < 0; });
  g.slopes.erase(std::unique(g.slopes.begin(), g.slopes.end()), g.slopes.end());
  const int n = static_cast<int>(g.slopes.size());
  g.fibres.assign(n, {});
  for (int i = 0; i < static_cast<int>(g.scs.size()); ++i) {
    int v = g.find_slope(slope_of(g.scs[i]));
    g.slope_index.push_back(v);
    g.fibres[v].push_back(i);
  }
  g.graph = quotient_edges(sc_graph.graph, g.slope_index, n);
  return g;
}

// ---------------------------------------------------------------------------
// metrics

std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.size(), kDisconnected);
  std::deque<int> queue;
  for (int s : sources) {
    if (s < 0 || s >= g.size()) throw PreconditionError("unknown vertex");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y : g.adj[x]) {
      if (dist[y] == kDisconnected) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::vector<int> bfs_distances(const Graph& g, int source) { return bfs_distances(g, std::vector<int>{source}); }

int bfs_distance(const Graph& g, int u, int v) {
  if (v < 0 || v >= g.size()) throw PreconditionError("unknown vertex");
  return bfs_distances(g, u)[v];
}

std::vector<int> shortest_path(const Graph& g, int u, int v) {
  auto dist = bfs_distances(g, u);
  if (v < 0 || v >= g.size()) throw PreconditionError("unknown vertex");
  if (dist[v] == kDisconnected) return {};
  std::vector<int> path{v};
  int x = v;
  while (x != u) {
    for (int y : g.adj[x]) {
      if (dist[y] == dist[x] - 1) {
        x = y;
        break;
      }
    }
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Rational gromov_product(const Graph& g, int x, int y, int z) {
  int dxz = bfs_distance(g, x, z);
  int dyz = bfs_distance(g, y, z);
  int dxy = bfs_distance(g, x, y);
  if (dxz == kDisconnected || dyz == kDisconnected || dxy == kDisconnected)
    throw PreconditionError("Gromov product of a disconnected triple");
  Rational r(dxz + dyz - dxy, 2);
  r.canonicalize();
  return r;
}

std::optional<KCentre> find_k_centre(const Graph& g, const std::vector<int>& side_xy, const std::vector<int>& side_yz,
                                     const std::vector<int>& side_zx, int k) {
  auto d1 = bfs_distances(g, side_xy);
  auto d2 = bfs_distances(g, side_yz);
  auto d3 = bfs_distances(g, side_zx);
  int best = -1, best_val = 0;
  for (int v = 0; v < g.size(); ++v) {
    if (d1[v] < 0 || d2[v] < 0 || d3[v] < 0) continue;
    int val = std::max({d1[v], d2[v], d3[v]});
    if (best < 0 || val < best_val) {
      best = v;
      best_val = val;
    }
  }
  if (best < 0 || best_val > k) return std::nullopt;
  KCentre c;
  c.vertex = best;
  c.k = best_val;
  c.side_xy = side_xy;
  c.side_yz = side_yz;
  c.side_zx = side_zx;
  c.dist_xy = d1[best];
  c.dist_yz = d2[best];
  c.dist_zx = d3[best];
  return c;
}

std::optional<KCentre> find_k_centre(const Graph& g, int x, int y, int z, int k) {
  auto a = shortest_path(g, x, y);
  auto b = shortest_path(g, y, z);
  auto c = shortest_path(g, z, x);
  if (a.empty() || b.empty() || c.empty()) return std::nullopt;
  return find_k_centre(g, a, b, c, k);
}

int set_diameter(const Graph& g, const std::vector<int>& vertices) {
  int diam = 0;
  for (int s : vertices) {
    auto d = bfs_distances(g, s);
    for (int v : vertices) {
      if (d[v] == kDisconnected) return kDisconnected;
      diam = std::max(diam, d[v]);
    }
  }
  return diam;
}

Graph quotient_graph(const Graph& g, const std::vector<int>& class_of, int K) {
  if (static_cast<int>(class_of.size()) != g.size()) throw PreconditionError("partition size mismatch");
  int classes = 0;
  for (int c : class_of) {
    if (c < 0) throw PreconditionError("negative class id");
    classes = std::max(classes, c + 1);
  }
  std::vector<std::vector<int>> members(classes);
  for (int v = 0; v < g.size(); ++v) members[class_of[v]].push_back(v);
  for (int c = 0; c < classes; ++c) {
    if (members[c].empty()) throw PreconditionError("class " + std::to_string(c) + " is empty");
    int d = set_diameter(g, members[c]);
    if (d == kDisconnected || d > K)
      throw PreconditionError("class " + std::to_string(c) + " has diameter above " + std::to_string(K));
  }
  return quotient_edges(g, class_of, classes);
}

QiCheck check_quotient_qi(const Graph& g, const Graph& quotient, const std::vector<int>& class_of, int K,
                          std::size_t samples, std::mt19937_64& rng) {
  QiCheck r;
  r.K = K;
  const int n = g.size();
  if (n == 0) return r;
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> cache;
  auto distances_from = [&](int u) -> const std::pair<std::vector<int>, std::vector<int>>& {
    auto it = cache.find(u);
    if (it == cache.end())
      it = cache.emplace(u, std::pair{bfs_distances(g, u), bfs_distances(quotient, class_of[u])}).first;
    return it->second;
  };
  auto check = [&](int u, int v) {
    const auto& [dg, dq] = distances_from(u);
    int d = dg[v];
    if (d == kDisconnected) return;
    int e = dq[class_of[v]];
    ++r.pairs;
    bool lower = d <= (K + 1) * (e + K);
    bool upper = e <= (K + 1) * d + K;
    if (!lower || !upper) {
      ++r.violations;
      if (r.witnesses.size() < 5)
        r.witnesses.push_back(std::to_string(u) + "," + std::to_string(v) + ": d=" + std::to_string(d) +
                              " dq=" + std::to_string(e));
    }
  };
  if (samples == 0) {
    for (int u = 0; u < n; ++u) {
      cache.clear();
      for (int v = 0; v < n; ++v) check(u, v);
    }
    return r;
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    int u = pick(rng), v = pick(rng);
    check(u, v);
  }
  return r;
}

void write_dot(std::ostream& os, const TruncatedGraph& g, const std::string& name) {
  os << "graph \"" << name << "\" {\n";
  for (int v = 0; v < g.size(); ++v) os << "  " << v << " [label=\"" << g.label(v) << "\"];\n";
  for (int u = 0; u < g.size(); ++u)
    for (int v : g.graph.adj[u])
      if (u < v) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
}

void write_distance_csv(std::ostream& os, const TruncatedGraph& g) {
  os << "vertex";
  for (int v = 0; v < g.size(); ++v) os << "," << g.label(v);
  os << "\n";
  for (int u = 0; u < g.size(); ++u) {
    auto d = bfs_distances(g.graph, u);
    os << g.label(u);
    for (int v = 0; v < g.size(); ++v) os << "," << d[v];
    os << "\n";
  }
}

}  // namespace sconn
