#include "sconn/triangulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <numeric>

#include "sconn/errors.hpp"

namespace sconn {

namespace {
std::atomic<std::uint64_t> next_surface_id{1};
}  // namespace

Vec2 TriangulatedSurface::corner_position(Corner c) const {
  const int base = 3 * c.triangle;
  switch (c.index) {
    case 0:
      return Vec2(0, 0);
    case 1:
      return vec_[base];
    default:
      return vec_[base] + vec_[base + 1];
  }
}

Vec2 TriangulatedSurface::point_on(int h, const Rational& t) const {
  return corner_position(origin_corner(h)) + t * vec_[h];
}

Rational TriangulatedSurface::area() const {
  Rational total = 0;
  for (int t = 0; t < num_triangles(); ++t) total += cross(vec_[3 * t], vec_[3 * t + 1]);
  return total / 2;
}

TriangulatedSurface TriangulatedSurface::transformed(const Matrix2& m) const {
  if (sgn(m.det()) <= 0) throw PreconditionError("apply_matrix requires det > 0");
  TriangulatedSurface out = *this;
  for (auto& v : out.vec_) v = m.apply(v);
  out.id_ = next_surface_id++;
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Counts how many of the directions {d0, -d0} lie in the half-open ccw arc (u, v],
// where the arc from u to v is strictly less than a half-turn.
int half_turn_hits(const Vec2& d0, const Vec2& u, const Vec2& v) {
  int hits = 0;
  for (const Vec2& w : {d0, -d0}) {
    bool after_u = sgn(cross(u, w)) > 0;
    int cv = sgn(cross(w, v));
    bool before_v = cv > 0 || (cv == 0 && sgn(dot(w, v)) > 0);
    if (after_u && before_v) ++hits;
  }
  return hits;
}

}  // namespace

void TriangulatedSurface::compute_vertices() {
  const int n = num_half_edges();
  UnionFind uf(n);
  for (int h = 0; h < n; ++h) uf.unite(h, next(twin_[h]));
  vertex_.assign(n, -1);
  std::map<int, int> ids;
  for (int h = 0; h < n; ++h) {
    int root = uf.find(h);
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    vertex_[h] = it->second;
  }
  singularities_.assign(ids.size(), {});
  std::vector<int> done(ids.size(), 0);
  for (int h0 = 0; h0 < n; ++h0) {
    int v = vertex_[h0];
    if (done[v]) continue;
    done[v] = 1;
    // rotate counterclockwise around the vertex: h -> twin(prev(h))
    int h = h0;
    int chart = 1;
    Vec2 d0 = vec_[h0];
    Vec2 cur = d0;
    int turns = 0;
    do {
      int p = prev(h);
      Vec2 nxt = -(chart * vec_[p]);  // outgoing along the reverse of prev(h)
      turns += half_turn_hits(d0, cur, nxt);
      chart *= sign_[p];
      h = twin_[p];
      cur = chart * vec_[h];
    } while (h != h0);
    singularities_[v] = {v, turns};
  }
}

TriangulatedSurface TriangulatedSurface::from_half_edges(std::vector<HalfEdgeData> data) {
  TriangulatedSurface s;
  const int n = static_cast<int>(data.size());
  if (n == 0 || n % 3 != 0) throw InputError("half-edge data must come in triples");
  s.vec_.resize(n);
  s.twin_.resize(n);
  s.sign_.resize(n);
  for (int h = 0; h < n; ++h) {
    s.vec_[h] = data[h].vec;
    s.twin_[h] = data[h].twin;
    s.sign_[h] = data[h].sign;
  }
  for (int h = 0; h < n; ++h) {
    int g = s.twin_[h];
    if (g < 0 || g >= n || g == h || s.twin_[g] != h || s.sign_[g] != s.sign_[h]) {
      throw InputError("inconsistent half-edge gluing at " + std::to_string(h));
    }
    if (!(s.vec_[g] == -(s.sign_[h] * s.vec_[h]))) throw InputError("glued half-edges differ in length/direction");
  }
  for (int t = 0; t < s.num_triangles(); ++t) {
    if (!(s.vec_[3 * t] + s.vec_[3 * t + 1] + s.vec_[3 * t + 2]).is_zero() ||
        sgn(cross(s.vec_[3 * t], s.vec_[3 * t + 1])) <= 0) {
      throw InputError("triangle " + std::to_string(t) + " is degenerate or clockwise");
    }
  }
  s.compute_vertices();
  s.id_ = next_surface_id++;
  bool any_removable = false, any_singular = false;
  for (const auto& z : s.singularities_) {
    (z.removable() ? any_removable : any_singular) = true;
  }
  if (any_removable && any_singular) {
    throw InputError("surface has removable marked points (cone angle 2pi) alongside genuine singularities; "
                     "remove the regular vertices from the polygon presentation");
  }
  return s;
}

bool TriangulatedSurface::edge_is_delaunay(int h) const {
  int g = twin_[h];
  if (tri(h) == tri(g)) return true;
  Vec2 p = corner_position(origin_corner(h));
  Vec2 q = p + vec_[h];
  Vec2 r = q + vec_[next(h)];
  // develop the far vertex of the neighbour into this chart
  Vec2 s = q + sign_[h] * (vec_[g] + vec_[next(g)]);
  return in_circle(p, q, r, s) <= 0;
}

bool TriangulatedSurface::is_delaunay() const {
  for (int h = 0; h < num_half_edges(); ++h) {
    if (!edge_is_delaunay(h)) return false;
  }
  return true;
}

bool TriangulatedSurface::flip(int h) {
  const int g = twin_[h];
  const int t = tri(h), u = tri(g);
  if (t == u) return false;
  const int s = sign_[h];
  const int h1 = next(h), h2 = prev(h), g1 = next(g), g2 = prev(g);
  // New triangle A in t's slots: h2 (R->P), g1 (P->S), a (S->R).
  // New triangle B in u's slots: g2 (S->Q), h1 (Q->R), b (R->S). Both use t's chart,
  // so half-edges coming from u are rescaled by s.
  const int a0 = 3 * t, b0 = 3 * u;
  const int old_slot[4] = {h2, g1, g2, h1};
  const int new_slot[4] = {a0, a0 + 1, b0, b0 + 1};
  const int factor[4] = {1, s, s, 1};
  std::map<int, std::pair<int, int>> moved;  // old slot -> (new slot, chart factor)
  for (int k = 0; k < 4; ++k) moved[old_slot[k]] = {new_slot[k], factor[k]};
  Vec2 nvec[4];
  int ntwin[4], nsign[4];
  for (int k = 0; k < 4; ++k) {
    const int x = old_slot[k];
    const int y = twin_[x];
    auto it = moved.find(y);
    const int ny = it == moved.end() ? y : it->second.first;
    const int fy = it == moved.end() ? 1 : it->second.second;
    nvec[k] = factor[k] * vec_[x];
    ntwin[k] = ny;
    nsign[k] = sign_[x] * factor[k] * fy;
  }
  for (int k = 0; k < 4; ++k) {
    const int x = new_slot[k];
    vec_[x] = nvec[k];
    twin_[x] = ntwin[k];
    sign_[x] = nsign[k];
    twin_[ntwin[k]] = x;
    sign_[ntwin[k]] = nsign[k];
  }
  const Vec2 sr = -(vec_[a0] + vec_[a0 + 1]);
  vec_[a0 + 2] = sr;
  vec_[b0 + 2] = -sr;
  twin_[a0 + 2] = b0 + 2;
  twin_[b0 + 2] = a0 + 2;
  sign_[a0 + 2] = sign_[b0 + 2] = 1;
  return true;
}

int TriangulatedSurface::make_delaunay() {
  int flips = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int h = 0; h < num_half_edges(); ++h) {
      if (!edge_is_delaunay(h) && flip(h)) {
        ++flips;
        changed = true;
      }
    }
  }
  compute_vertices();
  if (flips > 0) id_ = next_surface_id++;
  return flips;
}

namespace {

// Ear clipping. Returns corner index triples (counterclockwise).
std::vector<std::array<int, 3>> ear_clip(const Polygon& poly) {
  std::vector<int> idx(poly.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::array<int, 3>> out;
  const auto& v = poly.vertices;
  while (idx.size() > 3) {
    bool clipped = false;
    const int m = static_cast<int>(idx.size());
    for (int k = 0; k < m && !clipped; ++k) {
      int a = idx[(k + m - 1) % m], b = idx[k], c = idx[(k + 1) % m];
      if (orient(v[a], v[b], v[c]) <= 0) continue;
      bool blocked = false;
      for (int j : idx) {
        if (j == a || j == b || j == c) continue;
        if (orient(v[a], v[b], v[j]) >= 0 && orient(v[b], v[c], v[j]) >= 0 && orient(v[c], v[a], v[j]) >= 0) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({a, b, c});
      idx.erase(idx.begin() + k);
      clipped = true;
    }
    if (!clipped) throw InputError("polygon could not be triangulated");
  }
  if (orient(v[idx[0]], v[idx[1]], v[idx[2]]) <= 0) throw InputError("polygon has a degenerate final ear");
  out.push_back({idx[0], idx[1], idx[2]});
  return out;
}

TriangulatedSurface triangulate_impl(const Surface& s, bool flips) {
  std::vector<TriangulatedSurface::HalfEdgeData> data;
  std::map<std::pair<int, int>, int> polygon_edge;  // (polygon, edge) -> half-edge
  for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p) {
    const auto& poly = s.polygons()[p];
    const int n = static_cast<int>(poly.size());
    std::map<std::pair<int, int>, int> directed;  // (from, to) corner pair -> half-edge
    for (const auto& tri : ear_clip(poly)) {
      for (int i = 0; i < 3; ++i) {
        int from = tri[i], to = tri[(i + 1) % 3];
        int h = static_cast<int>(data.size());
        data.push_back({poly.vertices[to] - poly.vertices[from], -1, 1});
        directed[{from, to}] = h;
        if (to == (from + 1) % n) polygon_edge[{p, from}] = h;
      }
    }
    for (const auto& [key, h] : directed) {
      auto it = directed.find({key.second, key.first});
      if (it != directed.end()) data[h].twin = it->second;
    }
  }
  for (const auto& g : s.gluings()) {
    int a = polygon_edge.at({g.a.polygon, g.a.edge});
    int b = polygon_edge.at({g.b.polygon, g.b.edge});
    data[a].twin = b;
    data[b].twin = a;
    data[a].sign = data[b].sign = g.sign;
  }
  auto t = TriangulatedSurface::from_half_edges(std::move(data));
  if (flips) t.make_delaunay();
  return t;
}

}  // namespace

TriangulatedSurface triangulate(const Surface& s) { return triangulate_impl(s, true); }
TriangulatedSurface triangulate_no_flips(const Surface& s) { return triangulate_impl(s, false); }

bool satisfies_gauss_bonnet(const TriangulatedSurface& t) {
  long excess = 0;
  for (const auto& z : t.singularities()) excess += z.half_turns - 2;
  return excess == -2L * t.euler_characteristic();
}

}  // namespace sconn
