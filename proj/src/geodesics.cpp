#include "sconn/geodesics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>

#include "sconn/errors.hpp"

namespace sconn {

using TS = TriangulatedSurface;

CombinatorialArc to_arc(const SaddleConnection& sc) {
  return {sc.surface, sc.start, sc.crossings, sc.end};
}

CombinatorialArc trace_polyline(const TriangulatedSurface& t, Corner start,
                                const std::vector<Vec2>& displacements) {
  if (displacements.empty()) throw PreconditionError("polyline needs at least one segment");
  CombinatorialArc arc;
  arc.surface = t.id();
  arc.start = start;
  int tri = start.triangle;
  Chart chart;
  int entry = -1;  // half-edge of tri through which the walk entered
  Vec2 x = t.corner_position(start);
  {
    const int base = 3 * tri;
    Vec2 lo = t.vec(base + start.index);
    Vec2 hi = -t.vec(base + (start.index + 2) % 3);
    const Vec2& d = displacements.front();
    if (sgn(cross(lo, d)) <= 0 || sgn(cross(d, hi)) <= 0) {
      throw PreconditionError("first polyline segment does not point into the start corner");
    }
  }
  for (std::size_t seg = 0; seg < displacements.size(); ++seg) {
    const Vec2 y = x + displacements[seg];
    const bool last = seg + 1 == displacements.size();
    while (true) {
      Vec2 c[3];
      for (int i = 0; i < 3; ++i) c[i] = developed(t, chart, {tri, i});
      int outside = -1;
      for (int i = 0; i < 3; ++i) {
        const int h = 3 * tri + i;
        if (h == entry) continue;
        const Vec2& p = c[i];
        const Vec2& q = c[(i + 1) % 3];
        if (orient(p, q, y) >= 0) continue;
        // does x -> y leave through the open edge p q?
        int o1 = orient(x, y, p), o2 = orient(x, y, q);
        if (o1 == 0 || o2 == 0) {
          if (o1 == 0 && strictly_between(x, y, p)) throw PreconditionError("polyline passes through a singularity");
          if (o2 == 0 && strictly_between(x, y, q)) throw PreconditionError("polyline passes through a singularity");
          continue;
        }
        if (o1 > 0 && o2 < 0) continue;
        if (o1 < 0 && o2 > 0) {
          outside = i;
          break;
        }
      }
      if (outside < 0) break;
      const int h = 3 * tri + outside;
      const Vec2& p = c[outside];
      const Vec2& q = c[(outside + 1) % 3];
      Rational u = cross(x - p, y - x) / cross(q - p, y - x);
      arc.crossings.push_back({h, u});
      x = p + u * (q - p);
      chart = across(t, chart, h);
      entry = t.twin(h);
      tri = TS::tri(entry);
    }
    // y is in the closed current triangle
    Vec2 c[3];
    for (int i = 0; i < 3; ++i) c[i] = developed(t, chart, {tri, i});
    if (last) {
      int corner = -1;
      for (int i = 0; i < 3; ++i) {
        if (c[i] == y) corner = i;
      }
      if (corner < 0) throw PreconditionError("polyline does not end at a singularity");
      arc.end = {tri, corner};
    } else {
      for (int i = 0; i < 3; ++i) {
        if (orient(c[i], c[(i + 1) % 3], y) <= 0) {
          throw PreconditionError("intermediate polyline point is not inside a triangle");
        }
      }
      entry = -1;
    }
    x = y;
  }
  return arc;
}

bool is_valid(const TriangulatedSurface& t, const CombinatorialArc& arc) {
  if (arc.surface != t.id()) return false;
  int tri = arc.start.triangle;
  for (const auto& c : arc.crossings) {
    if (c.half_edge < 0 || c.half_edge >= t.num_half_edges() || TS::tri(c.half_edge) != tri) return false;
    tri = TS::tri(t.twin(c.half_edge));
  }
  return arc.end.triangle == tri;
}

CombinatorialArc reduced(const TriangulatedSurface& t, const CombinatorialArc& arc) {
  CombinatorialArc out = arc;
  out.crossings.clear();
  for (const auto& c : arc.crossings) {
    if (!out.crossings.empty() && out.crossings.back().half_edge == t.twin(c.half_edge)) {
      out.crossings.pop_back();
    } else {
      out.crossings.push_back(c);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// traces and intersections

namespace {

Rational boundary_coord(int half_edge, const Rational& param) { return Rational(half_edge % 3) + param; }

}  // namespace

Trace::Trace(const TriangulatedSurface& t, const SaddleConnection& s) : sc(&s) {
  origin = t.corner_position(s.start);
  if (s.is_edge()) return;
  Chart chart;
  Piece cur;
  cur.triangle = s.start.triangle;
  cur.chart = chart;
  cur.in_coord = s.start.index;
  cur.in_pos = origin;
  for (const auto& c : s.crossings) {
    cur.out_coord = boundary_coord(c.half_edge, c.t);
    cur.out_pos = t.point_on(c.half_edge, c.t);
    pieces.push_back(cur);
    chart = across(t, chart, c.half_edge);
    const int g = t.twin(c.half_edge);
    cur = Piece{};
    cur.triangle = TS::tri(g);
    cur.chart = chart;
    cur.in_coord = boundary_coord(g, 1 - c.t);
    cur.in_pos = t.point_on(g, 1 - c.t);
  }
  cur.out_coord = s.end.index;
  cur.out_pos = t.corner_position(s.end);
  pieces.push_back(cur);
}

namespace {

void require_same_surface(const SaddleConnection& a, const SaddleConnection& b) {
  if (a.surface != b.surface) throw PreconditionError("saddle connections belong to different triangulations");
}

Rational lambda_of(const Trace& tr, const Trace::Piece& piece, const Vec2& local) {
  const Vec2& h = tr.sc->holonomy;
  return dot(piece.chart.map(local) - tr.origin, h) / norm2(h);
}

Vec2 local_direction(const Trace& tr, const Trace::Piece& piece) { return piece.chart.s * tr.sc->holonomy; }

// Chords (p1, p2) and (q1, q2) on the boundary circle [0, 3) of one triangle.
bool chords_interleave(const Rational& p1, const Rational& p2, const Rational& q1, const Rational& q2) {
  if (p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2) return false;
  const Rational& lo = p1 < p2 ? p1 : p2;
  const Rational& hi = p1 < p2 ? p2 : p1;
  bool in1 = lo < q1 && q1 < hi;
  bool in2 = lo < q2 && q2 < hi;
  return in1 != in2;
}

struct EdgePoint {
  int edge;  // canonical half-edge id
  Rational param;
};

EdgePoint normalized(const TriangulatedSurface& t, const Crossing& c) {
  int e = t.edge_id(c.half_edge);
  return {e, e == c.half_edge ? c.t : Rational(1 - c.t)};
}

// Calls visit(point) for every transverse interior intersection; stops early when visit returns true.
template <typename Visit>
void for_each_intersection(const TriangulatedSurface& t, const Trace& a, const Trace& b, Visit&& visit) {
  const SaddleConnection& sa = *a.sc;
  const SaddleConnection& sb = *b.sc;
  require_same_surface(sa, sb);
  if (sa.key() == sb.key()) return;
  if (parallel(sa.holonomy, sb.holonomy)) return;
  if (sa.is_edge() && sb.is_edge()) return;
  if (sa.is_edge() || sb.is_edge()) {
    const bool a_is_edge = sa.is_edge();
    const SaddleConnection& e_sc = a_is_edge ? sa : sb;
    const Trace& other = a_is_edge ? b : a;
    const int e = e_sc.along_edge;
    for (std::size_t k = 0; k < other.sc->crossings.size(); ++k) {
      const Crossing& c = other.sc->crossings[k];
      if (c.half_edge != e && c.half_edge != t.twin(e)) continue;
      Rational u = c.half_edge == e ? c.t : Rational(1 - c.t);
      const Trace::Piece& piece = other.pieces[c.half_edge == e ? k : k + 1];
      IntersectionPoint p;
      p.triangle = TS::tri(e);
      p.position = t.point_on(e, u);
      Rational lam_other = lambda_of(other, piece, p.position);
      Vec2 dir_other = local_direction(other, piece);
      Vec2 dir_edge = e_sc.holonomy;
      int slot_other = 2 * static_cast<int>(k) + 2;
      if (a_is_edge) {
        p.lambda_a = u;
        p.lambda_b = lam_other;
        p.slot_a = 1;
        p.slot_b = slot_other;
        p.dir_a = dir_edge;
        p.dir_b = dir_other;
      } else {
        p.lambda_a = lam_other;
        p.lambda_b = u;
        p.slot_a = slot_other;
        p.slot_b = 1;
        p.dir_a = dir_other;
        p.dir_b = dir_edge;
      }
      if (visit(p)) return;
    }
    return;
  }
  // chords inside common triangles
  std::multimap<int, int> b_by_tri;
  for (std::size_t j = 0; j < b.pieces.size(); ++j) b_by_tri.emplace(b.pieces[j].triangle, static_cast<int>(j));
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const auto& pa = a.pieces[i];
    auto range = b_by_tri.equal_range(pa.triangle);
    for (auto it = range.first; it != range.second; ++it) {
      const auto& pb = b.pieces[it->second];
      if (!chords_interleave(pa.in_coord, pa.out_coord, pb.in_coord, pb.out_coord)) continue;
      Vec2 da = pa.out_pos - pa.in_pos;
      Vec2 db = pb.out_pos - pb.in_pos;
      Rational u = cross(pb.in_pos - pa.in_pos, db) / cross(da, db);
      IntersectionPoint p;
      p.triangle = pa.triangle;
      p.position = pa.in_pos + u * da;
      p.lambda_a = lambda_of(a, pa, p.position);
      p.lambda_b = lambda_of(b, pb, p.position);
      p.slot_a = 2 * static_cast<int>(i) + 1;
      p.slot_b = 2 * it->second + 1;
      p.dir_a = local_direction(a, pa);
      p.dir_b = local_direction(b, pb);
      if (visit(p)) return;
    }
  }
  // shared points on edges
  std::map<std::pair<int, Rational>, int> b_points;
  for (std::size_t j = 0; j < sb.crossings.size(); ++j) {
    EdgePoint ep = normalized(t, sb.crossings[j]);
    b_points.emplace(std::make_pair(ep.edge, ep.param), static_cast<int>(j));
  }
  for (std::size_t i = 0; i < sa.crossings.size(); ++i) {
    const Crossing& ca = sa.crossings[i];
    EdgePoint ep = normalized(t, ca);
    auto it = b_points.find({ep.edge, ep.param});
    if (it == b_points.end()) continue;
    const int j = it->second;
    const Crossing& cb = sb.crossings[j];
    const auto& pa = a.pieces[i];  // in tri(ca.half_edge)
    const auto& pb = b.pieces[cb.half_edge == ca.half_edge ? j : j + 1];
    IntersectionPoint p;
    p.triangle = TS::tri(ca.half_edge);
    p.position = t.point_on(ca.half_edge, ca.t);
    p.lambda_a = lambda_of(a, pa, p.position);
    p.lambda_b = lambda_of(b, pb, p.position);
    p.slot_a = 2 * static_cast<int>(i) + 2;
    p.slot_b = 2 * j + 2;
    p.dir_a = local_direction(a, pa);
    p.dir_b = local_direction(b, pb);
    if (visit(p)) return;
  }
}

}  // namespace

std::vector<IntersectionPoint> interior_intersections(const TriangulatedSurface& t, const Trace& a, const Trace& b) {
  std::vector<IntersectionPoint> out;
  for_each_intersection(t, a, b, [&](IntersectionPoint& p) {
    out.push_back(std::move(p));
    return false;
  });
  std::sort(out.begin(), out.end(),
            [](const IntersectionPoint& x, const IntersectionPoint& y) { return x.lambda_a < y.lambda_a; });
  return out;
}

std::vector<IntersectionPoint> interior_intersections(const TriangulatedSurface& t, const SaddleConnection& a,
                                                      const SaddleConnection& b) {
  Trace ta(t, a), tb(t, b);
  return interior_intersections(t, ta, tb);
}

bool crosses(const TriangulatedSurface& t, const Trace& a, const Trace& b) {
  bool found = false;
  for_each_intersection(t, a, b, [&](const IntersectionPoint&) {
    found = true;
    return true;
  });
  return found;
}

bool crosses(const TriangulatedSurface& t, const SaddleConnection& a, const SaddleConnection& b) {
  Trace ta(t, a), tb(t, b);
  return crosses(t, ta, tb);
}

// ---------------------------------------------------------------------------
// straightening

namespace {

struct Sleeve {
  std::vector<int> half_edges;               // exit half-edge of triangle k
  std::vector<int> triangles;                // T_0 .. T_m
  std::vector<std::array<int, 3>> ids;       // vertex-lift id per corner of T_k
  std::vector<Chart> charts;
  std::vector<Vec2> pos;                     // developed position per id
  std::vector<int> first, last;              // sleeve range per id

  int m() const { return static_cast<int>(half_edges.size()); }
  int left(int k) const { return ids[k][(half_edges[k] % 3 + 1) % 3]; }
  int right(int k) const { return ids[k][half_edges[k] % 3]; }
  bool portal_has(int k, int id) const { return left(k) == id || right(k) == id; }
  int corner_of(int k, int id) const {
    for (int c = 0; c < 3; ++c) {
      if (ids[k][c] == id) return c;
    }
    return -1;
  }
};

Sleeve make_sleeve(const TriangulatedSurface& t, const CombinatorialArc& arc) {
  Sleeve s;
  for (const auto& c : arc.crossings) s.half_edges.push_back(c.half_edge);
  s.triangles.push_back(arc.start.triangle);
  s.ids.push_back({0, 1, 2});
  s.charts.push_back(Chart{});
  int next_id = 3;
  for (int k = 0; k < s.m(); ++k) {
    const int h = s.half_edges[k];
    const int g = t.twin(h);
    std::array<int, 3> ids{};
    ids[g % 3] = s.ids[k][(h % 3 + 1) % 3];
    ids[(g % 3 + 1) % 3] = s.ids[k][h % 3];
    ids[(g % 3 + 2) % 3] = next_id++;
    s.ids.push_back(ids);
    s.triangles.push_back(TS::tri(g));
    s.charts.push_back(across(t, s.charts[k], h));
  }
  s.pos.assign(next_id, Vec2());
  s.first.assign(next_id, -1);
  s.last.assign(next_id, -1);
  for (int k = 0; k <= s.m(); ++k) {
    for (int c = 0; c < 3; ++c) {
      const int id = s.ids[k][c];
      if (s.first[id] < 0) {
        s.first[id] = k;
        s.pos[id] = s.charts[k].map(t.corner_position({s.triangles[k], c}));
      }
      s.last[id] = k;
    }
  }
  return s;
}

// Taut path through the sleeve as a list of vertex-lift ids.
std::vector<int> funnel(const Sleeve& s, int start, int end) {
  const int m = s.m();
  auto portal_left = [&](int i) { return i == m ? end : s.left(i); };
  auto portal_right = [&](int i) { return i == m ? end : s.right(i); };
  // first portal index at or after i that does not touch id v
  auto skip = [&](int v, int i) {
    while (i < m && s.portal_has(i, v)) ++i;
    return i;
  };
  std::vector<int> path{start};
  int apex = start;
  int i = skip(apex, 0);
  int left = apex, right = apex, li = i, ri = i;
  while (i <= m && apex != end) {
    const int pl = portal_left(i), pr = portal_right(i);
    const Vec2& a = s.pos[apex];
    if (orient(a, s.pos[right], s.pos[pr]) >= 0) {
      if (right == apex || orient(a, s.pos[left], s.pos[pr]) < 0) {
        right = pr;
        ri = i;
      } else {
        apex = left;
        path.push_back(apex);
        i = skip(apex, li);
        left = right = apex;
        li = ri = i;
        continue;
      }
    }
    if (orient(a, s.pos[left], s.pos[pl]) <= 0) {
      if (left == apex || orient(a, s.pos[right], s.pos[pl]) > 0) {
        left = pl;
        li = i;
      } else {
        apex = right;
        path.push_back(apex);
        i = skip(apex, ri);
        left = right = apex;
        li = ri = i;
        continue;
      }
    }
    ++i;
  }
  if (path.back() != end) path.push_back(end);
  return path;
}

// Inserts sleeve vertices lying in the open interior of a path segment.
std::vector<int> split_collinear(const Sleeve& s, const std::vector<int>& path) {
  std::vector<int> out{path.front()};
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const int a = path[k], b = path[k + 1];
    const Vec2& pa = s.pos[a];
    const Vec2& pb = s.pos[b];
    int lo = std::min(s.last[a], s.first[b]);
    int hi = std::max(s.last[a], s.first[b]);
    std::vector<std::pair<Rational, int>> inner;
    std::vector<int> seen;
    for (int tk = lo; tk <= hi; ++tk) {
      for (int id : s.ids[tk]) {
        if (id == a || id == b || std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
        seen.push_back(id);
        const Vec2& pc = s.pos[id];
        if (orient(pa, pb, pc) == 0 && strictly_between(pa, pb, pc)) inner.push_back({norm2(pc - pa), id});
      }
    }
    std::sort(inner.begin(), inner.end());
    for (const auto& [d, id] : inner) out.push_back(id);
    out.push_back(b);
  }
  return out;
}

SaddleConnection segment_to_sc(const TriangulatedSurface& t, const Sleeve& s, int a, int b) {
  if (s.last[a] >= s.first[b]) {
    // both lifts in one triangle: the segment is an edge
    const int k = s.first[b];
    const int ca = s.corner_of(k, a), cb = s.corner_of(k, b);
    const int tri = s.triangles[k];
    const int h = cb == (ca + 1) % 3 ? 3 * tri + ca : 3 * tri + cb;
    return edge_connection(t, h);
  }
  const int k0 = s.last[a], k1 = s.first[b];
  const Vec2& pa = s.pos[a];
  const Vec2& pb = s.pos[b];
  const Vec2 ab = pb - pa;
  SaddleConnection sc;
  sc.surface = t.id();
  sc.start = {s.triangles[k0], s.corner_of(k0, a)};
  sc.end = {s.triangles[k1], s.corner_of(k1, b)};
  sc.start_vertex = t.vertex(sc.start);
  sc.end_vertex = t.vertex(sc.end);
  sc.holonomy = s.charts[k0].s * ab;
  for (int k = k0; k < k1; ++k) {
    const int h = s.half_edges[k];
    const Vec2& p = s.pos[s.right(k)];
    const Vec2& q = s.pos[s.left(k)];
    Rational u = cross(pa - p, ab) / cross(q - p, ab);
    if (sgn(u) <= 0 || u >= 1) throw std::logic_error("straightened segment passes through a sleeve vertex");
    sc.crossings.push_back({h, u});
  }
  return canonicalize(t, sc);
}

}  // namespace

std::vector<SaddleConnection> straighten(const TriangulatedSurface& t, const CombinatorialArc& arc) {
  if (!is_valid(t, arc)) throw PreconditionError("arc is not a valid crossing sequence on this triangulation");
  CombinatorialArc r = reduced(t, arc);
  Sleeve s = make_sleeve(t, r);
  const int start = s.ids[0][r.start.index];
  const int end = s.ids[s.m()][r.end.index];
  if (start == end) return {};
  std::vector<int> path = split_collinear(s, funnel(s, start, end));
  std::vector<SaddleConnection> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) out.push_back(segment_to_sc(t, s, path[k], path[k + 1]));
  return out;
}

std::vector<std::pair<int, IntersectionPoint>> interior_intersections(const TriangulatedSurface& t,
                                                                       const CombinatorialArc& a,
                                                                       const CombinatorialArc& b) {
  auto ga = straighten(t, a);
  auto gb = straighten(t, b);
  std::vector<Trace> tb;
  tb.reserve(gb.size());
  for (const auto& sc : gb) tb.emplace_back(t, sc);
  std::vector<std::pair<int, IntersectionPoint>> out;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    Trace ta(t, ga[i]);
    std::vector<IntersectionPoint> here;
    for (const auto& trb : tb) {
      for (auto& p : interior_intersections(t, ta, trb)) here.push_back(std::move(p));
    }
    std::sort(here.begin(), here.end(),
              [](const IntersectionPoint& x, const IntersectionPoint& y) { return x.lambda_a < y.lambda_a; });
    for (auto& p : here) out.emplace_back(static_cast<int>(i), std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// bicorn arcs

const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

namespace {

// Builds a crossing sequence by walking along saddle connections.
class ArcBuilder {
 public:
  ArcBuilder(const TriangulatedSurface& t, const SaddleConnection& first) : t_(t) {
    arc_.surface = t.id();
    arc_.start = first.start;
    tri_ = first.start.triangle;
    if (first.is_edge()) {
      side_ = first.along_edge;
      side_t_ = 0;
    }
  }

  // Walk along x from slot s1 to slot s2; param is the position along x (lambda) of the
  // target point when it is interior to x.
  void walk(const SaddleConnection& x, int s1, int s2, const Rational& param) {
    if (x.is_edge()) {
      walk_edge(x, s2, param);
      return;
    }
    const int m = static_cast<int>(x.crossings.size());
    if (s1 < s2) {
      if (s1 % 2 == 0 && s1 > 0) ensure_in(t_.twin(x.crossings[(s1 - 2) / 2].half_edge));
      for (int k = 0; k < m; ++k) {
        const int slot = 2 * k + 2;
        if (slot > s1 && slot < s2) cross(x.crossings[k].half_edge, x.crossings[k].t);
      }
      if (s2 == 2 * m + 2) {
        finish(x.end);
      } else if (s2 % 2 == 0) {
        const auto& c = x.crossings[(s2 - 2) / 2];
        side_ = c.half_edge;
        side_t_ = c.t;
      } else {
        side_ = -1;
      }
    } else {
      if (s1 % 2 == 0 && s1 < 2 * m + 2) ensure_in(x.crossings[(s1 - 2) / 2].half_edge);
      for (int k = m - 1; k >= 0; --k) {
        const int slot = 2 * k + 2;
        if (slot < s1 && slot > s2) cross(t_.twin(x.crossings[k].half_edge), 1 - x.crossings[k].t);
      }
      if (s2 == 0) {
        finish(x.start);
      } else if (s2 % 2 == 0) {
        const auto& c = x.crossings[(s2 - 2) / 2];
        side_ = t_.twin(c.half_edge);
        side_t_ = 1 - c.t;
      } else {
        side_ = -1;
      }
    }
  }

  const CombinatorialArc& arc() const { return arc_; }

 private:
  void walk_edge(const SaddleConnection& x, int s2, const Rational& param) {
    const int e = x.along_edge;
    if (side_ != e && side_ != t_.twin(e)) throw std::logic_error("arc builder lost track of an edge");
    if (s2 == 1) {
      side_t_ = side_ == e ? param : Rational(1 - param);
    } else if (s2 == 2) {
      finish(side_ == e ? TS::target_corner(e) : TS::origin_corner(side_));
    } else {
      finish(side_ == e ? TS::origin_corner(e) : TS::target_corner(side_));
    }
  }

  void cross(int h, const Rational& param) {
    if (TS::tri(h) != tri_) throw std::logic_error("arc builder crossed a half-edge of another triangle");
    arc_.crossings.push_back({h, param});
    tri_ = TS::tri(t_.twin(h));
    side_ = t_.twin(h);
    side_t_ = 1 - param;
  }

  void ensure_in(int s) {
    if (side_ == s) return;
    if (side_ >= 0 && side_ == t_.twin(s)) {
      cross(side_, side_t_);
      return;
    }
    throw std::logic_error("arc builder is not on the expected edge");
  }

  void finish(Corner c) {
    if (c.triangle != tri_) throw std::logic_error("arc builder ended in the wrong triangle");
    arc_.end = c;
  }

  const TriangulatedSurface& t_;
  CombinatorialArc arc_;
  int tri_ = 0;
  int side_ = -1;
  Rational side_t_;
};

int end_slot(const SaddleConnection& x) { return x.is_edge() ? 2 : 2 * static_cast<int>(x.crossings.size()) + 2; }

}  // namespace

std::vector<BicornArc> bicorn_arcs(const TriangulatedSurface& t, const SaddleConnection& alpha,
                                   const SaddleConnection& beta, Side side) {
  require_same_surface(alpha, beta);
  if (alpha == beta) throw PreconditionError("bicorn arcs need two distinct saddle connections");
  Trace ta(t, alpha), tb(t, beta);
  std::vector<IntersectionPoint> pts = interior_intersections(t, ta, tb);  // p_1 .. p_n along alpha
  const int n = static_cast<int>(pts.size());
  // order along beta
  std::vector<int> along_beta(n);
  for (int i = 0; i < n; ++i) along_beta[i] = i;
  std::sort(along_beta.begin(), along_beta.end(),
            [&](int x, int y) { return pts[x].lambda_b < pts[y].lambda_b; });
  std::vector<int> beta_rank(n);
  for (int r = 0; r < n; ++r) beta_rank[along_beta[r]] = r;

  std::vector<BicornArc> out;
  out.push_back({0, side, reduced(t, to_arc(beta)), -1});
  for (int i = 0; i < n; ++i) {
    const IntersectionPoint& p = pts[i];
    // forward along beta goes to the right of alpha when cross(dir_a, dir_b) < 0
    const bool right_forward = sgn(cross(p.dir_a, p.dir_b)) < 0;
    const bool forward = (side == Side::right) == right_forward;
    int stop = -1;
    const int r = beta_rank[i];
    if (forward) {
      for (int q = r + 1; q < n && stop < 0; ++q) {
        if (along_beta[q] < i) stop = along_beta[q];
      }
    } else {
      for (int q = r - 1; q >= 0 && stop < 0; --q) {
        if (along_beta[q] < i) stop = along_beta[q];
      }
    }
    ArcBuilder builder(t, alpha);
    builder.walk(alpha, 0, p.slot_a, p.lambda_a);
    if (stop < 0) {
      builder.walk(beta, p.slot_b, forward ? end_slot(beta) : 0, 0);
    } else {
      const IntersectionPoint& q = pts[stop];
      builder.walk(beta, p.slot_b, q.slot_b, q.lambda_b);
      builder.walk(alpha, q.slot_a, 0, 0);
    }
    out.push_back({i + 1, side, reduced(t, builder.arc()), stop < 0 ? -1 : stop + 1});
  }
  out.push_back({n + 1, side, reduced(t, to_arc(alpha)), -1});
  return out;
}

}  // namespace sconn
