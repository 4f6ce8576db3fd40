#include "sconn/saddle_connection.hpp"

#include <algorithm>
#include <map>

#include "sconn/develop.hpp"
#include "sconn/errors.hpp"

namespace sconn {

using TS = TriangulatedSurface;

std::vector<int> SaddleConnection::key() const {
  if (is_edge()) return {-1, along_edge};
  std::vector<int> k;
  k.reserve(crossings.size() + 4);
  k.push_back(start.triangle);
  k.push_back(start.index);
  for (const auto& c : crossings) k.push_back(c.half_edge);
  k.push_back(end.triangle);
  k.push_back(end.index);
  return k;
}

std::ostream& operator<<(std::ostream& os, const SaddleConnection& sc) {
  return os << "sc" << sc.holonomy << " " << sc.start_vertex << "->" << sc.end_vertex;
}

SaddleConnection reversed(const TriangulatedSurface& t, const SaddleConnection& sc) {
  SaddleConnection r;
  r.surface = sc.surface;
  r.start_vertex = sc.end_vertex;
  r.end_vertex = sc.start_vertex;
  if (sc.is_edge()) {
    r.along_edge = t.twin(sc.along_edge);
    r.start = TS::origin_corner(r.along_edge);
    r.end = TS::target_corner(r.along_edge);
    r.holonomy = t.vec(r.along_edge);
    return r;
  }
  r.start = sc.end;
  r.end = sc.start;
  int sigma = 1;
  r.crossings.reserve(sc.crossings.size());
  for (auto it = sc.crossings.rbegin(); it != sc.crossings.rend(); ++it) {
    sigma *= t.sign(it->half_edge);
    r.crossings.push_back({t.twin(it->half_edge), 1 - it->t});
  }
  r.holonomy = -(sigma * sc.holonomy);
  return r;
}

SaddleConnection canonicalize(const TriangulatedSurface& t, const SaddleConnection& sc) {
  SaddleConnection r = reversed(t, sc);
  bool fwd = is_canonical_direction(sc.holonomy);
  bool bwd = is_canonical_direction(r.holonomy);
  if (fwd && !bwd) return sc;
  if (bwd && !fwd) return r;
  return sc.key() <= r.key() ? sc : r;
}

SaddleConnection edge_connection(const TriangulatedSurface& t, int half_edge) {
  SaddleConnection sc;
  sc.surface = t.id();
  sc.along_edge = half_edge;
  sc.start = TS::origin_corner(half_edge);
  sc.end = TS::target_corner(half_edge);
  sc.start_vertex = t.vertex(sc.start);
  sc.end_vertex = t.vertex(sc.end);
  sc.holonomy = t.vec(half_edge);
  return canonicalize(t, sc);
}

namespace {

// Position of the line through v on [0, pi), measured counterclockwise from the x-axis.
int half_plane_class(const Vec2& v) {
  Vec2 c = canonical_direction(v);
  return sgn(c.y) >= 0 ? 0 : 1;  // [0, pi/2] first, then (pi/2, pi)
}

}  // namespace

int direction_cmp(const Vec2& a, const Vec2& b) {
  int ca = half_plane_class(a), cb = half_plane_class(b);
  if (ca != cb) return ca < cb ? -1 : 1;
  Vec2 u = canonical_direction(a), w = canonical_direction(b);
  if (ca == 1) {
    u = -u;
    w = -w;
  }
  return -sgn(cross(u, w));
}

bool enumeration_less(const SaddleConnection& a, const SaddleConnection& b) {
  int c = cmp(a.length2(), b.length2());
  if (c != 0) return c < 0;
  int d = direction_cmp(a.holonomy, b.holonomy);
  if (d != 0) return d < 0;
  return a.key() < b.key();
}

namespace {

struct Portal {
  int half_edge;
  Vec2 p;  // developed origin
  Vec2 q;  // developed target
};

// Interval of lambda in [0, 1] satisfying a + b * lambda >= 0 for each constraint.
bool clip(Rational& lo, Rational& hi, const Rational& a, const Rational& b) {
  int sb = sgn(b);
  if (sb == 0) return sgn(a) >= 0;
  Rational root = -a / b;
  if (sb > 0) {
    if (root > lo) lo = root;
  } else {
    if (root < hi) hi = root;
  }
  return lo <= hi;
}

class WedgeSearch {
 public:
  WedgeSearch(const TriangulatedSurface& t, const Rational& lsq) : t_(t), lsq_(lsq) {}

  void run_corner(Corner c) {
    start_ = c;
    Chart chart;
    chart.c = -t_.corner_position(c);
    const int base = 3 * c.triangle;
    Vec2 lo = t_.vec(base + c.index);
    Vec2 hi = -t_.vec(base + (c.index + 2) % 3);
    explore(base + (c.index + 1) % 3, chart, lo, hi);
  }

  std::map<std::vector<int>, SaddleConnection>& found() { return found_; }

 private:
  void explore(int exit_h, const Chart& chart, const Vec2& lo, const Vec2& hi) {
    Vec2 p = developed(t_, chart, TS::origin_corner(exit_h));
    Vec2 q = developed(t_, chart, TS::target_corner(exit_h));
    Vec2 d = q - p;
    Rational l0 = 0, l1 = 1;
    if (!clip(l0, l1, cross(lo, p), cross(lo, d)) || !clip(l0, l1, cross(p, hi), cross(d, hi))) return;
    if (dist2_origin_segment(p + l0 * d, p + l1 * d) > lsq_) return;

    path_.push_back({exit_h, p, q});
    Chart next_chart = across(t_, chart, exit_h);
    const int g = t_.twin(exit_h);
    Corner rc{TS::tri(g), (g % 3 + 2) % 3};
    Vec2 r = developed(t_, next_chart, rc);
    int cl = sgn(cross(lo, r));
    int ch = sgn(cross(r, hi));
    if (cl > 0 && ch > 0) {
      if (norm2(r) <= lsq_) emit(rc, r);
      explore(TS::next(g), next_chart, lo, r);
      explore(TS::prev(g), next_chart, r, hi);
    } else if (cl <= 0) {
      explore(TS::prev(g), next_chart, lo, hi);
    } else {
      explore(TS::next(g), next_chart, lo, hi);
    }
    path_.pop_back();
  }

  void emit(Corner end, const Vec2& r) {
    SaddleConnection sc;
    sc.surface = t_.id();
    sc.holonomy = r;
    sc.start = start_;
    sc.end = end;
    sc.start_vertex = t_.vertex(start_);
    sc.end_vertex = t_.vertex(end);
    sc.crossings.reserve(path_.size());
    for (const auto& portal : path_) {
      Rational param = cross(portal.p, r) / cross(r, portal.q - portal.p);
      sc.crossings.push_back({portal.half_edge, param});
    }
    sc = canonicalize(t_, sc);
    found_.emplace(sc.key(), std::move(sc));
  }

  const TriangulatedSurface& t_;
  Rational lsq_;
  Corner start_;
  std::vector<Portal> path_;
  std::map<std::vector<int>, SaddleConnection> found_;
};

}  // namespace

std::vector<SaddleConnection> enumerate(const TriangulatedSurface& t, const Rational& lsq) {
  if (sgn(lsq) <= 0) throw PreconditionError("enumerate requires a positive length bound");
  WedgeSearch search(t, lsq);
  for (int h = 0; h < t.num_half_edges(); ++h) {
    if (norm2(t.vec(h)) <= lsq) {
      SaddleConnection sc = edge_connection(t, h);
      search.found().emplace(sc.key(), std::move(sc));
    }
  }
  for (int tri = 0; tri < t.num_triangles(); ++tri) {
    for (int i = 0; i < 3; ++i) search.run_corner({tri, i});
  }
  std::vector<SaddleConnection> out;
  out.reserve(search.found().size());
  for (auto& [k, sc] : search.found()) out.push_back(std::move(sc));
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

SaddleConnection systole(const TriangulatedSurface& t) {
  Rational shortest = norm2(t.vec(0));
  for (int h = 1; h < t.num_half_edges(); ++h) shortest = std::min(shortest, Rational(norm2(t.vec(h))));
  return enumerate(t, shortest).front();
}

bool is_valid(const TriangulatedSurface& t, const SaddleConnection& sc) {
  if (sc.surface != t.id() || sc.holonomy.is_zero()) return false;
  if (sc.start_vertex != t.vertex(sc.start) || sc.end_vertex != t.vertex(sc.end)) return false;
  if (sc.is_edge()) {
    return sc.crossings.empty() && sc.start == TS::origin_corner(sc.along_edge) &&
           sc.end == TS::target_corner(sc.along_edge) && sc.holonomy == t.vec(sc.along_edge);
  }
  if (sc.crossings.empty()) return false;
  Chart chart;
  Vec2 a = developed(t, chart, sc.start);
  Vec2 b = a + sc.holonomy;
  int tri = sc.start.triangle;
  for (std::size_t k = 0; k < sc.crossings.size(); ++k) {
    const auto& c = sc.crossings[k];
    if (TS::tri(c.half_edge) != tri) return false;
    if (sgn(c.t) <= 0 || c.t >= 1) return false;
    if (k > 0 && c.half_edge == t.twin(sc.crossings[k - 1].half_edge)) return false;
    Vec2 x = chart.map(t.point_on(c.half_edge, c.t));
    if (orient(a, b, x) != 0 || !strictly_between(a, b, x)) return false;
    chart = across(t, chart, c.half_edge);
    tri = TS::tri(t.twin(c.half_edge));
  }
  return sc.end.triangle == tri && developed(t, chart, sc.end) == b;
}

Slope::Slope(const Vec2& direction) {
  if (direction.is_zero()) throw PreconditionError("zero vector has no slope");
  Integer den = lcm(direction.x.get_den(), direction.y.get_den());
  Integer a = direction.x.get_num() * (den / direction.x.get_den());
  Integer b = direction.y.get_num() * (den / direction.y.get_den());
  Integer g = gcd(a, b);
  a /= g;
  b /= g;
  if (sgn(a) < 0 || (sgn(a) == 0 && sgn(b) < 0)) {
    a = -a;
    b = -b;
  }
  x = a;
  y = b;
}

Slope Slope::from_ratio(const Integer& rise, const Integer& run) {
  return Slope(Vec2(Rational(run), Rational(rise)));
}

Slope parse_slope(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Slope::from_ratio(Integer(text), 1);
    Integer p(text.substr(0, slash)), q(text.substr(slash + 1));
    if (sgn(p) == 0 && sgn(q) == 0) throw InputError("slope 0/0 is undefined");
    return Slope::from_ratio(p, q);
  } catch (const std::invalid_argument&) {
    throw InputError("malformed slope '" + text + "'");
  }
}

std::string to_string(const Slope& s) { return s.y.get_str() + "/" + s.x.get_str(); }

std::ostream& operator<<(std::ostream& os, const Slope& s) { return os << to_string(s); }

Integer slope_det(const Slope& a, const Slope& b) {
  Integer d = a.x * b.y - a.y * b.x;
  return abs(d);
}

}  // namespace sconn
