#include "sconn/ladders.hpp"

#include <algorithm>
#include <sstream>

#include "sconn/errors.hpp"
#include "sconn/farey.hpp"

namespace sconn {

namespace {

std::string describe(const SaddleConnection& sc) {
  std::ostringstream os;
  os << "(" << sc.holonomy.x << "," << sc.holonomy.y << ")";
  return os.str();
}

LadderPath make_ladder(const TriangulatedSurface& t, const SaddleConnection& alpha, const SaddleConnection& beta,
                       Side side) {
  LadderPath path;
  path.side = side;
  path.source = beta;
  path.target = alpha;
  for (const auto& b : bicorn_arcs(t, alpha, beta, side)) {
    auto geodesic = straighten(t, b.arc);
    if (geodesic.empty()) throw std::logic_error("bicorn arc straightened to a point");
    path.entries.push_back(canonicalize(t, geodesic.front()));
  }
  return path;
}

}  // namespace

std::vector<SaddleConnection> LadderPath::dedup() const {
  std::vector<SaddleConnection> out;
  for (const auto& e : entries)
    if (out.empty() || !(out.back() == e)) out.push_back(e);
  return out;
}

std::vector<Slope> LadderPath::slopes(bool dedup_consecutive) const {
  std::vector<Slope> out;
  for (const auto& e : entries) {
    Slope s = slope_of(e);
    if (!dedup_consecutive || out.empty() || !(out.back() == s)) out.push_back(s);
  }
  return out;
}

LadderPair ladder_paths(const TriangulatedSurface& t, const SaddleConnection& alpha, const SaddleConnection& beta) {
  if (alpha.surface != t.id() || beta.surface != t.id())
    throw PreconditionError("saddle connections do not belong to this triangulation");
  return {make_ladder(t, alpha, beta, Side::left), make_ladder(t, alpha, beta, Side::right)};
}

std::pair<std::vector<Slope>, std::vector<Slope>> farey_ladder(const Slope& s1, const Slope& s2) {
  FareyFan fan = farey_fan(to_farey(s1), to_farey(s2));
  auto convert = [](const std::vector<FareySlope>& v) {
    std::vector<Slope> out;
    for (const auto& f : v) out.push_back(to_slope(f));
    return out;
  };
  return {convert(fan.right), convert(fan.left)};
}

Vec2 normalized_direction(const SaddleConnection& alpha, const SaddleConnection& beta, const Vec2& d) {
  const Vec2& ha = alpha.holonomy;
  const Vec2& hb = beta.holonomy;
  int s = sgn(cross(hb, ha));
  if (s == 0) throw PreconditionError("normalization needs non-parallel alpha and beta");
  // [hb | s ha]^-1 d, times the positive determinant
  return Vec2(s * cross(d, ha), cross(hb, d));
}

Certificate check_ladder_properties(const TriangulatedSurface& t, const LadderPair& ladders) {
  Certificate cert;
  cert.kind = "ladder-properties";
  cert.constants = "endpoints,disjoint,sign,monotone";
  cert.semantics = Semantics::proves_true_claim;
  const LadderPath* sides[2] = {&ladders.right, &ladders.left};
  const auto& alpha = ladders.right.target;
  const auto& beta = ladders.right.source;
  const std::size_t len = ladders.right.entries.size();
  if (ladders.left.entries.size() != len) {
    cert.record(false, "ladders of different lengths");
    return cert;
  }
  const int n = static_cast<int>(len) - 2;
  for (const LadderPath* p : sides) {
    const char* name = to_string(p->side);
    cert.record(p->entries.front() == beta, std::string(name) + ": delta_0 != beta");
    cert.record(p->entries.back() == alpha, std::string(name) + ": delta_{n+1} != alpha");
  }
  // disjointness
  std::vector<Trace> right, left;
  for (const auto& e : ladders.right.entries) right.emplace_back(t, e);
  for (const auto& e : ladders.left.entries) left.emplace_back(t, e);
  for (int i = 0; i <= n; ++i) {
    auto check = [&](const Trace& a, const Trace& b, const std::string& what) {
      cert.record(!crosses(t, a, b), what + " cross at i=" + std::to_string(i));
    };
    check(right[i], left[i], "delta_i^+ and delta_i^-");
    check(right[i], right[i + 1], "delta_i^+ and delta_{i+1}^+");
    check(right[i], left[i + 1], "delta_i^+ and delta_{i+1}^-");
    check(left[i], right[i + 1], "delta_i^- and delta_{i+1}^+");
    check(left[i], left[i + 1], "delta_i^- and delta_{i+1}^-");
  }
  if (parallel(alpha.holonomy, beta.holonomy)) {
    cert.note = "parallel alpha and beta: slope properties vacuous";
    return cert;
  }
  for (const LadderPath* p : sides) {
    const bool is_right = p->side == Side::right;
    std::vector<Vec2> reps;
    for (int i = 0; i < n + 2; ++i) {
      Vec2 v = normalized_direction(alpha, beta, p->entries[i].holonomy);
      if (i >= 1 && i <= n) {
        int s = sgn(v.x * v.y);
        cert.record(s == (is_right ? 1 : -1), std::string(to_string(p->side)) + ": normalized slope of delta_" +
                                                   std::to_string(i) + " has the wrong sign");
      }
      // right: first quadrant; left: fourth quadrant (alpha as (0, -1))
      if (is_right) {
        if (v.x < 0 || (v.x == 0 && v.y < 0)) v = -v;
      } else {
        if (v.x < 0 || (v.x == 0 && v.y > 0)) v = -v;
      }
      reps.push_back(v);
    }
    for (int i = 0; i + 1 < n + 2; ++i) {
      int c = sgn(cross(reps[i], reps[i + 1]));
      bool ok = is_right ? c >= 0 : c <= 0;
      cert.record(ok, std::string(to_string(p->side)) + ": slopes not monotone at i=" + std::to_string(i));
    }
  }
  return cert;
}

int vertex_of(const TruncatedGraph& g, const SaddleConnection& sc) {
  if (g.kind != GraphKind::sc_graph) throw PreconditionError("vertex_of needs an sc-graph");
  Vec2 h = sc.canonical_holonomy();
  for (int i = 0; i < static_cast<int>(g.scs.size()); ++i)
    if (g.scs[i].canonical_holonomy() == h && g.scs[i] == sc) return i;
  return -1;
}

Certificate check_bottleneck(const LadderPath& ladder, const std::vector<int>& path, const TruncatedGraph& g) {
  if (path.empty()) throw PreconditionError("empty path");
  int b = vertex_of(g, ladder.source), a = vertex_of(g, ladder.target);
  if (b < 0 || a < 0) throw PreconditionError("ladder endpoints are outside the truncation");
  if (path.front() != b || path.back() != a) throw PreconditionError("path does not run from beta to alpha");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i] != path[i + 1] && !g.graph.adjacent(path[i], path[i + 1]))
      throw PreconditionError("path is not a path in the graph");
  Certificate cert;
  cert.kind = "bottleneck";
  cert.constants = "3";
  cert.semantics = Semantics::proves_true_claim;
  for (std::size_t i = 0; i < ladder.entries.size(); ++i) {
    const auto& e = ladder.entries[i];
    int v = vertex_of(g, e);
    if (v < 0) {
      cert.record(false, std::string(to_string(ladder.side)) + " delta_" + std::to_string(i) + " " + describe(e) +
                             " outside the truncation");
      continue;
    }
    auto dist = bfs_distances(g.graph, v);
    int best = -1, best_d = 0;
    for (std::size_t j = 0; j < path.size(); ++j) {
      int d = dist[path[j]];
      if (d == kDisconnected) continue;
      if (best < 0 || d < best_d) {
        best = static_cast<int>(j);
        best_d = d;
      }
    }
    std::string detail = std::string(to_string(ladder.side)) + " delta_" + std::to_string(i) + " " + describe(e) +
                         (best < 0 ? std::string(" unreachable")
                                   : " -> path[" + std::to_string(best) + "] at distance " + std::to_string(best_d));
    bool ok = best >= 0 && best_d <= 3;
    cert.record(ok, detail);
  }
  return cert;
}

std::vector<int> detour_path(const Graph& g, int from, int via, int to) {
  auto first = shortest_path(g, from, via);
  auto second = shortest_path(g, via, to);
  if (first.empty() || second.empty()) return {};
  first.insert(first.end(), second.begin() + 1, second.end());
  return first;
}

bool slopes_separated(const Slope& p, const Slope& q, const Slope& x, const Slope& y) {
  Vec2 dp = p.direction(), dq = q.direction();
  const Vec2& lo = direction_cmp(dp, dq) < 0 ? dp : dq;
  const Vec2& hi = direction_cmp(dp, dq) < 0 ? dq : dp;
  auto inside = [&](const Slope& s) {
    Vec2 d = s.direction();
    return direction_cmp(lo, d) < 0 && direction_cmp(d, hi) < 0;
  };
  return inside(x) != inside(y);
}

LinkingResult check_linking(const TriangulatedSurface& t, const SaddleConnection& a1, const SaddleConnection& a2,
                            const SaddleConnection& a3, const SaddleConnection& a4, const LinkingOptions& opt) {
  Slope s[4] = {slope_of(a1), slope_of(a2), slope_of(a3), slope_of(a4)};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (s[i] == s[j]) throw PreconditionError("linking needs four distinct slopes");
  if (!slopes_separated(s[0], s[2], s[1], s[3]))
    throw PreconditionError("slopes are not in the required cyclic order");
  Trace t1(t, a1), t2(t, a2), t3(t, a3), t4(t, a4);
  if (crosses(t, t1, t3)) throw PreconditionError("a1 and a3 cross");
  if (crosses(t, t2, t4)) throw PreconditionError("a2 and a4 cross");

  LinkingResult r;
  r.certificate.kind = "linking";
  r.certificate.constants = "2";
  r.certificate.semantics = Semantics::proves_true_claim;
  auto near = [&](const SaddleConnection& b, const Trace& tb, const SaddleConnection& x, const Trace& tx,
                  const SaddleConnection& y, const Trace& ty) -> int {
    if (b == x || b == y) return 0;
    if (!crosses(t, tb, tx) || !crosses(t, tb, ty)) return 1;
    return -1;
  };
  auto try_candidate = [&](const SaddleConnection& b) {
    Trace tb(t, b);
    int d1 = near(b, tb, a1, t1, a3, t3);
    if (d1 < 0) return false;
    int d2 = near(b, tb, a2, t2, a4, t4);
    if (d2 < 0) return false;
    r.witness = b;
    r.distance = d1 + d2;
    return true;
  };
  bool found = false;
  for (const auto* a : {&a1, &a2, &a3, &a4})
    if (!found) found = try_candidate(*a);
  Rational lsq = systole(t).length2();
  Rational done = 0;
  while (!found) {
    if (lsq > opt.cap_lsq) lsq = opt.cap_lsq;
    r.searched_lsq = lsq;
    for (const auto& b : enumerate(t, lsq)) {
      if (b.length2() <= done) continue;
      if ((found = try_candidate(b))) break;
    }
    if (found || lsq == opt.cap_lsq) break;
    done = lsq;
    lsq *= 4;
  }
  std::string quad = describe(a1) + " " + describe(a2) + " " + describe(a3) + " " + describe(a4);
  if (found) {
    r.certificate.record(r.distance <= 2, quad);
    r.certificate.add_witness(quad + " via " + describe(*r.witness) + " distance <= " + std::to_string(r.distance));
  } else {
    r.certificate.record(false, quad + " no witness up to L^2 = " + to_string(opt.cap_lsq));
  }
  return r;
}

FourCentre four_centre(const TriangulatedSurface& t, const SaddleConnection& a1, const SaddleConnection& a2,
                       const SaddleConnection& a3, const TruncatedGraph& g,
                       const std::vector<std::vector<int>>& sides) {
  if (a1 == a2 || a2 == a3 || a3 == a1) throw PreconditionError("four_centre needs three distinct saddle connections");
  const SaddleConnection* a[3] = {&a1, &a2, &a3};
  FourCentre out;
  out.certificate.kind = "centre";
  out.certificate.constants = "4";
  out.certificate.semantics = Semantics::at_truncation;

  // candidates from the ladders between a_i and a_{i+1}
  std::vector<std::vector<SaddleConnection>> cand(3);
  for (int i = 0; i < 3; ++i) {
    LadderPair lp = ladder_paths(t, *a[(i + 1) % 3], *a[i]);
    for (const auto* side : {&lp.right, &lp.left})
      for (const auto& e : side->entries)
        if (std::find(cand[i].begin(), cand[i].end(), e) == cand[i].end()) cand[i].push_back(e);
  }
  std::vector<std::vector<Trace>> traces(3);
  for (int i = 0; i < 3; ++i)
    for (const auto& e : cand[i]) traces[i].emplace_back(t, e);
  auto disjoint_matrix = [&](int i, int j) {
    std::vector<std::vector<char>> m(cand[i].size(), std::vector<char>(cand[j].size()));
    for (std::size_t x = 0; x < cand[i].size(); ++x)
      for (std::size_t y = 0; y < cand[j].size(); ++y) m[x][y] = !crosses(t, traces[i][x], traces[j][y]);
    return m;
  };
  auto d12 = disjoint_matrix(0, 1), d23 = disjoint_matrix(1, 2), d13 = disjoint_matrix(0, 2);
  for (std::size_t x = 0; x < cand[0].size() && !out.triple; ++x)
    for (std::size_t y = 0; y < cand[1].size() && !out.triple; ++y) {
      if (!d12[x][y]) continue;
      for (std::size_t z = 0; z < cand[2].size(); ++z)
        if (d23[y][z] && d13[x][z]) {
          out.triple = std::vector<SaddleConnection>{cand[0][x], cand[1][y], cand[2][z]};
          break;
        }
    }
  std::string tri = describe(a1) + " " + describe(a2) + " " + describe(a3);
  out.certificate.record(out.triple.has_value(), tri + " no pairwise disjoint ladder triple");
  if (!out.triple) return out;

  int v[3];
  for (int i = 0; i < 3; ++i) {
    v[i] = vertex_of(g, *a[i]);
    if (v[i] < 0) throw PreconditionError("triangle vertex outside the truncation");
  }
  if (sides.empty()) {
    for (int i = 0; i < 3; ++i) out.sides.push_back(shortest_path(g.graph, v[i], v[(i + 1) % 3]));
  } else {
    if (sides.size() != 3) throw PreconditionError("need three sides");
    out.sides = sides;
  }
  int c = vertex_of(g, out.triple->front());
  if (c < 0) {
    out.certificate.record(false, tri + " delta_1 " + describe(out.triple->front()) + " outside the truncation");
    return out;
  }
  for (int i = 0; i < 3; ++i) {
    const auto& side = out.sides[i];
    if (side.empty() || side.front() != v[i] || side.back() != v[(i + 1) % 3])
      throw PreconditionError("side does not join the triangle's vertices");
    int d = bfs_distances(g.graph, side)[c];
    out.side_distance.push_back(d);
    out.certificate.record(d != kDisconnected && d <= 4,
                           tri + " delta_1 at distance " + std::to_string(d) + " from side " + std::to_string(i));
  }
  out.certificate.add_witness(tri + " centre " + describe(out.triple->front()) + " distances " +
                              std::to_string(out.side_distance[0]) + "," + std::to_string(out.side_distance[1]) + "," +
                              std::to_string(out.side_distance[2]));
  return out;
}

}  // namespace sconn
