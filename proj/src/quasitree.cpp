#include "sconn/quasitree.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sconn/errors.hpp"

namespace sconn {

namespace {

// Angle order of RP^1 on primitive slopes, the same as direction_cmp.
int angle_class(const Slope& s) {
  if (s.x == 0) return 1;
  return s.y >= 0 ? 0 : 2;
}

int angle_cmp(const Slope& a, const Slope& b) {
  int ca = angle_class(a), cb = angle_class(b);
  if (ca != cb) return ca < cb ? -1 : 1;
  if (ca == 1) return 0;
  return sgn(Integer(a.y * b.x - b.y * a.x));
}

bool angle_less(const Slope& a, const Slope& b) { return angle_cmp(a, b) < 0; }

bool ball_contains(const std::vector<Slope>& ball, const Slope& s) {
  return std::binary_search(ball.begin(), ball.end(), s, angle_less);
}

int ball_position(const std::vector<Slope>& ball, const Slope& s) {
  auto it = std::lower_bound(ball.begin(), ball.end(), s, angle_less);
  if (it == ball.end() || !(*it == s)) return -1;
  return static_cast<int>(it - ball.begin());
}

bool shares_endpoint(const IntervalNode& a, const IntervalNode& b) {
  return a.lo == b.lo || a.lo == b.hi || a.hi == b.lo || a.hi == b.hi;
}

std::string rational_text(const Rational& r) { return to_string(r); }

// BFS rows cached by source.
class DistanceCache {
 public:
  explicit DistanceCache(const Graph& g) : g_(g) {}
  int operator()(int u, int v) {
    auto it = rows_.find(u);
    if (it == rows_.end()) it = rows_.emplace(u, bfs_distances(g_, u)).first;
    return it->second[v];
  }

 private:
  const Graph& g_;
  std::map<int, std::vector<int>> rows_;
};

}  // namespace

bool arc_contains(const Slope& lo, const Slope& hi, const Slope& x) {
  if (x == lo || x == hi) return false;
  if (lo == hi) return true;
  if (angle_cmp(lo, hi) < 0) return angle_cmp(lo, x) < 0 && angle_cmp(x, hi) < 0;
  return angle_cmp(lo, x) < 0 || angle_cmp(x, hi) < 0;
}

std::vector<IntervalNode> complement_intervals(std::vector<Slope> ballset, int level) {
  if (ballset.empty()) throw PreconditionError("complement of an empty ball");
  std::sort(ballset.begin(), ballset.end(), angle_less);
  ballset.erase(std::unique(ballset.begin(), ballset.end()), ballset.end());
  std::vector<IntervalNode> out;
  const std::size_t n = ballset.size();
  for (std::size_t i = 0; i < n; ++i) {
    IntervalNode node;
    node.level = level;
    node.lo = ballset[i];
    node.hi = ballset[(i + 1) % n];
    out.push_back(node);
  }
  return out;
}

int HasseTree::find(int level, const Slope& lo, const Slope& hi) const {
  if (level < 0 || level >= static_cast<int>(levels.size())) return -1;
  int i = ball_position(balls[level], lo);
  if (i < 0) return -1;
  int id = levels[level][i];
  return nodes[id].hi == hi ? id : -1;
}

int HasseTree::locate(int level, const Slope& s) const {
  if (level < 0 || level >= static_cast<int>(levels.size())) throw PreconditionError("level outside the tree");
  const auto& b = balls[level];
  auto it = std::upper_bound(b.begin(), b.end(), s, angle_less);
  std::size_t p = static_cast<std::size_t>(it - b.begin());
  if (p > 0 && b[p - 1] == s) return -1;
  return levels[level][p == 0 ? b.size() - 1 : p - 1];
}

int HasseTree::child_count(int node) const {
  int c = 0;
  for (int ch : nodes.at(node).children) c += !nodes[ch].frontier;
  return c;
}

std::string HasseTree::label(int node) const {
  const auto& n = nodes.at(node);
  if (n.level == 0) return "RP1-" + to_string(n.lo);
  return "(" + to_string(n.lo) + "," + to_string(n.hi) + ")";
}

std::vector<int> ball(const TruncatedGraph& gs, const Slope& theta0, int r) {
  if (gs.kind != GraphKind::slope_graph) throw PreconditionError("ball needs a slope graph");
  int v0 = gs.find_slope(theta0);
  if (v0 < 0) throw PreconditionError("basepoint " + to_string(theta0) + " is not in the truncation");
  auto d = bfs_distances(gs.graph, v0);
  std::vector<int> out;
  for (int v = 0; v < gs.size(); ++v)
    if (d[v] != kDisconnected && d[v] <= r) out.push_back(v);
  return out;
}

HasseTree build_interval_tree(const TruncatedGraph& gs, const Slope& theta0, int k_max) {
  if (k_max < 0) throw PreconditionError("k_max must be non-negative");
  if (gs.kind != GraphKind::slope_graph) throw PreconditionError("interval tree needs a slope graph");
  int v0 = gs.find_slope(theta0);
  if (v0 < 0) throw PreconditionError("basepoint " + to_string(theta0) + " is not in the truncation");
  auto dist = bfs_distances(gs.graph, v0);

  HasseTree t;
  t.theta0 = theta0;
  t.k_max = k_max;
  t.balls.resize(k_max + 1);
  t.levels.resize(k_max + 1);
  for (int v = 0; v < gs.size(); ++v)  // gs.slopes is in angle order
    for (int k = std::max(dist[v], 0); dist[v] != kDisconnected && k <= k_max; ++k) t.balls[k].push_back(gs.slopes[v]);

  IntervalNode root;
  root.lo = root.hi = theta0;
  root.stable = true;
  t.nodes.push_back(root);
  t.levels[0] = {0};

  for (int k = 1; k <= k_max; ++k) {
    for (auto& node : complement_intervals(t.balls[k], k)) {
      int parent = ball_contains(t.balls[k - 1], node.lo)
                       ? t.levels[k - 1][ball_position(t.balls[k - 1], node.lo)]
                       : t.locate(k - 1, node.lo);
      const auto& p = t.nodes[parent];
      node.parent = parent;
      node.frontier = p.frontier || shares_endpoint(node, p);
      int id = t.size();
      t.nodes.push_back(node);
      t.nodes[parent].children.push_back(id);
      t.levels[k].push_back(id);
    }
  }
  return t;
}

int SliceDecomposition::max_distance() const {
  int m = 0;
  for (int d : distance) m = std::max(m, d);
  return m;
}

SliceDecomposition build_slices(const TruncatedGraph& gs, const Slope& theta0, int k_max) {
  SliceDecomposition s;
  s.lsq = gs.lsq;
  s.tree = build_interval_tree(gs, theta0, k_max);
  s.distance = bfs_distances(gs.graph, gs.find_slope(theta0));
  s.node_of.assign(gs.size(), -1);
  s.members.assign(s.tree.size(), {});
  for (int v = 0; v < gs.size(); ++v) {
    int d = s.distance[v];
    if (d == kDisconnected || d > k_max + 3) continue;
    int node = d <= 3 ? 0 : s.tree.locate(d - 3, gs.slopes[v]);
    if (node < 0) throw std::logic_error("slope beyond a ball lies on its boundary");
    s.node_of[v] = node;
    s.members[node].push_back(v);
  }
  return s;
}

void stabilize(SliceDecomposition& coarse, const TruncatedGraph& coarse_gs, const SliceDecomposition& fine,
               const TruncatedGraph& fine_gs, const std::string& suggestion) {
  const int k_max = coarse.tree.k_max;
  const int limit = k_max + 4;
  auto within = [&](int d) { return d != kDisconnected && d <= limit; };
  for (int v = 0; v < coarse_gs.size(); ++v) {
    int w = fine_gs.find_slope(coarse_gs.slopes[v]);
    int dc = coarse.distance[v];
    int df = w < 0 ? kDisconnected : fine.distance[w];
    if ((within(dc) || within(df)) && dc != df) {
      std::ostringstream os;
      os << "distance of " << to_string(coarse_gs.slopes[v]) << " changes from " << dc << " to " << df
         << " between L^2 = " << rational_text(coarse.lsq) << " and " << rational_text(fine.lsq);
      throw StabilityError(os.str(), suggestion);
    }
  }
  if (coarse.max_distance() < k_max + 3)
    throw StabilityError("distance " + std::to_string(k_max + 3) + " is not reached at L^2 = " +
                             rational_text(coarse.lsq),
                         suggestion);
  auto& nodes = coarse.tree.nodes;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto& n = nodes[i];
    int j = fine.tree.find(n.level, n.lo, n.hi);
    n.stable = !n.frontier && nodes[n.parent].stable && j >= 0 && !fine.tree.nodes[j].frontier;
  }
}

int tree_distance(const HasseTree& t, int a, int b) {
  if (a < 0 || b < 0 || a >= t.size() || b >= t.size()) throw PreconditionError("unknown tree node");
  int d = 0;
  while (a != b) {
    if (t.nodes[a].level >= t.nodes[b].level)
      a = t.nodes[a].parent;
    else
      b = t.nodes[b].parent;
    ++d;
  }
  return d;
}

SliceRun build_slice_run(const TriangulatedSurface& t, const Slope& theta0, int k_max, const Rational& lsq,
                         const Rational& growth, int steps) {
  if (steps < 2) throw PreconditionError("at least two truncation steps are needed");
  Rational top = lsq;
  for (int i = 1; i < steps; ++i) top *= growth;
  return build_slice_run(build_sc_graph(t, top), theta0, k_max, lsq, growth, steps);
}

SliceRun build_slice_run(const TruncatedGraph& sc_graph, const Slope& theta0, int k_max, const Rational& lsq,
                         const Rational& growth, int steps) {
  if (steps < 2) throw PreconditionError("at least two truncation steps are needed");
  if (growth <= 1) throw PreconditionError("truncation growth must exceed 1");
  if (lsq <= 0) throw PreconditionError("truncation must be positive");
  SliceRun run;
  run.theta0 = theta0;
  run.k_max = k_max;
  Rational l = lsq;
  for (int i = 0; i < steps; ++i, l *= growth) run.lsqs.push_back(l);
  if (sc_graph.lsq < run.lsqs.back()) throw PreconditionError("sc-graph truncation is too small for the run");
  for (const auto& l2 : run.lsqs) {
    run.sc_graphs.push_back(restrict_sc_graph(sc_graph, l2));
    run.slope_graphs.push_back(build_slope_graph(run.sc_graphs.back()));
    if (run.slope_graphs.back().find_slope(theta0) < 0)
      throw PreconditionError("basepoint " + to_string(theta0) + " is not in the truncation at L^2 = " +
                              rational_text(l2));
    run.slices.push_back(build_slices(run.slope_graphs.back(), theta0, k_max));
  }

  // suggest the first step that reaches k_max + 3, else one step beyond the run
  Rational next = run.lsqs.back() * growth;
  for (int i = 1; i < steps && run.slices[0].max_distance() < k_max + 3; ++i) {
    if (run.slices[i].max_distance() >= k_max + 3) {
      next = run.lsqs[i];
      break;
    }
  }
  const std::string suggestion = "rerun with L^2 >= " + rational_text(next);
  for (int i = 0; i + 1 < steps; ++i)
    stabilize(run.slices[i], run.slope_graphs[i], run.slices[i + 1], run.slope_graphs[i + 1], suggestion);
  return run;
}

std::vector<Certificate> certify_slices(const SliceRun& run) {
  const auto& s = run.slices.at(0);
  const auto& gs = run.slope_graphs.at(0);
  const auto& sc = run.sc_graphs.at(0);
  const auto& tree = s.tree;
  const int k_max = run.k_max;
  std::vector<Certificate> out;

  Certificate partition;
  partition.kind = "hasse";
  partition.constants = "partition";
  partition.semantics = Semantics::at_truncation;
  {
    std::vector<int> count(gs.size(), 0);
    for (int n = 0; n < tree.size(); ++n) {
      const auto& node = tree.nodes[n];
      for (int v : s.members[n]) {
        ++count[v];
        int d = s.distance[v];
        bool ok = node.level == 0 ? d <= 3 : d == node.level + 3 && arc_contains(node.lo, node.hi, gs.slopes[v]);
        partition.record(ok, to_string(gs.slopes[v]) + " does not belong to " + tree.label(n));
      }
    }
    for (int v = 0; v < gs.size(); ++v) {
      int d = s.distance[v];
      bool in_range = d != kDisconnected && d <= k_max + 3;
      partition.record(count[v] == (in_range ? 1 : 0),
                       to_string(gs.slopes[v]) + " lies in " + std::to_string(count[v]) + " slices");
    }
    int empty = 0, stable = 0;
    for (int n = 0; n < tree.size(); ++n) {
      stable += tree.nodes[n].stable;
      empty += tree.nodes[n].stable && s.members[n].empty();
    }
    partition.note = std::to_string(stable) + " stable nodes, " + std::to_string(empty) + " with empty slices";
  }
  out.push_back(partition);

  Certificate diam;
  diam.kind = "slice-diameter";
  diam.constants = "17";
  diam.semantics = Semantics::proves_true_claim;
  Certificate pre;
  pre.kind = "slice-diameter";
  pre.constants = "29";
  pre.semantics = Semantics::proves_true_claim;
  {
    int worst = 0, worst_pre = 0;
    for (int n = 0; n < tree.size(); ++n) {
      if (!tree.nodes[n].stable || s.members[n].empty()) continue;
      int d = set_diameter(gs.graph, s.members[n]);
      diam.record(d != kDisconnected && d <= 17, tree.label(n) + " has diameter bound " + std::to_string(d));
      std::vector<int> fibre;
      for (int v : s.members[n]) fibre.insert(fibre.end(), gs.fibres[v].begin(), gs.fibres[v].end());
      int dp = set_diameter(sc.graph, fibre);
      pre.record(dp != kDisconnected && dp <= 29, tree.label(n) + " has preimage diameter bound " + std::to_string(dp));
      worst = std::max(worst, d);
      worst_pre = std::max(worst_pre, dp);
    }
    diam.add_witness("largest slice diameter bound " + std::to_string(worst));
    pre.add_witness("largest preimage diameter bound " + std::to_string(worst_pre));
  }
  out.push_back(diam);
  out.push_back(pre);

  Certificate shape;
  shape.kind = "hasse";
  shape.constants = "tree";
  shape.semantics = Semantics::at_truncation;
  {
    std::size_t edges = 0;
    shape.record(tree.nodes[0].parent == -1 && tree.nodes[0].level == 0, "root has a parent");
    for (int n = 1; n < tree.size(); ++n) {
      const auto& node = tree.nodes[n];
      const auto& p = tree.nodes.at(node.parent);
      ++edges;
      bool listed = std::count(p.children.begin(), p.children.end(), n) == 1;
      shape.record(p.level == node.level - 1 && listed, tree.label(n) + " has an inconsistent parent");
      if (node.frontier) continue;
      bool inside = arc_contains(p.lo, p.hi, node.lo) && arc_contains(p.lo, p.hi, node.hi) &&
                    !shares_endpoint(node, p) && !(node.lo == node.hi);
      shape.record(inside, tree.label(n) + " is not strictly inside " + tree.label(node.parent));
    }
    shape.record(edges + 1 == static_cast<std::size_t>(tree.size()), "edge count is not nodes - 1");
  }
  out.push_back(shape);

  Certificate adjacency;
  adjacency.kind = "hasse";
  adjacency.constants = "adjacency";
  adjacency.semantics = Semantics::at_truncation;
  {
    auto stable_node = [&](int n) { return n >= 0 && tree.nodes[n].stable; };
    std::map<std::pair<int, int>, bool> linked;
    for (int u = 0; u < gs.size(); ++u) {
      for (int v : gs.graph.adj[u]) {
        if (v <= u) continue;
        int a = s.node_of[u], b = s.node_of[v];
        if (a == b || !stable_node(a) || !stable_node(b)) continue;
        bool tree_edge = tree.nodes[a].parent == b || tree.nodes[b].parent == a;
        adjacency.record(tree_edge, "edge " + to_string(gs.slopes[u]) + " - " + to_string(gs.slopes[v]) + " joins " +
                                        tree.label(a) + " and " + tree.label(b));
        linked[{std::min(a, b), std::max(a, b)}] = true;
      }
    }
    int skipped = 0;
    for (int n = 1; n < tree.size(); ++n) {
      const auto& node = tree.nodes[n];
      if (!node.stable || !tree.nodes[node.parent].stable) continue;
      if (s.members[n].empty()) {
        ++skipped;
        continue;
      }
      adjacency.record(linked.count({std::min(n, node.parent), std::max(n, node.parent)}) == 1,
                       "no edge between the slices of " + tree.label(n) + " and its parent");
    }
    adjacency.note = std::to_string(skipped) + " tree edges with an empty child slice";
  }
  out.push_back(adjacency);

  Certificate growth;
  growth.kind = "hasse";
  growth.constants = "subdivision";
  growth.semantics = Semantics::at_truncation;
  {
    int counted = 0, every_step = 0;
    for (int n = 0; n < tree.size(); ++n) {
      const auto& node = tree.nodes[n];
      if (!node.stable || node.level >= k_max || tree.child_count(n) == 0) continue;
      std::vector<int> counts, density;
      for (std::size_t i = 0; i < run.slices.size(); ++i) {
        const auto& ti = run.slices[i].tree;
        int j = ti.find(node.level, node.lo, node.hi);
        counts.push_back(j < 0 ? -1 : ti.child_count(j));
        int inside = 0;
        for (const auto& sl : run.slope_graphs[i].slopes) inside += arc_contains(node.lo, node.hi, sl);
        density.push_back(inside);
      }
      // non-decreasing at every step, strictly larger across the whole run
      bool strict = counts.front() < counts.back(), dense = density.front() < density.back();
      for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        strict = strict && counts[i] >= 0 && counts[i] <= counts[i + 1];
        dense = dense && density[i] <= density[i + 1];
      }
      bool each = counts.front() >= 0;
      for (std::size_t i = 0; i + 1 < counts.size(); ++i) each = each && counts[i] < counts[i + 1];
      every_step += each;
      std::ostringstream os;
      os << tree.label(n) << " child counts";
      for (int c : counts) os << " " << c;
      growth.record(strict, os.str());
      growth.record(dense, tree.label(n) + " slope counts do not grow");
      if (counted++ < 3) growth.add_witness(os.str());
    }
    growth.note = std::to_string(counted) + " expanded stable nodes across " + std::to_string(run.slices.size()) +
                  " truncations, " + std::to_string(every_step) + " strictly growing at every step";
  }
  out.push_back(growth);
  return out;
}

std::vector<Certificate> qi_certificate(const SliceRun& run, std::size_t samples, std::mt19937_64& rng,
                                        const ExactDistance& exact) {
  const auto& s = run.slices.at(0);
  const auto& gs = run.slope_graphs.at(0);
  const auto& sc = run.sc_graphs.at(0);
  const auto& tree = s.tree;
  const Semantics sem = exact ? Semantics::proves_true_claim : Semantics::at_truncation;

  std::vector<int> eligible;
  for (int v = 0; v < gs.size(); ++v)
    if (s.node_of[v] >= 0 && tree.nodes[s.node_of[v]].stable) eligible.push_back(v);

  DistanceCache slope_dist(gs.graph), sc_dist(sc.graph);
  // lower bound (exact when known) and upper bound for slope pairs
  auto bounds = [&](int x, int y) -> std::pair<int, int> {
    int up = slope_dist(x, y);
    int lo = exact ? exact(gs.slopes[x], gs.slopes[y]) : up;
    return {lo, up};
  };
  auto bucket = [](int d) { return d <= 2 ? 0 : (d <= 5 ? 1 : 2); };

  // stratified slope pairs
  std::vector<std::pair<int, int>> pairs;
  if (!eligible.empty()) {
    const std::size_t target = (samples + 2) / 3;
    std::size_t filled[3] = {0, 0, 0};
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    for (std::size_t tries = 0; tries < 200 * samples + 1000 && pairs.size() < 3 * target; ++tries) {
      int x = eligible[pick(rng)], y = eligible[pick(rng)];
      int up = slope_dist(x, y);
      if (up == kDisconnected) continue;
      int b = bucket(up);
      if (filled[b] >= target) continue;
      ++filled[b];
      pairs.push_back({x, y});
    }
  }

  Certificate slopes_cert;
  slopes_cert.kind = "qi";
  slopes_cert.constants = "(18,17)";
  slopes_cert.semantics = sem;
  Certificate sc_cert;
  sc_cert.kind = "qi";
  sc_cert.constants = "(30,29)";
  sc_cert.semantics = sem;
  int counts[3] = {0, 0, 0};
  for (auto [x, y] : pairs) {
    auto [lo, up] = bounds(x, y);
    ++counts[bucket(up)];
    int dt = tree_distance(tree, s.node_of[x], s.node_of[y]);
    std::string pair = to_string(gs.slopes[x]) + " " + to_string(gs.slopes[y]) + " d=" + std::to_string(up) +
                       " dT=" + std::to_string(dt);
    slopes_cert.record(lo <= up, pair + " exact distance exceeds the truncated one");
    slopes_cert.record(dt <= 18 * lo + 17, pair + " violates dT <= 18 d + 17");
    slopes_cert.record(up <= 18 * (dt + 17), pair + " violates d <= 18 (dT + 17)");

    // one saddle connection from each fibre
    const auto& fx = gs.fibres[x];
    const auto& fy = gs.fibres[y];
    std::uniform_int_distribution<std::size_t> px(0, fx.size() - 1), py(0, fy.size() - 1);
    int a = fx[px(rng)], b = fy[py(rng)];
    int sc_up = sc_dist(a, b);
    int sc_lo = x == y ? 0 : lo;  // the slope map does not increase distances
    std::string scp = sc.label(a) + " " + sc.label(b) + " d=" + std::to_string(sc_up) + " dT=" + std::to_string(dt);
    sc_cert.record(sc_up != kDisconnected && sc_lo <= sc_up, scp + " bounds are inconsistent");
    sc_cert.record(dt <= 30 * sc_lo + 29, scp + " violates dT <= 30 d + 29");
    sc_cert.record(sc_up != kDisconnected && sc_up <= 30 * (dt + 29), scp + " violates d <= 30 (dT + 29)");
  }
  std::string strata = "pairs near=" + std::to_string(counts[0]) + " mid=" + std::to_string(counts[1]) +
                       " far=" + std::to_string(counts[2]);
  slopes_cert.note = strata;
  sc_cert.note = strata;
  if (pairs.empty()) {
    slopes_cert.record(false, "no stable slice members to sample");
    sc_cert.record(false, "no stable slice members to sample");
  }
  return {slopes_cert, sc_cert};
}

void write_tree_dot(std::ostream& os, const HasseTree& t) {
  os << "digraph hasse {\n";
  for (int n = 0; n < t.size(); ++n) {
    const auto& node = t.nodes[n];
    os << "  n" << n << " [label=\"" << t.label(n) << " k=" << node.level << "\"";
    if (node.frontier) os << " style=dashed";
    os << "];\n";
  }
  for (int n = 1; n < t.size(); ++n) os << "  n" << t.nodes[n].parent << " -> n" << n << ";\n";
  os << "}\n";
}

void write_slice_csv(std::ostream& os, const SliceDecomposition& s, const TruncatedGraph& gs) {
  os << "slope,level,interval,distance\n";
  for (int v = 0; v < gs.size(); ++v) {
    int n = s.node_of[v];
    if (n < 0) continue;
    os << to_string(gs.slopes[v]) << "," << s.tree.nodes[n].level << "," << n << "," << s.distance[v] << "\n";
  }
}

}  // namespace sconn
