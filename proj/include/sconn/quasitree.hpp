#pragma once

// Balls around a basepoint slope, the complement intervals of those balls, their
// containment (Hasse) tree, slices, and the quasi-isometry certificates.
//
// Intervals are open arcs of RP^1 traversed anticlockwise (increasing angle mod pi)
// from lo to hi. lo == hi stands for RP^1 minus that point.

#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "sconn/certificate.hpp"
#include "sconn/graphs.hpp"

namespace sconn {

/// True iff x lies in the open anticlockwise arc from lo to hi.
bool arc_contains(const Slope& lo, const Slope& hi, const Slope& x);

struct IntervalNode {
  int level = 0;
  Slope lo, hi;
  int parent = -1;
  std::vector<int> children;
  // Shares an endpoint with its parent, or descends from such a node. True complement
  // components never do, so these are truncation artifacts.
  bool frontier = false;
  // The same non-frontier node exists one truncation step further (see stabilize).
  bool stable = false;
};

/// Gaps between cyclically consecutive slopes of a finite non-empty set, as nodes of
/// the given level (no parent links). Ordered by lo.
std::vector<IntervalNode> complement_intervals(std::vector<Slope> ballset, int level);

struct HasseTree {
  Slope theta0;
  int k_max = 0;
  std::vector<IntervalNode> nodes;       // nodes[0] is the root RP^1 minus theta0
  std::vector<std::vector<Slope>> balls;  // balls[k], sorted by angle
  std::vector<std::vector<int>> levels;   // levels[k][i]: node of the gap after balls[k][i]

  int size() const { return static_cast<int>(nodes.size()); }
  /// Node with these level and endpoints, or -1.
  int find(int level, const Slope& lo, const Slope& hi) const;
  /// Level-k node whose interval contains s, or -1 when s is in balls[k].
  int locate(int level, const Slope& s) const;
  /// Children that are not frontier nodes.
  int child_count(int node) const;
  std::string label(int node) const;
};

/// Slope vertices of gs within distance r of theta0, in angle order. Throws
/// PreconditionError when theta0 is not a vertex.
std::vector<int> ball(const TruncatedGraph& gs, const Slope& theta0, int r);

/// Complement intervals of the balls B(0) .. B(k_max) around theta0 in the slope graph,
/// linked by containment.
HasseTree build_interval_tree(const TruncatedGraph& gs, const Slope& theta0, int k_max);

struct SliceDecomposition {
  Rational lsq;
  HasseTree tree;
  std::vector<int> distance;              // slope vertex -> d(theta0, .) in gs
  std::vector<int> node_of;               // slope vertex -> slice node, -1 beyond k_max + 3
  std::vector<std::vector<int>> members;  // node -> slope vertices of its slice

  /// Largest finite distance from theta0.
  int max_distance() const;
};

/// Z(root) = B(3); Z(I) for I of level k >= 1 holds the slopes of I at distance k + 3.
SliceDecomposition build_slices(const TruncatedGraph& gs, const Slope& theta0, int k_max);

/// Compares a decomposition with the next truncation step. Throws StabilityError
/// (carrying `suggestion`) when a distance <= k_max + 4 at either step differs, or when
/// distance k_max + 3 is not reached. Marks the nodes present, non-frontier, in both.
void stabilize(SliceDecomposition& coarse, const TruncatedGraph& coarse_gs, const SliceDecomposition& fine,
               const TruncatedGraph& fine_gs, const std::string& suggestion);

/// Tree path length between two nodes; PreconditionError on unknown nodes.
int tree_distance(const HasseTree& t, int a, int b);

/// Truncations lsq * growth^i for i < steps, built from one sc-graph at the largest.
struct SliceRun {
  Slope theta0;
  int k_max = 0;
  std::vector<Rational> lsqs;
  std::vector<TruncatedGraph> sc_graphs;
  std::vector<TruncatedGraph> slope_graphs;
  std::vector<SliceDecomposition> slices;
};

/// Every step but the last is stabilized against the next one. StabilityError suggests
/// a deeper starting truncation.
SliceRun build_slice_run(const TriangulatedSurface& t, const Slope& theta0, int k_max, const Rational& lsq,
                         const Rational& growth, int steps = 3);
/// The same from an existing sc-graph (truncated at least at the largest step).
SliceRun build_slice_run(const TruncatedGraph& sc_graph, const Slope& theta0, int k_max, const Rational& lsq,
                         const Rational& growth, int steps = 3);

/// Partition, slice diameters (17) and preimage diameters (29), Hasse tree shape and
/// slice adjacency versus Hasse adjacency, all on the first step. Child counts and
/// slope counts of the expanded stable nodes must not drop between steps and must grow
/// from the first step to the last.
std::vector<Certificate> certify_slices(const SliceRun& run);

/// Exact slope distance when known (the Farey oracle on the torus).
using ExactDistance = std::function<int(const Slope&, const Slope&)>;

/// d_T <= C d + D and d <= C (d_T + D) on stratified pairs (near <= 2, mid 3..5, far
/// >= 6) of slopes in stable slices, for (18, 17), and on saddle connections of their
/// fibres for (30, 29). With `exact` the first inequality uses exact distances (lower
/// bounds on the saddle connection side); otherwise it only holds at truncation.
std::vector<Certificate> qi_certificate(const SliceRun& run, std::size_t samples, std::mt19937_64& rng,
                                        const ExactDistance& exact = {});

void write_tree_dot(std::ostream& os, const HasseTree& t);
/// slope,level,interval,distance for every slope assigned to a slice.
void write_slice_csv(std::ostream& os, const SliceDecomposition& s, const TruncatedGraph& gs);

}  // namespace sconn
