#pragma once

// Truncated saddle connection graphs and graphs of slopes, BFS metrics, Gromov
// products, k-centres and bounded-class quotients.
//
// Distances are computed inside a finite truncation, so they are upper bounds for
// the distances of the infinite graph.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "sconn/exact.hpp"
#include "sconn/saddle_connection.hpp"
#include "sconn/triangulation.hpp"

namespace sconn {

/// Returned by BFS for vertices not reachable inside the truncation.
inline constexpr int kDisconnected = -1;

/// Simple undirected graph; adjacency lists are sorted.
struct Graph {
  std::vector<std::vector<int>> adj;

  Graph() = default;
  explicit Graph(int n) : adj(n) {}
  int size() const { return static_cast<int>(adj.size()); }
  std::size_t edge_count() const;
  bool adjacent(int u, int v) const;
  /// Adds u-v unless present; keeps lists sorted. Self-loops are rejected.
  void add_edge(int u, int v);
  /// Induced subgraph on the given vertices, relabelled by their position.
  Graph induced(const std::vector<int>& vertices) const;
};

enum class GraphKind { sc_graph, slope_graph };

const char* to_string(GraphKind k);

struct TruncatedGraph {
  GraphKind kind = GraphKind::sc_graph;
  Rational lsq;                          // truncation: squared length bound
  std::vector<SaddleConnection> scs;     // the enumerated saddle connections
  std::vector<Slope> slopes;             // slope graph: vertices, by direction angle
  std::vector<int> slope_index;          // slope graph: sc index -> slope vertex
  std::vector<std::vector<int>> fibres;  // slope graph: slope vertex -> sc indices
  Graph graph;

  int size() const { return graph.size(); }
  std::string label(int v) const;
  /// Vertex of a slope, or -1.
  int find_slope(const Slope& s) const;
  /// Vertex of the saddle connection with this canonical holonomy in an sc-graph
  /// (the first in enumeration order), or -1.
  int find_holonomy(const Vec2& h) const;
};

/// Induced subgraph of the saddle connection graph on enumerate(t, lsq).
TruncatedGraph build_sc_graph(const TriangulatedSurface& t, const Rational& lsq);

/// The same on an explicit list of distinct saddle connections.
TruncatedGraph build_sc_graph(const TriangulatedSurface& t, std::vector<SaddleConnection> scs,
                              const Rational& lsq);

/// Induced subgraph of an sc-graph on its saddle connections of squared length <= lsq.
/// Vertices keep their enumeration order, so they form a prefix.
TruncatedGraph restrict_sc_graph(const TruncatedGraph& g, const Rational& lsq);

/// Quotient of an sc-graph by parallelism.
TruncatedGraph build_slope_graph(const TruncatedGraph& sc_graph);

/// BFS distances from the sources (kDisconnected where unreachable).
std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources);
std::vector<int> bfs_distances(const Graph& g, int source);
int bfs_distance(const Graph& g, int u, int v);

/// A shortest path u .. v; each vertex's parent is its smallest-index neighbour one
/// step closer to u. Empty when disconnected.
std::vector<int> shortest_path(const Graph& g, int u, int v);

/// (x|y)_z from BFS distances. Throws PreconditionError on a disconnected triple.
Rational gromov_product(const Graph& g, int x, int y, int z);

struct KCentre {
  int vertex = -1;
  int k = 0;
  std::vector<int> side_xy, side_yz, side_zx;  // the sides searched
  int dist_xy = 0, dist_yz = 0, dist_zx = 0;   // distances from vertex to each side
};

/// Searches for a vertex within k of the three sides, one shortest path per side
/// (shortest_path order). Candidates are all vertices; the smallest index with the
/// smallest maximal side distance wins. nullopt if none is within k.
std::optional<KCentre> find_k_centre(const Graph& g, int x, int y, int z, int k);

/// Same, with caller-supplied sides.
std::optional<KCentre> find_k_centre(const Graph& g, const std::vector<int>& side_xy,
                                     const std::vector<int>& side_yz, const std::vector<int>& side_zx, int k);

/// Quotient by a partition given as class_of[v] in 0 .. classes-1. Throws
/// PreconditionError if class_of is not onto 0 .. classes-1 or a class has
/// g-diameter larger than K (or is disconnected in g).
Graph quotient_graph(const Graph& g, const std::vector<int>& class_of, int K);

struct QiCheck {
  int K = 0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;  // first few violating pairs
  bool ok() const { return violations == 0; }
};

/// Checks (K+1)^-1 d - K <= d_quotient <= (K+1) d + K on sampled pairs of vertices
/// connected in g (all pairs when samples is 0).
QiCheck check_quotient_qi(const Graph& g, const Graph& quotient, const std::vector<int>& class_of, int K,
                          std::size_t samples, std::mt19937_64& rng);

/// Largest pairwise BFS distance among the vertices (kDisconnected if some pair is).
int set_diameter(const Graph& g, const std::vector<int>& vertices);

void write_dot(std::ostream& os, const TruncatedGraph& g, const std::string& name);
/// Distance matrix as CSV with a header row of labels.
void write_distance_csv(std::ostream& os, const TruncatedGraph& g);

}  // namespace sconn
