#pragma once

// Ladder paths between saddle connections and the path-level certificates built on
// them: slope monotonicity, bottlenecks, linking slopes and 4-centres.

#include <optional>
#include <utility>
#include <vector>

#include "sconn/certificate.hpp"
#include "sconn/geodesics.hpp"
#include "sconn/graphs.hpp"

namespace sconn {

struct LadderPath {
  Side side = Side::right;
  SaddleConnection source;                // beta
  SaddleConnection target;                // alpha
  std::vector<SaddleConnection> entries;  // delta_0 = beta .. delta_{n+1} = alpha, canonical orientation

  /// entries without consecutive repeats
  std::vector<SaddleConnection> dedup() const;
  std::vector<Slope> slopes(bool dedup_consecutive = true) const;
};

struct LadderPair {
  LadderPath left;
  LadderPath right;
};

/// delta_i = first saddle connection of the straightened bicorn arc gamma_i, on each
/// side. The right ladder runs anticlockwise in RP^1 from slope(beta) to slope(alpha),
/// the left one clockwise. Throws PreconditionError when alpha == beta or the
/// saddle connections do not belong to t.
LadderPair ladder_paths(const TriangulatedSurface& t, const SaddleConnection& alpha, const SaddleConnection& beta);

/// Boundary paths of the Farey polygon from s1 to s2: (anticlockwise, clockwise).
std::pair<std::vector<Slope>, std::vector<Slope>> farey_ladder(const Slope& s1, const Slope& s2);

/// Normalized direction of d in the frame sending beta to (1, 0) and alpha to +-(0, 1)
/// with positive determinant; scaled by a positive factor.
Vec2 normalized_direction(const SaddleConnection& alpha, const SaddleConnection& beta, const Vec2& d);

/// Endpoints, pairwise non-crossing of delta_i^{+-} with delta_i^{-+} and
/// delta_{i+1}^{+-}, strict sign of normalized slopes for 1 <= i <= n, and weak
/// monotonicity of normalized slopes. Kind "ladder-properties", exact.
Certificate check_ladder_properties(const TriangulatedSurface& t, const LadderPair& ladders);

/// Vertex of the saddle connection in an sc-graph, or -1 when outside the truncation.
int vertex_of(const TruncatedGraph& g, const SaddleConnection& sc);

/// Every ladder entry has a path vertex within distance 3 in g. The path is a vertex
/// list of the sc-graph g from beta to alpha (PreconditionError otherwise). Entries
/// missing from the truncation fail.
Certificate check_bottleneck(const LadderPath& ladder, const std::vector<int>& path, const TruncatedGraph& g);

/// Shortest path from -> via followed by via -> to (empty if disconnected).
std::vector<int> detour_path(const Graph& g, int from, int via, int to);

struct LinkingOptions {
  Rational cap_lsq = 100;  // largest enumeration bound tried
};

struct LinkingResult {
  std::optional<SaddleConnection> witness;
  int distance = -1;    // certified upper bound for d({a1, a3}, {a2, a4})
  Rational searched_lsq;  // last enumeration bound used
  Certificate certificate;
};

/// Requires distinct slopes with a2, a4 separated by {a1, a3} in RP^1, a1 disjoint from
/// a3 and a2 disjoint from a4 (PreconditionError otherwise). Searches a1 .. a4 and then
/// enumerate(t, L^2) for L^2 = systole^2, 4 systole^2, ... up to the cap, for a saddle
/// connection within 1 of both pairs.
LinkingResult check_linking(const TriangulatedSurface& t, const SaddleConnection& a1, const SaddleConnection& a2,
                            const SaddleConnection& a3, const SaddleConnection& a4, const LinkingOptions& opt = {});

/// True iff the slopes of x and y lie in different components of RP^1 minus {p, q}.
/// All four slopes must be distinct.
bool slopes_separated(const Slope& p, const Slope& q, const Slope& x, const Slope& y);

struct FourCentre {
  std::optional<std::vector<SaddleConnection>> triple;  // delta_1, delta_2, delta_3 pairwise disjoint
  std::vector<std::vector<int>> sides;                  // g-geodesics a1a2, a2a3, a3a1
  std::vector<int> side_distance;                       // distance from delta_1 to each side
  Certificate certificate;
};

/// Searches the ladders between a_i and a_{i+1} for a pairwise disjoint triple, one
/// entry from each, then certifies that delta_1 is within 4 of each side of the
/// geodesic triangle in g (sides from shortest_path unless given).
FourCentre four_centre(const TriangulatedSurface& t, const SaddleConnection& a1, const SaddleConnection& a2,
                       const SaddleConnection& a3, const TruncatedGraph& g,
                       const std::vector<std::vector<int>>& sides = {});

}  // namespace sconn
