#pragma once

// Farey graph arithmetic: exact ground truth for the once-marked square torus, whose
// saddle connection graph is the Farey graph (one saddle connection per slope).

#include <cstdint>
#include <string>
#include <vector>

#include "sconn/saddle_connection.hpp"

namespace sconn {

/// Primitive direction (p, q) written q/p: p > 0, or (p, q) = (0, 1) for 1/0.
/// (1, 0) is horizontal, (0, 1) vertical.
struct FareySlope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  FareySlope() = default;
  /// Normalizes any nonzero pair. Throws PreconditionError for (0, 0).
  FareySlope(std::int64_t p, std::int64_t q);

  std::int64_t height() const;

  friend bool operator==(const FareySlope&, const FareySlope&) = default;
  friend auto operator<=>(const FareySlope&, const FareySlope&) = default;
};

std::string to_string(const FareySlope& s);
FareySlope to_farey(const Slope& s);  // throws PreconditionError beyond 64 bits
Slope to_slope(const FareySlope& s);

bool farey_adjacent(const FareySlope& u, const FareySlope& v);

struct FareyFan {
  std::vector<FareySlope> right;  // anticlockwise from u to v
  std::vector<FareySlope> left;   // clockwise from u to v
};

/// The two boundary paths from u to v of the union of the Farey triangles having an
/// edge that separates u from v. Both are [u, v] when u, v are adjacent.
/// Throws PreconditionError when u == v.
FareyFan farey_fan(const FareySlope& u, const FareySlope& v);

/// Exact distance in the Farey graph. Every path from u to v meets both ends of each
/// separating edge's pair, so geodesics stay on the fan's vertices; the search is a
/// BFS on that finite set.
int farey_distance(const FareySlope& u, const FareySlope& v);

/// Slopes with max(|p|, |q|) <= h, in increasing order.
std::vector<FareySlope> slopes_of_height(std::int64_t h);

/// All-pairs distances of the Farey graph induced on the slopes of height <= h:
/// result[i][j] for the slopes in slopes_of_height(h) order (-1 if disconnected).
std::vector<std::vector<int>> bounded_farey_distances(std::int64_t h);

}  // namespace sconn
