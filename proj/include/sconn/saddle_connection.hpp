#pragma once

// Saddle connections on a triangulated surface, their enumeration by wedge
// search, and slopes.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sconn/exact.hpp"
#include "sconn/triangulation.hpp"

namespace sconn {

/// Transverse passage through the interior of an edge: the segment leaves tri(half_edge)
/// through half_edge at parameter t in (0, 1), measured from the half-edge's origin.
struct Crossing {
  int half_edge = 0;
  Rational t;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// An unoriented saddle connection stored in a canonical orientation. holonomy is the
/// displacement in the chart of the start triangle. The orientation whose holonomy is
/// canonical (x > 0, or x == 0 and y > 0) is preferred; when the two orientations do not
/// differ in that respect (odd number of sign -1 crossings) the smaller key wins.
struct SaddleConnection {
  Vec2 holonomy;
  int start_vertex = 0;
  int end_vertex = 0;
  Corner start;
  Corner end;
  std::vector<Crossing> crossings;
  /// For a saddle connection that is a triangulation edge: the half-edge it runs along
  /// (crossings is then empty). Otherwise -1.
  int along_edge = -1;
  std::uint64_t surface = 0;

  bool is_edge() const { return along_edge >= 0; }
  /// Holonomy up to sign, in canonical form. Equals holonomy except on
  /// half-translation surfaces where neither orientation is canonical in its start chart.
  Vec2 canonical_holonomy() const { return canonical_direction(holonomy); }
  Rational length2() const { return norm2(holonomy); }
  /// Combinatorial identity: start corner, crossed half-edges, end corner.
  std::vector<int> key() const;

  friend bool operator==(const SaddleConnection& a, const SaddleConnection& b) {
    return a.surface == b.surface && a.key() == b.key();
  }
};

std::ostream& operator<<(std::ostream& os, const SaddleConnection& sc);

/// The same segment traversed backwards (not canonicalized).
SaddleConnection reversed(const TriangulatedSurface& t, const SaddleConnection& sc);

/// Returns sc or its reverse, whichever is the canonical orientation.
SaddleConnection canonicalize(const TriangulatedSurface& t, const SaddleConnection& sc);

/// Saddle connection along an edge of the triangulation.
SaddleConnection edge_connection(const TriangulatedSurface& t, int half_edge);

/// Compares the lines spanned by a and b by angle in [0, pi) from the positive x-axis.
int direction_cmp(const Vec2& a, const Vec2& b);

/// Deterministic order: squared length, then direction angle in [0, pi), then key.
bool enumeration_less(const SaddleConnection& a, const SaddleConnection& b);

/// All saddle connections with squared length <= lsq, each once, in enumeration order.
/// Requires lsq > 0.
std::vector<SaddleConnection> enumerate(const TriangulatedSurface& t, const Rational& lsq);

/// A shortest saddle connection (first in enumeration order).
SaddleConnection systole(const TriangulatedSurface& t);

/// Checks the stored data against the surface: crossings consecutive, collinear,
/// strictly inside their edges, endpoints at the right corners, holonomy consistent.
bool is_valid(const TriangulatedSurface& t, const SaddleConnection& sc);

/// A point of RP^1 as a primitive integer direction (x, y) with x > 0, or (0, 1).
/// Written y/x, so "1/0" is vertical and "-1/4" is the direction (4, -1).
struct Slope {
  Integer x = 1;
  Integer y = 0;

  Slope() = default;
  /// Normalizes any nonzero rational direction.
  explicit Slope(const Vec2& direction);
  static Slope from_ratio(const Integer& rise, const Integer& run);
  Vec2 direction() const { return Vec2(Rational(x), Rational(y)); }

  friend bool operator==(const Slope&, const Slope&) = default;
  friend bool operator<(const Slope& a, const Slope& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

/// Parses "p/q" (rise/run) or an integer "p". "1/0" is vertical.
Slope parse_slope(const std::string& text);
std::string to_string(const Slope& s);
std::ostream& operator<<(std::ostream& os, const Slope& s);

inline Slope slope_of(const SaddleConnection& sc) { return Slope(sc.holonomy); }

/// |det| of the two primitive directions; 1 means Farey-adjacent on the square torus.
Integer slope_det(const Slope& a, const Slope& b);

}  // namespace sconn
