#pragma once

// Transverse intersections of saddle connections, straightening of arcs to
// their flat geodesic representatives, and bicorn arcs.

#include <cstdint>
#include <vector>

#include "sconn/develop.hpp"
#include "sconn/saddle_connection.hpp"

namespace sconn {

/// An arc between singularities, up to proper homotopy: it leaves the start corner,
/// crosses the listed half-edges in order (each from tri(half_edge) into its twin's
/// triangle) and arrives at the end corner. Crossing parameters are informational;
/// only the half-edge sequence determines the homotopy class.
struct CombinatorialArc {
  std::uint64_t surface = 0;
  Corner start;
  std::vector<Crossing> crossings;
  Corner end;
};

CombinatorialArc to_arc(const SaddleConnection& sc);

/// Arc following a polyline that starts at the given corner. Each displacement is in
/// the chart of the start triangle; the first must point strictly into the corner,
/// intermediate points must lie in triangle interiors and the final point must be a
/// singularity. Throws PreconditionError otherwise.
CombinatorialArc trace_polyline(const TriangulatedSurface& t, Corner start, const std::vector<Vec2>& displacements);

/// Consecutive crossings share a triangle and the endpoints sit in the first/last triangle.
bool is_valid(const TriangulatedSurface& t, const CombinatorialArc& arc);

/// Removes immediate backtracking (h followed by twin(h)).
CombinatorialArc reduced(const TriangulatedSurface& t, const CombinatorialArc& arc);

/// Per-triangle pieces of a saddle connection with their development charts.
struct Trace {
  struct Piece {
    int triangle = 0;
    Chart chart;              // local chart of the triangle -> start chart of the saddle connection
    Rational in_coord;        // boundary coordinate: corner i is i, a point at t on half-edge 3T+i is i + t
    Rational out_coord;
    Vec2 in_pos;              // local coordinates
    Vec2 out_pos;
  };
  const SaddleConnection* sc = nullptr;
  std::vector<Piece> pieces;  // empty for an edge saddle connection
  Vec2 origin;                // developed start point

  Trace() = default;
  Trace(const TriangulatedSurface& t, const SaddleConnection& sc);
};

struct IntersectionPoint {
  int triangle = 0;
  Vec2 position;            // local coordinates in triangle
  Rational lambda_a;        // fraction of the way along a (resp. b) from its start
  Rational lambda_b;
  int slot_a = 0;           // 2k+1: inside piece k; 2k+2: on crossing k (edge saddle connections: 1)
  int slot_b = 0;
  Vec2 dir_a;               // directions of a and b in the triangle's chart
  Vec2 dir_b;
};

/// Transverse interior intersections, ordered along a. Identical or parallel saddle
/// connections and pairs meeting only at singularities give an empty list.
std::vector<IntersectionPoint> interior_intersections(const TriangulatedSurface& t, const Trace& a, const Trace& b);
std::vector<IntersectionPoint> interior_intersections(const TriangulatedSurface& t, const SaddleConnection& a,
                                                      const SaddleConnection& b);

/// True iff the interiors intersect transversely. Throws PreconditionError for saddle
/// connections from different triangulations.
bool crosses(const TriangulatedSurface& t, const Trace& a, const Trace& b);
bool crosses(const TriangulatedSurface& t, const SaddleConnection& a, const SaddleConnection& b);

/// Geodesic representative of the arc's proper homotopy class as consecutive saddle
/// connections from the start. Empty exactly when the arc is null-homotopic into a
/// singularity.
std::vector<SaddleConnection> straighten(const TriangulatedSurface& t, const CombinatorialArc& arc);

/// Intersections of the geodesic representatives of two arcs, ordered along a:
/// (index of the piece of straighten(a), point).
std::vector<std::pair<int, IntersectionPoint>> interior_intersections(const TriangulatedSurface& t,
                                                                       const CombinatorialArc& a,
                                                                       const CombinatorialArc& b);

enum class Side { left, right };

const char* to_string(Side s);

struct BicornArc {
  int index = 0;
  Side side = Side::right;
  CombinatorialArc arc;
  /// j when the b-part stops at p_j (so a c-part runs back to p_0); -1 otherwise.
  int b_stop = -1;

  bool has_c_part() const { return b_stop >= 0; }
};

/// gamma_0 = beta, gamma_1 .. gamma_n, gamma_{n+1} = alpha for the requested side, where
/// alpha is oriented by its canonical orientation (p_0 = its start) and the
/// intersections p_1 .. p_n are ordered along it. Right means the b-part leaves p_i to
/// the right of alpha. Throws PreconditionError when alpha == beta.
std::vector<BicornArc> bicorn_arcs(const TriangulatedSurface& t, const SaddleConnection& alpha,
                                   const SaddleConnection& beta, Side side);

}  // namespace sconn
