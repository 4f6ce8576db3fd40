#pragma once

// Triangulated half-translation surfaces in half-edge form.
//
// Triangle t owns half-edges 3t, 3t+1, 3t+2 in counterclockwise order. Each
// triangle has its own chart: corner 0 sits at the origin, corner 1 at vec(3t),
// corner 2 at vec(3t) + vec(3t+1). Half-edge 3t+i runs from corner i to corner
// i+1. Across half-edge h the neighbouring chart is sign(h) * (this chart) + c,
// so vec(twin(h)) == -sign(h) * vec(h).

#include <cstdint>
#include <vector>

#include "sconn/exact.hpp"
#include "sconn/surface.hpp"

namespace sconn {

struct Corner {
  int triangle = 0;
  int index = 0;  // 0, 1, 2
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Singularity {
  int id = 0;
  int half_turns = 0;  // cone angle = half_turns * pi
  bool removable() const { return half_turns == 2; }
};

class TriangulatedSurface {
 public:
  int num_triangles() const { return static_cast<int>(vec_.size() / 3); }
  int num_half_edges() const { return static_cast<int>(vec_.size()); }
  int num_edges() const { return num_half_edges() / 2; }
  int num_vertices() const { return static_cast<int>(singularities_.size()); }

  static int tri(int h) { return h / 3; }
  static int next(int h) { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  static int prev(int h) { return 3 * (h / 3) + (h % 3 + 2) % 3; }
  static int half_edge(Corner c) { return 3 * c.triangle + c.index; }
  /// Corner at the origin of half-edge h.
  static Corner origin_corner(int h) { return {h / 3, h % 3}; }
  static Corner target_corner(int h) { return {h / 3, (h % 3 + 1) % 3}; }

  const Vec2& vec(int h) const { return vec_[h]; }
  int twin(int h) const { return twin_[h]; }
  int sign(int h) const { return sign_[h]; }
  int vertex(int h) const { return vertex_[h]; }
  int vertex(Corner c) const { return vertex_[half_edge(c)]; }
  /// Canonical id of the undirected edge containing h.
  int edge_id(int h) const { return std::min(h, twin_[h]); }

  /// Position of a corner in its triangle's chart.
  Vec2 corner_position(Corner c) const;
  /// Point at parameter t along half-edge h, in tri(h)'s chart.
  Vec2 point_on(int h, const Rational& t) const;

  /// Identity of this triangulation; objects built on different triangulations never mix.
  std::uint64_t id() const { return id_; }

  const std::vector<Singularity>& singularities() const { return singularities_; }
  int euler_characteristic() const { return num_vertices() - num_edges() + num_triangles(); }
  Rational area() const;

  /// True when every edge with distinct adjacent triangles passes the exact
  /// in-circle test (cocircular counts as Delaunay).
  bool is_delaunay() const;
  bool edge_is_delaunay(int h) const;

  TriangulatedSurface transformed(const Matrix2& m) const;

  // construction
  struct HalfEdgeData {
    Vec2 vec;
    int twin = -1;
    int sign = 1;
  };
  /// Builds from raw half-edge data (3 per triangle), computes vertex classes and
  /// cone angles, then applies the marked-point policy. Throws InputError.
  static TriangulatedSurface from_half_edges(std::vector<HalfEdgeData> data);

  /// Flips non-Delaunay edges until every flippable edge is Delaunay. Returns flip count.
  int make_delaunay();

 private:
  void compute_vertices();
  bool flip(int h);

  std::vector<Vec2> vec_;
  std::vector<int> twin_;
  std::vector<int> sign_;
  std::vector<int> vertex_;
  std::vector<Singularity> singularities_;
  std::uint64_t id_ = 0;
};

/// Ear-clips every polygon, glues, and flips to a Delaunay triangulation.
TriangulatedSurface triangulate(const Surface& s);

/// Triangulates without the Delaunay pass (squares keep their lower-left to
/// upper-right diagonal). Used to compare two triangulations of one surface.
TriangulatedSurface triangulate_no_flips(const Surface& s);

/// Gauss-Bonnet: sum over singularities of (angle - 2 pi) == -2 pi chi.
bool satisfies_gauss_bonnet(const TriangulatedSurface& t);

}  // namespace sconn
