#pragma once

// Half-translation surfaces given by glued polygons, the origami shortcut, and
// rational linear deformations.

#include <string>
#include <vector>

#include "sconn/exact.hpp"

namespace sconn {

/// A simple polygon, vertices listed counterclockwise. Edge i runs from vertex i to i+1.
struct Polygon {
  std::vector<Vec2> vertices;

  std::size_t size() const { return vertices.size(); }
  Vec2 edge_vector(std::size_t i) const { return vertices[(i + 1) % size()] - vertices[i]; }
};

struct EdgeRef {
  int polygon = 0;
  int edge = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

/// Edge identification. sign = +1 glues by z -> z + c, sign = -1 by z -> -z + c.
struct Gluing {
  EdgeRef a;
  EdgeRef b;
  int sign = 1;
};

class Surface {
 public:
  Surface() = default;
  /// Validates the gluing data (every edge glued exactly once, with matching vectors)
  /// and throws InputError otherwise.
  Surface(std::vector<Polygon> polygons, std::vector<Gluing> gluings);

  const std::vector<Polygon>& polygons() const { return polygons_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  Rational area() const;

 private:
  std::vector<Polygon> polygons_;
  std::vector<Gluing> gluings_;
};

/// Square-tiled translation surface: square i has square right[i] to its right and
/// square up[i] above it. Permutations are 0-based.
struct Origami {
  std::vector<int> right;
  std::vector<int> up;

  int size() const { return static_cast<int>(right.size()); }
};

/// Parses cycle notation such as "(1 2)(3 4 5)" on {1..n}; "()" and "id" give the identity.
std::vector<int> parse_permutation(const std::string& cycles, int n);

/// Orbits of the group generated by the two permutations, each sorted ascending.
std::vector<std::vector<int>> origami_orbits(const Origami& o);

/// Throws InputError listing the orbit partition when the origami is disconnected.
Surface build_from_origami(const Origami& o);

class Matrix2 {
 public:
  Matrix2(Rational a, Rational b, Rational c, Rational d);
  static Matrix2 identity() { return {1, 0, 0, 1}; }

  Rational det() const { return a_ * d_ - b_ * c_; }
  Vec2 apply(const Vec2& v) const { return {a_ * v.x + b_ * v.y, c_ * v.x + d_ * v.y}; }
  Matrix2 inverse() const;

  friend Matrix2 operator*(const Matrix2& m, const Matrix2& n);
  friend bool operator==(const Matrix2&, const Matrix2&) = default;

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

 private:
  Rational a_, b_, c_, d_;
};

/// Applies m to every vertex coordinate. Requires det(m) > 0 (PreconditionError otherwise).
Surface apply_matrix(const Surface& s, const Matrix2& m);

/// Reads the text format documented in README.md. Throws ParseError with line/column.
Surface parse_surface(const std::string& text);
Surface load_surface(const std::string& path);

}  // namespace sconn
