#pragma once

// Developing triangles into a common plane along a strip of glued triangles.

#include "sconn/exact.hpp"
#include "sconn/triangulation.hpp"

namespace sconn {

/// Map from a triangle's local chart into the development: y -> s * y + c.
struct Chart {
  int s = 1;
  Vec2 c{0, 0};

  Vec2 map(const Vec2& y) const { return s * y + c; }
  Vec2 map_vector(const Vec2& v) const { return s * v; }
};

/// Chart of tri(twin(h)) given the chart of tri(h), agreeing along the shared edge.
inline Chart across(const TriangulatedSurface& t, const Chart& here, int h) {
  const int g = t.twin(h);
  Chart there;
  there.s = here.s * t.sign(h);
  Vec2 shared = here.map(t.corner_position(TriangulatedSurface::target_corner(h)));
  there.c = shared - there.s * t.corner_position(TriangulatedSurface::origin_corner(g));
  return there;
}

/// Developed position of a corner.
inline Vec2 developed(const TriangulatedSurface& t, const Chart& chart, Corner c) {
  return chart.map(t.corner_position(c));
}

}  // namespace sconn
