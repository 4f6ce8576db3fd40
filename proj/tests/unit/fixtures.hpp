#pragma once

#include <string>

#include "sconn/surface.hpp"
#include "sconn/triangulation.hpp"

namespace fixtures {

inline sconn::TriangulatedSurface origami(int n, const std::string& h, const std::string& v) {
  sconn::Origami o{sconn::parse_permutation(h, n), sconn::parse_permutation(v, n)};
  return sconn::triangulate(sconn::build_from_origami(o));
}

inline const sconn::TriangulatedSurface& torus() {
  static const auto t = origami(1, "id", "id");
  return t;
}

inline const sconn::TriangulatedSurface& l_origami() {
  static const auto t = origami(3, "(1 2)", "(1 3)");
  return t;
}

inline const sconn::TriangulatedSurface& pillowcase() {
  static const auto t = sconn::triangulate(sconn::load_surface(SCONN_DATA_DIR "/pillowcase.surf"));
  return t;
}

inline const sconn::TriangulatedSurface& octagon() {
  static const auto t = sconn::triangulate(sconn::parse_surface(R"(polygons {
    polygon { 0 0, 2 0, 3 1, 3 3, 2 4, 0 4, -1 3, -1 1 }
    glue 0.0 0.4 +
    glue 0.1 0.5 +
    glue 0.2 0.6 +
    glue 0.3 0.7 +
  })"));
  return t;
}

}  // namespace fixtures
