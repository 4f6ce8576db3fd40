#pragma once

// Square-by-square model of an origami whose every square corner is a marked point.
// Saddle connections are primitive integer vectors leaving a corner; they are walked
// through unit squares with the gluing permutations, independently of any triangulation.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "sconn/exact.hpp"
#include "sconn/surface.hpp"

namespace oracle {

using sconn::Rational;
using sconn::Vec2;

struct Chunk {
  int square;
  Vec2 a;  // local coordinates in [0,1]^2
  Vec2 b;
};

struct OrigamiSC {
  long p = 0, q = 0;  // canonical holonomy
  std::vector<Chunk> chunks;
};

class OrigamiModel {
 public:
  explicit OrigamiModel(const sconn::Origami& o) : right_(o.right), up_(o.up) {
    const int n = static_cast<int>(right_.size());
    left_.resize(n);
    down_.resize(n);
    for (int i = 0; i < n; ++i) {
      left_[right_[i]] = i;
      down_[up_[i]] = i;
    }
  }

  // A point on the surface: square plus coordinates in [0,1)^2 after pushing the
  // right/top boundary to the neighbouring square.
  std::tuple<int, Rational, Rational> canonical_point(int s, Rational x, Rational y) const {
    if (x == 1) {
      s = right_[s];
      x = 0;
    }
    if (y == 1) {
      s = up_[s];
      y = 0;
    }
    return {s, x, y};
  }

  std::vector<Chunk> walk(int s, long p, long q) const {
    // start corner of square s chosen so that (p, q) points into the closed quadrant
    Rational x = 0, y = 0;
    if (p <= 0 && q > 0) {
      x = 1;
    } else if (p < 0 && q <= 0) {
      x = 1;
      y = 1;
    } else if (p >= 0 && q < 0) {
      y = 1;
    }
    std::vector<Chunk> out;
    Rational used = 0;
    const Rational dx = p, dy = q;
    while (used < 1) {
      Rational tx = p > 0 ? (1 - x) / dx : p < 0 ? -x / dx : Rational(2);
      Rational ty = q > 0 ? (1 - y) / dy : q < 0 ? -y / dy : Rational(2);
      Rational step = std::min({tx, ty, Rational(1 - used)});
      Vec2 a(x, y), b(x + step * dx, y + step * dy);
      out.push_back({s, a, b});
      used += step;
      x = b.x;
      y = b.y;
      if (used == 1) break;
      bool hx = step == tx, hy = step == ty;
      if (hx && hy) return {};  // interior lattice point: not primitive
      if (hx) {
        s = p > 0 ? right_[s] : left_[s];
        x = p > 0 ? 0 : 1;
      } else {
        s = q > 0 ? up_[s] : down_[s];
        y = q > 0 ? 0 : 1;
      }
    }
    return out;
  }

  // All saddle connections with p^2 + q^2 <= lsq, each once.
  std::vector<OrigamiSC> saddle_connections(long lsq) const {
    // keyed by direction and chunk midpoints (the two diagonals of a square share a midpoint)
    std::map<std::pair<std::pair<long, long>, std::vector<std::tuple<int, Rational, Rational>>>, OrigamiSC> found;
    for (long p = -lsq; p <= lsq; ++p) {
      for (long q = -lsq; q <= lsq; ++q) {
        if (p * p + q * q == 0 || p * p + q * q > lsq || std::gcd(p, q) != 1) continue;
        for (int s = 0; s < static_cast<int>(right_.size()); ++s) {
          OrigamiSC sc;
          sc.chunks = walk(s, p, q);
          bool canon = p > 0 || (p == 0 && q > 0);
          sc.p = canon ? p : -p;
          sc.q = canon ? q : -q;
          std::vector<std::tuple<int, Rational, Rational>> key;
          for (const auto& c : sc.chunks) {
            Vec2 m = Rational(1, 2) * (c.a + c.b);
            key.push_back(canonical_point(c.square, m.x, m.y));
          }
          std::sort(key.begin(), key.end());
          found.emplace(std::pair{std::pair{sc.p, sc.q}, key}, sc);
        }
      }
    }
    std::vector<OrigamiSC> out;
    for (auto& [k, sc] : found) out.push_back(sc);
    return out;
  }

  // Number of interior transverse intersection points.
  int intersections(const OrigamiSC& a, const OrigamiSC& b) const {
    if (a.p * b.q - a.q * b.p == 0) return 0;
    std::set<std::tuple<int, Rational, Rational>> points;
    for (const auto& ca : a.chunks) {
      for (const auto& cb : b.chunks) {
        if (ca.square != cb.square) continue;
        Vec2 r = ca.b - ca.a, s = cb.b - cb.a;
        Rational den = sconn::cross(r, s);
        if (den == 0) continue;
        Rational u = sconn::cross(cb.a - ca.a, s) / den;
        Rational v = sconn::cross(cb.a - ca.a, r) / den;
        if (u < 0 || u > 1 || v < 0 || v > 1) continue;
        Vec2 x = ca.a + u * r;
        bool corner = (x.x == 0 || x.x == 1) && (x.y == 0 || x.y == 1);
        if (corner) continue;
        points.insert(canonical_point(ca.square, x.x, x.y));
      }
    }
    return static_cast<int>(points.size());
  }

 private:
  std::vector<int> right_, up_, left_, down_;
};

}  // namespace oracle
