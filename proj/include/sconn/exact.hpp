#pragma once

// Exact rational arithmetic and planar predicates. Every geometric decision in
// the library goes through the helpers in this header.

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sconn {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", or "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline int sign(const Rational& r) { return sgn(r); }

struct Vec2 {
  Rational x;
  Rational y;

  Vec2() = default;
  Vec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2(long x_, long y_) : x(x_), y(y_) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

std::ostream& operator<<(std::ostream& os, const Vec2& v);

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Vec2& a) { return dot(a, a); }

/// Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear.
inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

/// True when the direction of v is the canonical representative of its line:
/// x > 0, or x == 0 and y > 0.
inline bool is_canonical_direction(const Vec2& v) {
  return sgn(v.x) > 0 || (sgn(v.x) == 0 && sgn(v.y) > 0);
}

inline Vec2 canonical_direction(const Vec2& v) { return is_canonical_direction(v) ? v : -v; }

inline bool parallel(const Vec2& a, const Vec2& b) { return sgn(cross(a, b)) == 0; }

/// Squared distance from the origin to the closed segment [p, q].
Rational dist2_origin_segment(const Vec2& p, const Vec2& q);

/// In-circle determinant sign for the counterclockwise triangle (a, b, c) and point d:
/// +1 strictly inside, 0 cocircular, -1 outside.
int in_circle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Strictly between, on the open segment (a, b), assuming p is collinear with a and b.
bool strictly_between(const Vec2& a, const Vec2& b, const Vec2& p);

}  // namespace sconn
