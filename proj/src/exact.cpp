#include "sconn/exact.hpp"

#include <cctype>

namespace sconn {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(n, 10), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << '(' << v.x.get_str() << ',' << v.y.get_str() << ')';
}

Rational dist2_origin_segment(const Vec2& p, const Vec2& q) {
  Vec2 d = q - p;
  Rational len2 = norm2(d);
  if (sgn(len2) == 0) return norm2(p);
  // minimise |p + t d|^2 over t in [0, 1]
  Rational t = -dot(p, d) / len2;
  if (sgn(t) <= 0) return norm2(p);
  if (t >= 1) return norm2(q);
  return norm2(p + t * d);
}

int in_circle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  Vec2 ad = a - d, bd = b - d, cd = c - d;
  Rational det = norm2(ad) * cross(bd, cd) - norm2(bd) * cross(ad, cd) + norm2(cd) * cross(ad, bd);
  return sgn(det);
}

bool strictly_between(const Vec2& a, const Vec2& b, const Vec2& p) {
  Rational t = dot(p - a, b - a);
  return sgn(t) > 0 && t < norm2(b - a);
}

}  // namespace sconn
