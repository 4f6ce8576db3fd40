#include "sconn/farey.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "sconn/errors.hpp"

namespace sconn {

namespace {

using i64 = std::int64_t;

// Integer 2x2 matrix with columns c0 = (a, c), c1 = (b, d).
struct M2 {
  i64 a, b, c, d;
  std::pair<i64, i64> apply(i64 x, i64 y) const { return {a * x + b * y, c * x + d * y}; }
  M2 inverse() const { return {d, -b, -c, a}; }  // det 1
};

// x*s + y*t = gcd(x, y) >= 0
i64 ext_gcd(i64 x, i64 y, i64& s, i64& t) {
  i64 s0 = 1, t0 = 0, s1 = 0, t1 = 1;
  while (y != 0) {
    i64 k = x / y;
    std::tie(x, y) = std::pair{y, x - k * y};
    std::tie(s0, s1) = std::pair{s1, s0 - k * s1};
    std::tie(t0, t1) = std::pair{t1, t0 - k * t1};
  }
  if (x < 0) {
    x = -x;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return x;
}

// Exact rational in lowest terms with positive denominator (den 0 means infinity).
struct Frac {
  i64 num, den;
};

bool frac_less(const Frac& x, const Frac& y) { return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den; }

}  // namespace

FareySlope::FareySlope(i64 p_, i64 q_) {
  if (p_ == 0 && q_ == 0) throw PreconditionError("zero vector has no slope");
  i64 g = std::gcd(p_, q_);
  p_ /= g;
  q_ /= g;
  if (p_ < 0 || (p_ == 0 && q_ < 0)) {
    p_ = -p_;
    q_ = -q_;
  }
  p = p_;
  q = q_;
}

i64 FareySlope::height() const { return std::max(p < 0 ? -p : p, q < 0 ? -q : q); }

std::string to_string(const FareySlope& s) { return std::to_string(s.q) + "/" + std::to_string(s.p); }

FareySlope to_farey(const Slope& s) {
  if (!s.x.fits_slong_p() || !s.y.fits_slong_p()) throw PreconditionError("slope too large for the Farey oracle");
  return FareySlope(s.x.get_si(), s.y.get_si());
}

Slope to_slope(const FareySlope& s) { return Slope(Vec2(Rational(s.p), Rational(s.q))); }

bool farey_adjacent(const FareySlope& u, const FareySlope& v) {
  __int128 d = static_cast<__int128>(u.p) * v.q - static_cast<__int128>(u.q) * v.p;
  return d == 1 || d == -1;
}

FareyFan farey_fan(const FareySlope& u, const FareySlope& v) {
  if (u == v) throw PreconditionError("farey_fan needs distinct slopes");
  if (farey_adjacent(u, v)) return {{u, v}, {u, v}};
  // M sends (0, 1) to u with det 1; in M's frame u is 1/0 and anticlockwise from
  // 1/0 runs through the slopes in increasing order.
  i64 s, t;
  ext_gcd(u.q, u.p, s, t);  // q*s + p*t = 1
  M2 m{s, u.p, -t, u.q};    // det = s*q + t*p = 1
  auto [wx, wy] = m.inverse().apply(v.p, v.q);
  Frac target{wx < 0 ? -wy : wy, wx < 0 ? -wx : wx};  // wx != 0 since v != u
  auto floor_div = [](i64 a, i64 b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
  i64 n = floor_div(target.num, target.den);
  Frac lo{n, 1}, hi{n + 1, 1};
  std::vector<Frac> lows{lo}, highs{hi};
  while (true) {
    Frac med{lo.num + hi.num, lo.den + hi.den};
    if (med.num == target.num && med.den == target.den) break;
    if (frac_less(target, med)) {
      hi = med;
      highs.push_back(hi);
    } else {
      lo = med;
      lows.push_back(lo);
    }
  }
  auto back = [&](const Frac& f) {
    auto [x, y] = m.apply(f.den, f.num);
    return FareySlope(x, y);
  };
  FareyFan fan;
  fan.right.push_back(u);
  for (const auto& f : lows) fan.right.push_back(back(f));
  fan.right.push_back(v);
  fan.left.push_back(u);
  for (const auto& f : highs) fan.left.push_back(back(f));
  fan.left.push_back(v);
  return fan;
}

int farey_distance(const FareySlope& u, const FareySlope& v) {
  if (u == v) return 0;
  if (farey_adjacent(u, v)) return 1;
  FareyFan fan = farey_fan(u, v);
  std::vector<FareySlope> verts = fan.right;
  verts.insert(verts.end(), fan.left.begin() + 1, fan.left.end() - 1);
  const int n = static_cast<int>(verts.size());
  std::vector<int> dist(n, -1);
  std::deque<int> queue{0};
  dist[0] = 0;
  const int target = static_cast<int>(fan.right.size()) - 1;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    if (x == target) return dist[x];
    for (int y = 0; y < n; ++y) {
      if (dist[y] < 0 && farey_adjacent(verts[x], verts[y])) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  throw std::logic_error("Farey fan is disconnected");
}

std::vector<FareySlope> slopes_of_height(i64 h) {
  std::vector<FareySlope> out;
  for (i64 p = 0; p <= h; ++p) {
    for (i64 q = -h; q <= h; ++q) {
      if (std::gcd(p, q) != 1) continue;
      if (p == 0 && q != 1) continue;
      out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> bounded_farey_distances(i64 h) {
  auto verts = slopes_of_height(h);
  const int n = static_cast<int>(verts.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (farey_adjacent(verts[i], verts[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    auto& d = dist[s];
    std::deque<int> queue{s};
    d[s] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int y : adj[x]) {
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return dist;
}

}  // namespace sconn
