#include "sconn/surface.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "sconn/errors.hpp"

namespace sconn {

namespace {

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  auto on_seg = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return orient(p, q, r) == 0 && sgn(dot(r - p, r - q)) <= 0;
  };
  return on_seg(a, b, c) || on_seg(a, b, d) || on_seg(c, d, a) || on_seg(c, d, b);
}

void check_polygon(const Polygon& p, std::size_t index) {
  const std::string where = "polygon " + std::to_string(index);
  if (p.size() < 3) throw InputError(where + " has fewer than 3 vertices");
  Rational twice_area = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    twice_area += cross(p.vertices[i], p.vertices[(i + 1) % p.size()]);
    if (p.edge_vector(i).is_zero()) throw InputError(where + " has a zero-length edge");
  }
  if (sgn(twice_area) <= 0) throw InputError(where + " is not counterclockwise");
  // non-adjacent edges must be disjoint
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_touch(p.vertices[i], p.vertices[(i + 1) % n], p.vertices[j], p.vertices[(j + 1) % n])) {
        throw InputError(where + " is not simple (edges " + std::to_string(i) + " and " +
                         std::to_string(j) + " meet)");
      }
    }
  }
}

}  // namespace

Surface::Surface(std::vector<Polygon> polygons, std::vector<Gluing> gluings)
    : polygons_(std::move(polygons)), gluings_(std::move(gluings)) {
  if (polygons_.empty()) throw InputError("surface has no polygons");
  std::vector<std::vector<int>> used(polygons_.size());
  for (std::size_t i = 0; i < polygons_.size(); ++i) {
    check_polygon(polygons_[i], i);
    used[i].assign(polygons_[i].size(), 0);
  }
  auto mark = [&](const EdgeRef& e) {
    if (e.polygon < 0 || e.polygon >= static_cast<int>(polygons_.size()) || e.edge < 0 ||
        e.edge >= static_cast<int>(polygons_[e.polygon].size())) {
      throw InputError("gluing references nonexistent edge " + std::to_string(e.polygon) + "." +
                       std::to_string(e.edge));
    }
    if (used[e.polygon][e.edge]++) {
      throw InputError("edge " + std::to_string(e.polygon) + "." + std::to_string(e.edge) +
                       " is glued more than once");
    }
  };
  for (const auto& g : gluings_) {
    if (g.sign != 1 && g.sign != -1) throw InputError("gluing sign must be +1 or -1");
    if (g.a == g.b) throw InputError("an edge cannot be glued to itself");
    mark(g.a);
    mark(g.b);
    Vec2 va = polygons_[g.a.polygon].edge_vector(g.a.edge);
    Vec2 vb = polygons_[g.b.polygon].edge_vector(g.b.edge);
    // sign +1: opposite directions; sign -1: equal directions
    bool ok = g.sign == 1 ? va == -vb : va == vb;
    if (!ok) {
      throw InputError("edges " + std::to_string(g.a.polygon) + "." + std::to_string(g.a.edge) + " and " +
                       std::to_string(g.b.polygon) + "." + std::to_string(g.b.edge) +
                       " do not match under the declared sign");
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t j = 0; j < used[i].size(); ++j) {
      if (!used[i][j]) throw InputError("edge " + std::to_string(i) + "." + std::to_string(j) + " is not glued");
    }
  }
}

Rational Surface::area() const {
  Rational total = 0;
  for (const auto& p : polygons_) {
    for (std::size_t i = 0; i < p.size(); ++i) total += cross(p.vertices[i], p.vertices[(i + 1) % p.size()]);
  }
  return total / 2;
}

std::vector<int> parse_permutation(const std::string& cycles, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> seen(n, 0);
  std::string trimmed;
  for (char c : cycles) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
  }
  if (trimmed == "id" || trimmed.empty()) return perm;
  std::size_t i = 0;
  while (i < cycles.size()) {
    while (i < cycles.size() && std::isspace(static_cast<unsigned char>(cycles[i]))) ++i;
    if (i == cycles.size()) break;
    if (cycles[i] != '(') throw InputError("expected '(' in permutation '" + cycles + "'");
    auto close = cycles.find(')', i);
    if (close == std::string::npos) throw InputError("unterminated cycle in '" + cycles + "'");
    std::istringstream in(cycles.substr(i + 1, close - i - 1));
    std::vector<int> cyc;
    std::string tok;
    while (in >> tok) {
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad cycle entry '" + tok + "'");
      }
      int k = std::stoi(tok);
      if (k < 1 || k > n) throw InputError("cycle entry " + tok + " outside 1.." + std::to_string(n));
      if (seen[k - 1]++) throw InputError("element " + tok + " repeated in '" + cycles + "'");
      cyc.push_back(k - 1);
    }
    for (std::size_t j = 0; j < cyc.size(); ++j) perm[cyc[j]] = cyc[(j + 1) % cyc.size()];
    i = close + 1;
  }
  return perm;
}

std::vector<std::vector<int>> origami_orbits(const Origami& o) {
  const int n = o.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> orbit{s}, stack{s};
    comp[s] = static_cast<int>(orbits.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {o.right[x], o.up[x]}) {
        if (comp[y] < 0) {
          comp[y] = comp[s];
          orbit.push_back(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Surface build_from_origami(const Origami& o) {
  const int n = o.size();
  if (n == 0 || static_cast<int>(o.up.size()) != n) throw InputError("origami permutations must have equal positive size");
  for (const auto* perm : {&o.right, &o.up}) {
    std::vector<int> hit(n, 0);
    for (int x : *perm) {
      if (x < 0 || x >= n || hit[x]++) throw InputError("origami data is not a permutation");
    }
  }
  auto orbits = origami_orbits(o);
  if (orbits.size() > 1) {
    std::string msg = "origami is disconnected; orbits:";
    for (const auto& orb : orbits) {
      msg += " {";
      for (std::size_t i = 0; i < orb.size(); ++i) msg += (i ? " " : "") + std::to_string(orb[i] + 1);
      msg += "}";
    }
    throw InputError(msg);
  }
  std::vector<Polygon> squares(n);
  for (auto& sq : squares) sq.vertices = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  // edges: 0 bottom, 1 right, 2 top, 3 left
  std::vector<Gluing> gluings;
  for (int i = 0; i < n; ++i) {
    gluings.push_back({{i, 1}, {o.right[i], 3}, 1});
    gluings.push_back({{i, 2}, {o.up[i], 0}, 1});
  }
  return Surface(std::move(squares), std::move(gluings));
}

Matrix2::Matrix2(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (sgn(det()) == 0) throw PreconditionError("singular matrix");
}

Matrix2 Matrix2::inverse() const {
  Rational dt = det();
  return {d_ / dt, -b_ / dt, -c_ / dt, a_ / dt};
}

Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
  return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_, m.c_ * n.a_ + m.d_ * n.c_,
          m.c_ * n.b_ + m.d_ * n.d_};
}

Surface apply_matrix(const Surface& s, const Matrix2& m) {
  if (sgn(m.det()) <= 0) throw PreconditionError("apply_matrix requires det > 0");
  std::vector<Polygon> polys = s.polygons();
  for (auto& p : polys) {
    for (auto& v : p.vertices) v = m.apply(v);
  }
  return Surface(std::move(polys), s.gluings());
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == '#') {
        while (i < src.size() && src[i] != '\n') ++i, ++col;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(c);
        ++i;
        continue;
      }
      if (std::string_view("{}(),;=").find(c) != std::string_view::npos) {
        tokens_.push_back({std::string(1, c), line, col});
        advance(c);
        ++i;
        continue;
      }
      Token t{"", line, col};
      while (i < src.size()) {
        char d = src[i];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '-' || d == '+' || d == '/' || d == '.') {
          t.text += d;
          advance(d);
          ++i;
        } else {
          break;
        }
      }
      if (t.text.empty()) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      tokens_.push_back(std::move(t));
    }
    end_line_ = line;
    end_col_ = col;
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError("unexpected end of input", end_line_, end_col_);
    return tokens_[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  void expect(const std::string& s) {
    Token t = next();
    if (t.text != s) throw ParseError("expected '" + s + "' but found '" + t.text + "'", t.line, t.column);
  }
  bool accept(const std::string& s) {
    if (!done() && tokens_[pos_].text == s) {
      ++pos_;
      return true;
    }
    return false;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int end_line_ = 1;
  int end_col_ = 1;
};

Rational rational_token(const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), t.line, t.column);
  }
}

int int_token(const Token& t) {
  Rational r = rational_token(t);
  if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw ParseError("expected an integer", t.line, t.column);
  return static_cast<int>(r.get_num().get_si());
}

std::string read_cycles(Lexer& lex) {
  if (lex.peek().text == "id") {
    lex.next();
    return "id";
  }
  std::string out;
  while (!lex.done() && lex.peek().text == "(") {
    lex.next();
    out += "(";
    while (lex.peek().text != ")") out += lex.next().text + " ";
    lex.next();
    out += ")";
  }
  return out;
}

Surface parse_origami_block(Lexer& lex, const Token& head) {
  std::optional<int> n;
  std::optional<std::pair<std::string, Token>> h, v;
  lex.expect("{");
  while (!lex.accept("}")) {
    Token key = lex.next();
    lex.accept("=");
    if (key.text == "n") {
      n = int_token(lex.next());
    } else if (key.text == "h" || key.text == "v") {
      Token at = lex.peek();
      auto cyc = read_cycles(lex);
      (key.text == "h" ? h : v) = std::make_pair(cyc, at);
    } else {
      throw ParseError("unknown origami field '" + key.text + "'", key.line, key.column);
    }
    lex.accept(",");
    lex.accept(";");
  }
  if (!n || !h || !v) throw ParseError("origami block needs n, h and v", head.line, head.column);
  if (*n <= 0) throw ParseError("n must be positive", head.line, head.column);
  Origami o;
  auto perm = [&](const std::pair<std::string, Token>& p) {
    try {
      return parse_permutation(p.first, *n);
    } catch (const InputError& e) {
      throw ParseError(e.what(), p.second.line, p.second.column);
    }
  };
  o.right = perm(*h);
  o.up = perm(*v);
  return build_from_origami(o);
}

EdgeRef edge_token(const Token& t) {
  auto dot = t.text.find('.');
  if (dot == std::string::npos) throw ParseError("expected polygon.edge", t.line, t.column);
  return {int_token({t.text.substr(0, dot), t.line, t.column}), int_token({t.text.substr(dot + 1), t.line, t.column})};
}

Surface parse_polygons_block(Lexer& lex) {
  std::vector<Polygon> polys;
  std::vector<Gluing> glue;
  lex.expect("{");
  while (!lex.accept("}")) {
    Token key = lex.next();
    if (key.text == "polygon") {
      lex.expect("{");
      Polygon p;
      while (!lex.accept("}")) {
        Rational x = rational_token(lex.next());
        Rational y = rational_token(lex.next());
        p.vertices.emplace_back(x, y);
        lex.accept(",");
        lex.accept(";");
      }
      polys.push_back(std::move(p));
    } else if (key.text == "glue") {
      EdgeRef a = edge_token(lex.next());
      EdgeRef b = edge_token(lex.next());
      Token s = lex.next();
      int sign = 0;
      if (s.text == "+" || s.text == "+1" || s.text == "1") sign = 1;
      if (s.text == "-" || s.text == "-1") sign = -1;
      if (sign == 0) throw ParseError("gluing sign must be + or -", s.line, s.column);
      glue.push_back({a, b, sign});
    } else {
      throw ParseError("unknown polygons entry '" + key.text + "'", key.line, key.column);
    }
    lex.accept(";");
  }
  return Surface(std::move(polys), std::move(glue));
}

}  // namespace

Surface parse_surface(const std::string& text) {
  Lexer lex(text);
  Token head = lex.next();
  Surface s;
  if (head.text == "origami") {
    s = parse_origami_block(lex, head);
  } else if (head.text == "polygons") {
    s = parse_polygons_block(lex);
  } else {
    throw ParseError("expected 'origami' or 'polygons'", head.line, head.column);
  }
  if (!lex.done()) {
    const Token& t = lex.peek();
    throw ParseError("trailing input '" + t.text + "'", t.line, t.column);
  }
  return s;
}

Surface load_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open surface file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_surface(ss.str());
}

}  // namespace sconn
