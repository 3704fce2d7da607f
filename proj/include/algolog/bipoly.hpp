#pragma once
// Sparse bivariate polynomials over the rationals, their partial
// derivatives, and a small expression parser for spec files.

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algolog/interval.hpp"
#include "algolog/numeric.hpp"

namespace algolog {

class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (x exponent, y exponent)

  BiPoly() = default;
  explicit BiPoly(const Rational& c) {
    if (!c.is_zero()) terms_[{0, 0}] = c;
  }
  static BiPoly variable_x() { return monomial(1, 0, 1); }
  static BiPoly variable_y() { return monomial(0, 1, 1); }
  static BiPoly monomial(int i, int j, const Rational& c) {
    BiPoly p;
    if (!c.is_zero()) p.terms_[{i, j}] = c;
    return p;
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational constant_term() const { return coeff(0, 0); }

  int deg_x() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = (std::max)(d, k.first);
    return terms_.empty() ? -1 : d;
  }
  int deg_y() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = (std::max)(d, k.second);
    return terms_.empty() ? -1 : d;
  }

  void add_term(int i, int j, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find({i, j});
    if (it == terms_.end()) {
      terms_[{i, j}] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  BiPoly operator+(const BiPoly& o) const {
    BiPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
  }
  BiPoly operator-(const BiPoly& o) const {
    BiPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, -c);
    return r;
  }
  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
  }
  BiPoly operator*(const BiPoly& o) const {
    BiPoly r;
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : o.terms_)
        r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  BiPoly operator*(const Rational& c) const {
    BiPoly r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
    return r;
  }
  BiPoly pow(unsigned e) const {
    BiPoly r(Rational(1));
    BiPoly base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      base = base * base;
      e >>= 1u;
    }
    return r;
  }

  bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

  BiPoly dx() const {
    BiPoly r;
    for (const auto& [k, c] : terms_)
      if (k.first > 0) r.add_term(k.first - 1, k.second, c * k.first);
    return r;
  }
  BiPoly dy() const {
    BiPoly r;
    for (const auto& [k, c] : terms_)
      if (k.second > 0) r.add_term(k.first, k.second - 1, c * k.second);
    return r;
  }

  BiPoly swap_vars() const {
    BiPoly r;
    for (const auto& [k, c] : terms_) r.terms_[{k.second, k.first}] = c;
    return r;
  }

  template <class T>
  T eval(const T& x, const T& y) const {
    // coefficient-wise Horner is overkill for the sparse maps we carry
    T acc(0);
    for (const auto& [k, c] : terms_) {
      T t = scalar_traits<T>::from_rational(c);
      for (int i = 0; i < k.first; ++i) t *= x;
      for (int j = 0; j < k.second; ++j) t *= y;
      acc += t;
    }
    return acc;
  }

  RatInterval eval_box(const RatInterval& x, const RatInterval& y) const {
    RatInterval acc = RatInterval::point(0);
    for (const auto& [k, c] : terms_)
      acc = acc + c * (pow_interval(x, static_cast<unsigned>(k.first)) *
                       pow_interval(y, static_cast<unsigned>(k.second)));
    return acc;
  }

  // Largest (gx, gy) such that the polynomial is a function of x^gx and
  // y^gy.  A zero entry means the variable does not occur at all.
  std::pair<int, int> exponent_gcds() const {
    long long gx = 0, gy = 0;
    for (const auto& [k, c] : terms_) {
      gx = gcd_ll(gx, k.first);
      gy = gcd_ll(gy, k.second);
    }
    return {static_cast<int>(gx), static_cast<int>(gy)};
  }

  // Substitution inverse of x -> x^gx, y -> y^gy; exponents must divide.
  BiPoly decimate(int gx, int gy) const {
    BiPoly r;
    for (const auto& [k, c] : terms_) {
      int i = gx > 0 ? k.first / gx : k.first;
      int j = gy > 0 ? k.second / gy : k.second;
      r.terms_[{i, j}] = c;
    }
    return r;
  }

  std::string to_string(const std::string& vx = "x", const std::string& vy = "y") const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) {
          out << "-";
          a = -a;
        }
      } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      bool has_var = k.first > 0 || k.second > 0;
      if (a != 1 || !has_var) {
        out << a;
        if (has_var) out << "*";
      }
      if (k.first > 0) {
        out << vx;
        if (k.first > 1) out << "^" << k.first;
        if (k.second > 0) out << "*";
      }
      if (k.second > 0) {
        out << vy;
        if (k.second > 1) out << "^" << k.second;
      }
    }
    return out.str();
  }

 private:
  std::map<Key, Rational> terms_;
};

inline BiPoly operator*(const Rational& c, const BiPoly& p) { return p * c; }

struct PartialSet {
  BiPoly h, hx, hy, hxx, hxy, hyy;
};

inline PartialSet partials(const BiPoly& h) {
  PartialSet p;
  p.h = h;
  p.hx = h.dx();
  p.hy = h.dy();
  p.hxx = p.hx.dx();
  p.hxy = p.hx.dy();
  p.hyy = p.hy.dy();
  return p;
}

// ---------------------------------------------------------------------------
// Polynomial expression parser.
//
// Grammar: sums/differences of products of powers, parentheses, integer or
// rational or decimal constants, two configurable variable names, implicit
// multiplication ("2xy", "y x^2").  Division is accepted only by nonzero
// constants.

class PolyParser {
 public:
  PolyParser(std::string text, std::string vx, std::string vy)
      : text_(std::move(text)), vx_(std::move(vx)), vy_(std::move(vy)) {}

  BiPoly parse() {
    pos_ = 0;
    BiPoly r = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    raise(Errc::parse_error,
          msg + " at offset " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  BiPoly parse_expr() {
    bool neg = false;
    char c = peek();
    if (c == '+' || c == '-') {
      neg = c == '-';
      ++pos_;
    }
    BiPoly acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        BiPoly t = parse_term();
        acc = c == '+' ? acc + t : acc - t;
      } else {
        break;
      }
    }
    return acc;
  }

  BiPoly parse_term() {
    BiPoly acc = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_factor();
      } else if (c == '/') {
        ++pos_;
        BiPoly d = parse_factor();
        if (d.deg_x() > 0 || d.deg_y() > 0 || d.is_zero())
          fail("division is only supported by nonzero constants");
        acc = acc * (Rational(1) / d.constant_term());
      } else if (starts_atom(c)) {
        acc = acc * parse_factor();  // implicit multiplication
      } else {
        break;
      }
    }
    return acc;
  }

  bool starts_atom(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' ||
           (std::isalpha(static_cast<unsigned char>(c)) != 0);
  }

  BiPoly parse_factor() {
    BiPoly base = parse_atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a nonnegative integer exponent");
      unsigned long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        e = e * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  BiPoly parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      BiPoly inner = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly(parse_number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      // match the variable names by prefix so juxtapositions like "xy" work
      auto matches = [&](const std::string& name) {
        return text_.compare(pos_, name.size(), name) == 0;
      };
      if (vx_.size() >= vy_.size() ? matches(vx_) : !matches(vy_) && matches(vx_)) {
        pos_ += vx_.size();
        return BiPoly::variable_x();
      }
      if (matches(vy_)) {
        pos_ += vy_.size();
        return BiPoly::variable_y();
      }
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      fail("unknown symbol '" + name + "' (variables are '" + vx_ + "', '" + vy_ + "')");
    }
    fail("expected a number, variable, or parenthesized expression");
  }

  Rational parse_number() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string frac;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        frac += text_[pos_++];
      if (frac.empty()) fail("expected digits after decimal point");
      Integer num(digits.empty() ? "0" : digits);
      Integer den(1);
      for (char ch : frac) {
        num = num * 10 + (ch - '0');
        den *= 10;
      }
      return Rational(num, den);
    }
    return Rational(Integer(digits));
  }

  std::string text_;
  std::string vx_, vy_;
  std::size_t pos_ = 0;
};

// Parses a rational written as "p", "p/q", or a decimal like "2.5".
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  std::size_t h = 0;
  while (h < s.size() && std::isspace(static_cast<unsigned char>(s[h]))) ++h;
  bool neg = false;
  if (h < s.size() && (s[h] == '+' || s[h] == '-')) {
    neg = s[h] == '-';
    ++h;
  }
  s = s.substr(h);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) raise(Errc::parse_error, "empty rational literal");
  PolyParser p(s, "x", "y");
  BiPoly v = p.parse();
  if (v.deg_x() > 0 || v.deg_y() > 0)
    raise(Errc::parse_error, "expected a constant, got \"" + text + "\"");
  Rational r = v.constant_term();
  return neg ? -r : r;
}

inline BiPoly parse_bipoly(const std::string& text, const std::string& vx = "x",
                           const std::string& vy = "y") {
  return PolyParser(text, vx, vy).parse();
}

}  // namespace algolog
