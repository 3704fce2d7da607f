#pragma once
// Exact interval arithmetic over the rationals.  Endpoints are mpq values,
// so every certificate produced here is rounding-free.

#include <algorithm>
#include <initializer_list>

#include "algolog/numeric.hpp"

namespace algolog {

struct RatInterval {
  Rational lo{0};
  Rational hi{0};

  RatInterval() = default;
  RatInterval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) std::swap(lo, hi);
  }
  static RatInterval point(const Rational& v) { return {v, v}; }

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool contains(const Rational& v) const { return lo <= v && hi >= v; }
  bool strictly_positive() const { return lo > 0; }
  bool strictly_negative() const { return hi < 0; }

  BigFloat mid_bigfloat() const { return static_cast<BigFloat>(mid()); }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  Rational lo = (std::min)((std::min)(c1, c2), (std::min)(c3, c4));
  Rational hi = (std::max)((std::max)(c1, c2), (std::max)(c3, c4));
  return {std::move(lo), std::move(hi)};
}

inline RatInterval operator*(const Rational& c, const RatInterval& a) {
  if (c >= 0) return {c * a.lo, c * a.hi};
  return {c * a.hi, c * a.lo};
}

// Division is only defined away from zero denominators.
inline RatInterval operator/(const RatInterval& a, const RatInterval& b) {
  if (b.contains_zero())
    raise(Errc::inconclusive, "interval division by an interval containing zero");
  RatInterval inv(Rational(1) / b.hi, Rational(1) / b.lo);
  return a * inv;
}

inline RatInterval pow_interval(const RatInterval& a, unsigned e) {
  if (e == 0) return RatInterval::point(1);
  RatInterval r = a;
  for (unsigned i = 1; i < e; ++i) r = r * a;
  // even powers of a straddling interval start at zero
  if (e % 2 == 0 && a.contains_zero()) r.lo = 0;
  return r;
}

inline bool intersect(const RatInterval& a, const RatInterval& b, RatInterval* out) {
  Rational lo = (std::max)(a.lo, b.lo);
  Rational hi = (std::min)(a.hi, b.hi);
  if (lo > hi) return false;
  if (out) *out = RatInterval(lo, hi);
  return true;
}

// Strict containment in the interior, the contraction test of the interval
// Newton operator.
inline bool inside_interior(const RatInterval& inner, const RatInterval& outer) {
  return inner.lo > outer.lo && inner.hi < outer.hi;
}

}  // namespace algolog
