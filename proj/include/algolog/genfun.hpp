#pragma once
// Generating-function term specifications (weighted H^(-alpha) log^beta H)
// and exact coefficient extraction through the series engine, plus the
// classic example families: necklaces, cyclic interlaced arrangements,
// Narayana log powers, Catalan log powers.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "algolog/bipoly.hpp"
#include "algolog/numeric.hpp"
#include "algolog/series.hpp"

namespace algolog {

struct GFTerm {
  Rational weight;
  BiPoly h;
  Rational alpha;     // real exponent in H^(-alpha); rationals cover the CLI surface
  unsigned beta = 0;  // log power
};

struct GFSpec {
  std::string name;
  std::vector<GFTerm> terms;
};

inline unsigned long totient(unsigned long n) {
  unsigned long result = n;
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

// ---------------------------------------------------------------------------
// Example families

// N(x,y) = sum_k phi(k)/k * [log(1 - x^k) - log(1 - x^k - y^k x^(2k))]
inline GFSpec necklace_spec(int kmax) {
  if (kmax < 1) raise(Errc::invalid_request, "necklace family needs kmax >= 1");
  GFSpec spec;
  spec.name = "necklace";
  for (int k = 1; k <= kmax; ++k) {
    Rational w(static_cast<long>(totient(static_cast<unsigned long>(k))), k);
    BiPoly numer = BiPoly(Rational(1)) - BiPoly::monomial(k, 0, 1);
    BiPoly denom =
        BiPoly(Rational(1)) - BiPoly::monomial(k, 0, 1) - BiPoly::monomial(2 * k, k, 1);
    spec.terms.push_back({w, numer, Rational(0), 1});
    spec.terms.push_back({-w, denom, Rational(0), 1});
  }
  return spec;
}

// C(x,y) = log(1/(1-x-y)) = -log(1-x-y)
inline GFSpec interlaced_spec() {
  GFSpec spec;
  spec.name = "interlaced";
  BiPoly h = BiPoly(Rational(1)) - BiPoly::variable_x() - BiPoly::variable_y();
  spec.terms.push_back({Rational(-1), h, Rational(0), 1});
  return spec;
}

// ---------------------------------------------------------------------------
// Coefficient extraction

namespace detail {

template <class T>
T residue_threshold() {
  if constexpr (scalar_traits<T>::exact) {
    return T(0);
  } else {
    unsigned digits = BigFloat::default_precision();
    return pow(T(10), -static_cast<int>(digits / 2));
  }
}

template <class T>
TruncSeries2D<T> series_int_pow(const TruncSeries2D<T>& base, unsigned e) {
  TruncSeries2D<T> acc = series_one<T>(base.order_x(), base.order_y());
  TruncSeries2D<T> b = base;
  while (e > 0) {
    if (e & 1u) acc = series_mul(acc, b);
    e >>= 1u;
    if (e > 0) b = series_mul(b, b);
  }
  return acc;
}

// Term series on the decimated box; the caller maps indices through the
// exponent gcds of H.
template <class T>
TruncSeries2D<T> term_series_decimated(const GFTerm& term, int rr, int ss) {
  if (term.h.constant_term() <= 0)
    raise(Errc::invalid_request, "term needs H(0,0) > 0 for a series at the origin");
  auto [gx, gy] = term.h.exponent_gcds();
  BiPoly reduced = term.h.decimate(gx, gy);
  TruncSeries2D<T> f = series_from_poly<T>(reduced, rr, ss);
  TruncSeries2D<T> acc = series_one<T>(rr, ss);
  if (!term.alpha.is_zero()) acc = series_pow(f, -term.alpha);
  if (term.beta > 0) acc = series_mul(acc, series_int_pow(series_log(f), term.beta));
  return acc;
}

}  // namespace detail

// [x^r y^s] of a single weighted term.
template <class T>
T gf_term_coefficient(const GFTerm& term, int r, int s) {
  auto [gx, gy] = term.h.exponent_gcds();
  if (gx == 0 && r != 0) return T(0);
  if (gy == 0 && s != 0) return T(0);
  if (gx > 0 && r % gx != 0) return T(0);
  if (gy > 0 && s % gy != 0) return T(0);
  int rr = gx > 0 ? r / gx : 0;
  int ss = gy > 0 ? s / gy : 0;
  auto series = detail::term_series_decimated<T>(term, rr, ss);
  return scalar_traits<T>::from_rational(term.weight) * series.at(rr, ss);
}

// [x^r y^s] of the weighted sum.  Terms whose decimation lattice misses
// (r, s) contribute nothing and are skipped without building any series.
template <class T>
T gf_coefficient(const GFSpec& spec, int r, int s) {
  if (spec.terms.empty()) raise(Errc::invalid_request, "empty generating-function spec");
  T total(0);
  for (const auto& term : spec.terms) total += gf_term_coefficient<T>(term, r, s);
  return total;
}

// Runtime-dispatched variant of gf_coefficient for callers that carry a
// backend descriptor instead of a compile-time scalar type.
inline std::variant<Rational, BigFloat> gf_coefficient(const GFSpec& spec, int r, int s,
                                                       const CoefficientBackend& backend) {
  if (backend.is_exact()) return gf_coefficient<Rational>(spec, r, s);
  PrecisionGuard guard(backend.precision_bits);
  return gf_coefficient<BigFloat>(spec, r, s);
}

// Full coefficient table on a box, shared across targets.
template <class T>
TruncSeries2D<T> gf_table(const GFSpec& spec, int rx, int sy) {
  if (spec.terms.empty()) raise(Errc::invalid_request, "empty generating-function spec");
  TruncSeries2D<T> total(rx, sy);
  for (const auto& term : spec.terms) {
    auto [gx, gy] = term.h.exponent_gcds();
    int rr = gx > 0 ? rx / gx : 0;
    int ss = gy > 0 ? sy / gy : 0;
    auto series = detail::term_series_decimated<T>(term, rr, ss);
    T w = scalar_traits<T>::from_rational(term.weight);
    for (int i = 0; i <= rr; ++i)
      for (int j = 0; j <= ss; ++j) {
        int ti = gx > 0 ? i * gx : 0;
        int tj = gy > 0 ? j * gy : 0;
        total.at(ti, tj) += w * series.at(i, j);
      }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Narayana: N(z,t) = (1 + z - tz - sqrt((1+z-tz)^2 - 4z)) / (2z)

inline BiPoly narayana_inner_poly() {
  BiPoly z = BiPoly::variable_x();
  BiPoly t = BiPoly::variable_y();
  BiPoly u = BiPoly(Rational(1)) + z - t * z;
  return u * u - z * Rational(4);
}

template <class T>
TruncSeries2D<T> narayana_series(int rx, int sy) {
  BiPoly z = BiPoly::variable_x();
  BiPoly t = BiPoly::variable_y();
  BiPoly lin = BiPoly(Rational(1)) + z - t * z;

  auto f = series_from_poly<T>(narayana_inner_poly(), rx + 1, sy);
  auto root = series_sqrt(f);
  auto numer = series_from_poly<T>(lin, rx + 1, sy) - root;

  // the numerator vanishes along z = 0; anything left is an engine bug
  T tol = detail::residue_threshold<T>();
  for (int j = 0; j <= sy; ++j)
    if (abs(numer.at(0, j)) > tol)
      raise(Errc::division_residue,
            "numerator not divisible by z at y-order " + std::to_string(j));
  TruncSeries2D<T> n(rx, sy);
  for (int i = 0; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j) n.at(i, j) = numer.at(i + 1, j) / 2;
  return n;
}

// log^rpower N(z,t), with the defining relations N = 1/(1-P),
// P = tz + z(N-1) revalidated coefficientwise on the box.
template <class T>
TruncSeries2D<T> narayana_log_series(unsigned rpower, int rx, int sy) {
  if (rpower < 1) raise(Errc::invalid_request, "log power must be >= 1");
  auto n = narayana_series<T>(rx, sy);

  TruncSeries2D<T> p(rx, sy);
  for (int i = 1; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j) {
      T v = n.at(i - 1, j);
      if (i == 1 && j == 0) v -= T(1);  // z*(N-1) drops the constant
      if (i == 1 && j == 1) v += T(1);  // + t*z
      p.at(i, j) = v;
    }
  auto residual = series_mul(n, series_one<T>(rx, sy) - p) - series_one<T>(rx, sy);
  T tol = detail::residue_threshold<T>();
  for (int i = 0; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j)
      if (abs(residual.at(i, j)) > tol)
        throw std::logic_error("Narayana defining relation failed inside the box");

  return detail::series_int_pow(series_log(n), rpower);
}

// ---------------------------------------------------------------------------
// Catalan: D^(m)(z) = log^m((1 - sqrt(1-4z)) / (2z))

template <class T>
TruncSeries1D<T> catalan_log_series(unsigned m, int order) {
  if (m < 1) raise(Errc::invalid_request, "log power must be >= 1");
  BiPoly inner = BiPoly(Rational(1)) - BiPoly::monomial(1, 0, 4);
  auto f = series_from_poly<T>(inner, order + 1, 0);
  auto root = series_sqrt(f);
  auto numer = series_one<T>(order + 1, 0) - root;

  T tol = detail::residue_threshold<T>();
  if (abs(numer.at(0, 0)) > tol)
    raise(Errc::division_residue, "numerator not divisible by z");
  TruncSeries2D<T> c(order, 0);
  for (int i = 0; i <= order; ++i) c.at(i, 0) = numer.at(i + 1, 0) / 2;
  return TruncSeries1D<T>(detail::series_int_pow(series_log(c), m));
}

}  // namespace algolog
