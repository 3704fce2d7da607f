#pragma once
// Shared test oracles: brute-force convolution, necklace enumeration,
// closed-form triangles, and finite-difference derivative checks.  These
// stay independent of the library code paths they validate.

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>
#include <vector>

#include "algolog/genfun.hpp"
#include "algolog/numeric.hpp"
#include "algolog/series.hpp"

namespace testutil {

using namespace algolog;

// Gather-style convolution, a loop structure independent of series_mul.
template <class T>
TruncSeries2D<T> naive_convolution(const TruncSeries2D<T>& a, const TruncSeries2D<T>& b) {
  TruncSeries2D<T> r(a.order_x(), a.order_y());
  for (int i = 0; i <= a.order_x(); ++i)
    for (int j = 0; j <= a.order_y(); ++j) {
      T acc(0);
      for (int u = 0; u <= i; ++u)
        for (int v = 0; v <= j; ++v) acc += a.at(u, v) * b.at(i - u, j - v);
      r.at(i, j) = acc;
    }
  return r;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  return Rational(num(rng), den(rng));
}

inline TruncSeries2D<Rational> random_series(std::mt19937_64& rng, int rx, int sy,
                                             bool unit_constant = false) {
  TruncSeries2D<Rational> f(rx, sy);
  for (int i = 0; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j) f.at(i, j) = random_rational(rng);
  if (unit_constant) f.at(0, 0) = 1;
  return f;
}

// Binary necklaces with r beads, s of them white, no two white beads
// cyclically adjacent, counted up to rotation.
inline long long count_necklaces_brute(int r, int s) {
  if (r <= 0 || s < 0 || s > r) return 0;
  std::set<unsigned> canonical;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != s) continue;
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      if ((mask >> i & 1u) && (mask >> ((i + 1) % r) & 1u)) ok = false;
    if (!ok) continue;
    unsigned best = mask;
    for (int rot = 1; rot < r; ++rot) {
      unsigned m = ((mask >> rot) | (mask << (r - rot))) & ((1u << r) - 1u);
      best = (std::min)(best, m);
    }
    canonical.insert(best);
  }
  return static_cast<long long>(canonical.size());
}

inline Integer narayana_number(int n, int k) {
  if (n == 0) return Integer(k == 0 ? 1 : 0);
  if (k < 1 || k > n) return Integer(0);
  return binomial(n, k) * binomial(n, k - 1) / n;
}

inline Integer catalan_number(int n) { return binomial(2 * n, n) / (n + 1); }

// Central finite differences for d^j f at x, j <= 3.
inline BigFloat central_difference(const std::function<BigFloat(BigFloat)>& f, const BigFloat& x,
                                   unsigned j, const BigFloat& h) {
  switch (j) {
    case 0:
      return f(x);
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    default:
      throw std::logic_error("unsupported finite-difference order");
  }
}

inline double rel_err(const BigFloat& got, const BigFloat& want) {
  if (want.is_zero()) return static_cast<double>(abs(got));
  return static_cast<double>(abs(got - want) / abs(want));
}

}  // namespace testutil
