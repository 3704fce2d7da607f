#pragma once
// Dense univariate polynomials over the rationals with exact real-root
// isolation (Sturm sequences, dyadic bisection) and refinement.

#include <optional>
#include <utility>
#include <vector>

#include "algolog/bipoly.hpp"
#include "algolog/interval.hpp"
#include "algolog/numeric.hpp"

namespace algolog {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Rational c) {
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly variable() { return UniPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<Rational> r((std::max)(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
  }
  UniPoly operator-(const UniPoly& o) const {
    std::vector<Rational> r((std::max)(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UniPoly(std::move(r));
  }
  UniPoly operator-() const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v = -v;
    return UniPoly(std::move(r));
  }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly operator*(const Rational& s) const {
    if (s.is_zero()) return {};
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= s;
    return UniPoly(std::move(r));
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(r));
  }

  template <class T>
  T eval(const T& x) const {
    T acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc *= x;
      acc += scalar_traits<T>::from_rational(c_[i]);
    }
    return acc;
  }
  Rational eval_rational(const Rational& x) const { return eval<Rational>(x); }

  int sign_at(const Rational& x) const {
    Rational v = eval_rational(x);
    return v.is_zero() ? 0 : (v < 0 ? -1 : 1);
  }

  // Quotient and remainder over the rationals.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) raise(Errc::invalid_request, "polynomial division by zero");
    UniPoly rem = *this;
    std::vector<Rational> q;
    int dd = d.degree();
    if (rem.degree() >= dd) q.assign(rem.degree() - dd + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= dd) {
      int k = rem.degree() - dd;
      Rational f = rem.leading() / d.leading();
      q[k] = f;
      for (int i = 0; i <= dd; ++i)
        rem.c_[k + i] -= f * d.c_[i];
      rem.trim();
    }
    return {UniPoly(std::move(q)), rem};
  }

  UniPoly exact_div(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero())
      raise(Errc::invalid_request, "exact polynomial division left a remainder");
    return q;
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    return *this * (Rational(1) / leading());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  if (g.degree() <= 0) return p.monic();
  return p.exact_div(g).monic();
}

// ---------------------------------------------------------------------------
// Sturm-based real-root isolation

struct IsolatedRoot {
  RatInterval box;   // contains exactly one real root; a point when exact
  bool exact = false;
  Rational value() const { return box.lo; }  // valid when exact
};

namespace detail {

inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero()) {
    const UniPoly& a = chain[chain.size() - 2];
    const UniPoly& b = chain.back();
    chain.push_back(-(a.divmod(b).second));
  }
  chain.pop_back();
  return chain;
}

inline int sturm_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int var = 0, prev = 0;
  for (const auto& s : chain) {
    int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++var;
    prev = sg;
  }
  return var;
}

// Number of roots in the half-open interval (a, b].
inline int sturm_count(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

inline void isolate_rec(const UniPoly& p, const std::vector<UniPoly>& chain, const Rational& lo,
                        const Rational& hi, std::vector<IsolatedRoot>& out) {
  int n = sturm_count(chain, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    if (p.sign_at(hi) == 0) {
      out.push_back({RatInterval::point(hi), true});
    } else {
      out.push_back({RatInterval(lo, hi), false});
    }
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (p.sign_at(mid) == 0) {
    out.push_back({RatInterval::point(mid), true});
    // carve out the exact root before recursing on both sides
    Rational eps = (hi - lo) / 4;
    while (sturm_count(chain, mid - eps, mid + eps) > 1) eps /= 2;
    isolate_rec(p, chain, lo, mid - eps, out);
    isolate_rec(p, chain, mid + eps, hi, out);
    return;
  }
  isolate_rec(p, chain, lo, mid, out);
  isolate_rec(p, chain, mid, hi, out);
}

}  // namespace detail

// Upper bound on the absolute value of any root (Cauchy bound, rounded up to
// a power of two so bisection midpoints stay dyadic).
inline Rational root_bound(const UniPoly& p) {
  Rational m(0);
  Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational v = abs(p.coeff(i)) / lead;
    m = (std::max)(m, v);
  }
  Rational b = 1 + m;
  Rational pow2(1);
  while (pow2 < b) pow2 *= 2;
  return pow2;
}

// Isolates all real roots of p in the half-open interval (lo, hi].  The
// input need not be squarefree; isolation runs on its squarefree part.
inline std::vector<IsolatedRoot> isolate_real_roots(const UniPoly& p, const Rational& lo,
                                                    const Rational& hi) {
  std::vector<IsolatedRoot> out;
  if (p.is_zero()) raise(Errc::degenerate_system, "root isolation of the zero polynomial");
  UniPoly sf = squarefree_part(p);
  if (sf.degree() < 1) return out;
  if (sf.degree() == 1) {
    Rational r = -sf.coeff(0) / sf.coeff(1);
    if (r > lo && r <= hi) out.push_back({RatInterval::point(r), true});
    return out;
  }
  auto chain = detail::sturm_chain(sf);
  detail::isolate_rec(sf, chain, lo, hi, out);
  return out;
}

inline std::vector<IsolatedRoot> isolate_positive_roots(const UniPoly& p) {
  return isolate_real_roots(p, Rational(0), root_bound(p));
}

// Shrinks an isolating interval below the requested width by sign bisection.
// The polynomial is taken squarefree so signs at the endpoints differ.
inline void refine_root(const UniPoly& sf, IsolatedRoot& root, const Rational& width) {
  if (root.exact) return;
  RatInterval& b = root.box;
  int slo = sf.sign_at(b.lo);
  int shi = sf.sign_at(b.hi);
  if (shi == 0) {
    root.exact = true;
    b = RatInterval::point(b.hi);
    return;
  }
  if (slo == 0) {
    // isolating intervals are open at the left end; nudge inward
    Rational m = (b.lo + b.hi) / 2;
    while (sf.sign_at(m) == 0 || sf.sign_at(m) == shi) {
      if (sf.sign_at(m) == 0) {
        root.exact = true;
        b = RatInterval::point(m);
        return;
      }
      m = (b.lo + m) / 2;
    }
    b.lo = m;
    slo = sf.sign_at(m);
  }
  while (b.width() > width) {
    Rational m = b.mid();
    int sm = sf.sign_at(m);
    if (sm == 0) {
      root.exact = true;
      b = RatInterval::point(m);
      return;
    }
    if (sm == slo)
      b.lo = m;
    else
      b.hi = m;
  }
}

// ---------------------------------------------------------------------------
// Bivariate coefficient extraction and resultants

// Coefficients of p viewed as a polynomial in y, each a UniPoly in x.
inline std::vector<UniPoly> coeffs_wrt_y(const BiPoly& p) {
  int dy = p.deg_y();
  if (p.is_zero()) return {};
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(dy) + 1);
  int dx = p.deg_x();
  for (auto& row : rows) row.assign(static_cast<std::size_t>(dx) + 1, Rational(0));
  for (const auto& [k, c] : p.terms()) rows[k.second][k.first] = c;
  std::vector<UniPoly> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.emplace_back(std::move(row));
  return out;
}

namespace detail {

// Fraction-free Bareiss determinant over Q[x]; all divisions are exact.
inline UniPoly bareiss_det(std::vector<std::vector<UniPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return UniPoly(Rational(1));
  int sign = 1;
  UniPoly prev(Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};  // singular
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        UniPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num.is_zero() ? UniPoly() : num.exact_div(prev);
      }
      m[i][k] = UniPoly();
    }
    prev = m[k][k];
  }
  UniPoly det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace detail

// Resultant of a and b with respect to y: a polynomial in x vanishing on
// every x-coordinate of a common zero.
inline UniPoly resultant_y(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto ac = coeffs_wrt_y(a);
  auto bc = coeffs_wrt_y(b);
  const std::size_t m = ac.size() - 1;  // deg_y a
  const std::size_t n = bc.size() - 1;  // deg_y b
  if (m == 0 && n == 0) raise(Errc::invalid_request, "resultant of two y-free polynomials");
  const std::size_t size = m + n;
  std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = ac[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = bc[n - i];
  return detail::bareiss_det(s);
}

inline UniPoly resultant_x(const BiPoly& a, const BiPoly& b) {
  return resultant_y(a.swap_vars(), b.swap_vars());
}

// p(x) -> p(x^g)
inline UniPoly inflate(const UniPoly& p, int g) {
  if (g <= 1 || p.is_zero()) return p;
  std::vector<Rational> c(static_cast<std::size_t>(p.degree()) * g + 1, Rational(0));
  for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i) * g] = p.coeff(i);
  return UniPoly(std::move(c));
}

// Substitutes an exact rational x-value, leaving a polynomial in y.
inline UniPoly substitute_x(const BiPoly& p, const Rational& x0) {
  int dy = p.deg_y();
  std::vector<Rational> c(static_cast<std::size_t>((std::max)(dy, 0)) + 1, Rational(0));
  for (const auto& [k, t] : p.terms()) {
    Rational pw(1);
    for (int i = 0; i < k.first; ++i) pw *= x0;
    c[k.second] += t * pw;
  }
  return UniPoly(std::move(c));
}

inline UniPoly substitute_y(const BiPoly& p, const Rational& y0) {
  return substitute_x(p.swap_vars(), y0);
}

}  // namespace algolog
