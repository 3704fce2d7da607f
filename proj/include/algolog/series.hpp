#pragma once
// Box-truncated power series in one and two variables over exchangeable
// coefficient backends (exact rationals or MPFR floats).
//
// Every operation returns the true coefficients of the represented function
// on the truncation box, so previously computed coefficients never change
// when a box is enlarged.  log/exp/pow/sqrt run by first-order differential
// recurrences; their cost adapts to the sparsity of the operand (quadratic
// in the box size in the dense worst case).

#include <utility>
#include <vector>

#include "algolog/bipoly.hpp"
#include "algolog/numeric.hpp"

namespace algolog {

template <class T>
class TruncSeries2D {
 public:
  TruncSeries2D() : rx_(0), sy_(0), c_(1, T(0)) {}
  TruncSeries2D(int rx, int sy)
      : rx_(rx), sy_(sy),
        c_(static_cast<std::size_t>(rx + 1) * static_cast<std::size_t>(sy + 1), T(0)) {
    if (rx < 0 || sy < 0) raise(Errc::invalid_request, "negative truncation order");
  }

  int order_x() const { return rx_; }
  int order_y() const { return sy_; }

  T& at(int i, int j) { return c_[static_cast<std::size_t>(i) * (sy_ + 1) + j]; }
  const T& at(int i, int j) const { return c_[static_cast<std::size_t>(i) * (sy_ + 1) + j]; }

  bool same_box(const TruncSeries2D& o) const { return rx_ == o.rx_ && sy_ == o.sy_; }

  bool operator==(const TruncSeries2D& o) const {
    return rx_ == o.rx_ && sy_ == o.sy_ && c_ == o.c_;
  }

 private:
  int rx_, sy_;
  std::vector<T> c_;
};

namespace detail {

template <class T>
void require_same_box(const TruncSeries2D<T>& a, const TruncSeries2D<T>& b) {
  if (!a.same_box(b))
    raise(Errc::order_mismatch, "series operands carry different truncation boxes");
}

template <class T>
struct SupportEntry {
  int i, j;
  T value;
};

template <class T>
std::vector<SupportEntry<T>> support(const TruncSeries2D<T>& f, bool skip_origin) {
  std::vector<SupportEntry<T>> s;
  for (int i = 0; i <= f.order_x(); ++i)
    for (int j = 0; j <= f.order_y(); ++j) {
      if (skip_origin && i == 0 && j == 0) continue;
      if (!scalar_traits<T>::is_zero(f.at(i, j))) s.push_back({i, j, f.at(i, j)});
    }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction and simple arithmetic

template <class T>
TruncSeries2D<T> series_from_poly(const BiPoly& p, int rx, int sy) {
  TruncSeries2D<T> f(rx, sy);
  for (const auto& [k, c] : p.terms())
    if (k.first <= rx && k.second <= sy)
      f.at(k.first, k.second) = scalar_traits<T>::from_rational(c);
  return f;
}

template <class T>
TruncSeries2D<T> series_constant(const T& c, int rx, int sy) {
  TruncSeries2D<T> f(rx, sy);
  f.at(0, 0) = c;
  return f;
}

template <class T>
TruncSeries2D<T> series_one(int rx, int sy) {
  return series_constant<T>(T(1), rx, sy);
}

template <class T>
TruncSeries2D<T> operator+(const TruncSeries2D<T>& a, const TruncSeries2D<T>& b) {
  detail::require_same_box(a, b);
  TruncSeries2D<T> r(a.order_x(), a.order_y());
  for (int i = 0; i <= a.order_x(); ++i)
    for (int j = 0; j <= a.order_y(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

template <class T>
TruncSeries2D<T> operator-(const TruncSeries2D<T>& a, const TruncSeries2D<T>& b) {
  detail::require_same_box(a, b);
  TruncSeries2D<T> r(a.order_x(), a.order_y());
  for (int i = 0; i <= a.order_x(); ++i)
    for (int j = 0; j <= a.order_y(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

template <class T>
TruncSeries2D<T> series_scale(const TruncSeries2D<T>& a, const T& s) {
  TruncSeries2D<T> r(a.order_x(), a.order_y());
  for (int i = 0; i <= a.order_x(); ++i)
    for (int j = 0; j <= a.order_y(); ++j) r.at(i, j) = a.at(i, j) * s;
  return r;
}

template <class T>
TruncSeries2D<T> series_truncate(const TruncSeries2D<T>& a, int rx, int sy) {
  if (rx > a.order_x() || sy > a.order_y())
    raise(Errc::out_of_box, "cannot enlarge a truncation box by truncation");
  TruncSeries2D<T> r(rx, sy);
  for (int i = 0; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j) r.at(i, j) = a.at(i, j);
  return r;
}

template <class T>
T series_coeff(const TruncSeries2D<T>& f, int r, int s) {
  if (r < 0 || s < 0 || r > f.order_x() || s > f.order_y())
    raise(Errc::out_of_box,
          "coefficient (" + std::to_string(r) + "," + std::to_string(s) +
              ") outside truncation box (" + std::to_string(f.order_x()) + "," +
              std::to_string(f.order_y()) + ")");
  return f.at(r, s);
}

template <class T>
TruncSeries2D<T> series_dx(const TruncSeries2D<T>& f) {
  int rx = (std::max)(f.order_x() - 1, 0);
  TruncSeries2D<T> r(rx, f.order_y());
  for (int i = 1; i <= f.order_x(); ++i)
    for (int j = 0; j <= f.order_y(); ++j) r.at(i - 1, j) = f.at(i, j) * i;
  return r;
}

template <class T>
TruncSeries2D<T> series_dy(const TruncSeries2D<T>& f) {
  int sy = (std::max)(f.order_y() - 1, 0);
  TruncSeries2D<T> r(f.order_x(), sy);
  for (int i = 0; i <= f.order_x(); ++i)
    for (int j = 1; j <= f.order_y(); ++j) r.at(i, j - 1) = f.at(i, j) * j;
  return r;
}

// ---------------------------------------------------------------------------
// Multiplication and division

template <class T>
TruncSeries2D<T> series_mul(const TruncSeries2D<T>& a, const TruncSeries2D<T>& b) {
  detail::require_same_box(a, b);
  const int rx = a.order_x(), sy = a.order_y();
  TruncSeries2D<T> r(rx, sy);
  for (int i = 0; i <= rx; ++i)
    for (int j = 0; j <= sy; ++j) {
      const T& av = a.at(i, j);
      if (scalar_traits<T>::is_zero(av)) continue;
      for (int u = 0; u + i <= rx; ++u)
        for (int v = 0; v + j <= sy; ++v) r.at(i + u, j + v) += av * b.at(u, v);
    }
  return r;
}

// Truncated quotient a/f; requires an invertible constant term.
template <class T>
TruncSeries2D<T> series_div(const TruncSeries2D<T>& a, const TruncSeries2D<T>& f) {
  detail::require_same_box(a, f);
  const T f00 = f.at(0, 0);
  if (scalar_traits<T>::is_zero(f00))
    raise(Errc::non_invertible_constant_term, "series division needs a unit constant term");
  const auto supp = detail::support(f, /*skip_origin=*/true);
  const int rx = a.order_x(), sy = a.order_y();
  TruncSeries2D<T> q(rx, sy);
  for (int r = 0; r <= rx; ++r)
    for (int s = 0; s <= sy; ++s) {
      T acc = a.at(r, s);
      for (const auto& e : supp) {
        if (e.i > r || e.j > s) continue;
        acc -= e.value * q.at(r - e.i, s - e.j);
      }
      q.at(r, s) = acc / f00;
    }
  return q;
}

template <class T>
TruncSeries2D<T> series_inverse(const TruncSeries2D<T>& f) {
  return series_div(series_one<T>(f.order_x(), f.order_y()), f);
}

// ---------------------------------------------------------------------------
// Logarithm

template <class T>
TruncSeries2D<T> series_log(const TruncSeries2D<T>& f) {
  const int rx = f.order_x(), sy = f.order_y();
  const T f00 = f.at(0, 0);
  TruncSeries2D<T> g(rx, sy);
  TruncSeries2D<T> w = f;
  if constexpr (scalar_traits<T>::exact) {
    if (f00 <= 0)
      raise(Errc::non_positive_constant_term, "log of a series with constant term <= 0");
    if (f00 != 1)
      raise(Errc::backend_unsupported,
            "exact backend supports log only for constant term 1 (got " +
                f00.str() + ")");
    g.at(0, 0) = T(0);
  } else {
    if (f00 <= 0)
      raise(Errc::non_positive_constant_term, "log of a series with constant term <= 0");
    w = series_scale(f, T(1) / f00);
    g.at(0, 0) = log(f00);
  }

  // dG/dx = (dW/dx)/W, integrated back in x
  if (rx >= 1) {
    TruncSeries2D<T> p = series_dx(w);
    TruncSeries2D<T> q = series_div(p, series_truncate(w, rx - 1, sy));
    for (int r = 1; r <= rx; ++r)
      for (int s = 0; s <= sy; ++s) g.at(r, s) = q.at(r - 1, s) / r;
  }
  // x == 0 column from the univariate series in y
  if (sy >= 1) {
    TruncSeries2D<T> col(0, sy);
    for (int j = 0; j <= sy; ++j) col.at(0, j) = w.at(0, j);
    TruncSeries2D<T> p0 = series_dy(col);
    TruncSeries2D<T> q0 = series_div(p0, series_truncate(col, 0, sy - 1));
    for (int s = 1; s <= sy; ++s) g.at(0, s) = q0.at(0, s - 1) / s;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Exponential

template <class T>
TruncSeries2D<T> series_exp(const TruncSeries2D<T>& f) {
  const int rx = f.order_x(), sy = f.order_y();
  const T f00 = f.at(0, 0);
  TruncSeries2D<T> w = f;
  T scale(1);
  if constexpr (scalar_traits<T>::exact) {
    if (!scalar_traits<T>::is_zero(f00))
      raise(Errc::backend_unsupported,
            "exact backend supports exp only for zero constant term");
  } else {
    scale = exp(f00);
    w.at(0, 0) = T(0);
  }
  const auto supp = detail::support(w, /*skip_origin=*/true);
  TruncSeries2D<T> g(rx, sy);
  g.at(0, 0) = T(1);
  // dG = G * dW, solved cell by cell; the x == 0 column uses the y derivative
  for (int r = 0; r <= rx; ++r)
    for (int s = 0; s <= sy; ++s) {
      if (r == 0 && s == 0) continue;
      T acc(0);
      if (r >= 1) {
        for (const auto& e : supp) {
          if (e.i < 1 || e.i > r || e.j > s) continue;
          acc += e.value * e.i * g.at(r - e.i, s - e.j);
        }
        g.at(r, s) = acc / r;
      } else {
        for (const auto& e : supp) {
          if (e.i != 0 || e.j < 1 || e.j > s) continue;
          acc += e.value * e.j * g.at(0, s - e.j);
        }
        g.at(0, s) = acc / s;
      }
    }
  if constexpr (!scalar_traits<T>::exact) {
    if (scale != 1) g = series_scale(g, scale);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Square root (direct recurrence; exact on rationals when the constant term
// is a perfect rational square)

namespace detail {

inline bool rational_sqrt(const Rational& v, Rational* out) {
  if (v < 0) return false;
  Integer num = numerator(v), den = denominator(v);
  if (!mpz_perfect_square_p(num.backend().data()) ||
      !mpz_perfect_square_p(den.backend().data()))
    return false;
  Integer root_num = sqrt(num), root_den = sqrt(den);
  *out = Rational(root_num, root_den);
  return true;
}

}  // namespace detail

template <class T>
TruncSeries2D<T> series_sqrt(const TruncSeries2D<T>& f) {
  const int rx = f.order_x(), sy = f.order_y();
  const T f00 = f.at(0, 0);
  T g00(0);
  if constexpr (scalar_traits<T>::exact) {
    if (f00 <= 0)
      raise(Errc::non_positive_constant_term, "sqrt of a series with constant term <= 0");
    Rational root;
    if (!detail::rational_sqrt(f00, &root))
      raise(Errc::backend_unsupported,
            "exact backend needs a perfect-square constant term for sqrt");
    g00 = root;
  } else {
    if (f00 <= 0)
      raise(Errc::non_positive_constant_term, "sqrt of a series with constant term <= 0");
    g00 = sqrt(f00);
  }
  TruncSeries2D<T> g(rx, sy);
  g.at(0, 0) = g00;
  const T two_g00 = g00 * 2;
  for (int r = 0; r <= rx; ++r)
    for (int s = 0; s <= sy; ++s) {
      if (r == 0 && s == 0) continue;
      T acc = f.at(r, s);
      for (int i = 0; i <= r; ++i)
        for (int j = 0; j <= s; ++j) {
          if ((i == 0 && j == 0) || (i == r && j == s)) continue;
          const T& gij = g.at(i, j);
          if (scalar_traits<T>::is_zero(gij)) continue;
          acc -= gij * g.at(r - i, s - j);
        }
      g.at(r, s) = acc / two_g00;
    }
  return g;
}

// ---------------------------------------------------------------------------
// Real powers

template <class T>
TruncSeries2D<T> series_pow(const TruncSeries2D<T>& f, const Rational& t) {
  const int rx = f.order_x(), sy = f.order_y();
  const T f00 = f.at(0, 0);
  if (f00 <= 0)
    raise(Errc::non_positive_constant_term, "pow of a series with constant term <= 0");
  if (t.is_zero()) return series_one<T>(rx, sy);

  if (denominator(t) == 1) {
    Integer n = numerator(t);
    TruncSeries2D<T> base = n < 0 ? series_inverse(f) : f;
    Integer e = abs(n);
    TruncSeries2D<T> acc = series_one<T>(rx, sy);
    while (e > 0) {
      if ((e & 1) != 0) acc = series_mul(acc, base);
      e >>= 1;
      if (e > 0) base = series_mul(base, base);
    }
    return acc;
  }

  if constexpr (scalar_traits<T>::exact) {
    if (f00 != 1)
      raise(Errc::backend_unsupported,
            "exact backend supports non-integer powers only for constant term 1");
    return series_exp(series_scale(series_log(f), T(t)));
  } else {
    TruncSeries2D<T> w = series_scale(f, T(1) / f00);
    TruncSeries2D<T> g =
        series_exp(series_scale(series_log(w), scalar_traits<T>::from_rational(t)));
    T c = pow(f00, scalar_traits<T>::from_rational(t));
    return series_scale(g, c);
  }
}

// ---------------------------------------------------------------------------
// Univariate series as a thin wrapper over the bivariate kernels

template <class T>
class TruncSeries1D {
 public:
  TruncSeries1D() : s_(0, 0) {}
  explicit TruncSeries1D(int order) : s_(order, 0) {}
  explicit TruncSeries1D(TruncSeries2D<T> s) : s_(std::move(s)) {
    if (s_.order_y() != 0)
      raise(Errc::invalid_request, "univariate series must have y-order 0");
  }

  int order() const { return s_.order_x(); }
  T& at(int i) { return s_.at(i, 0); }
  const T& at(int i) const { return s_.at(i, 0); }
  const TruncSeries2D<T>& as2d() const { return s_; }
  bool operator==(const TruncSeries1D& o) const { return s_ == o.s_; }

 private:
  TruncSeries2D<T> s_;
};

// Builds a univariate series from a polynomial in x alone.
template <class T>
TruncSeries1D<T> series_from_poly_1d(const BiPoly& p, int order) {
  if (p.deg_y() > 0)
    raise(Errc::invalid_request, "univariate series built from a bivariate polynomial");
  return TruncSeries1D<T>(series_from_poly<T>(p, order, 0));
}

template <class T>
TruncSeries1D<T> series1d_from_coeffs(const std::vector<Rational>& c, int order) {
  TruncSeries1D<T> f(order);
  for (int i = 0; i <= order && i < static_cast<int>(c.size()); ++i)
    f.at(i) = scalar_traits<T>::from_rational(c[i]);
  return f;
}

template <class T>
T series_coeff(const TruncSeries1D<T>& f, int r) {
  if (r < 0 || r > f.order())
    raise(Errc::out_of_box, "coefficient index outside truncation order");
  return f.at(r);
}

template <class T>
TruncSeries1D<T> series_mul(const TruncSeries1D<T>& a, const TruncSeries1D<T>& b) {
  return TruncSeries1D<T>(series_mul(a.as2d(), b.as2d()));
}
template <class T>
TruncSeries1D<T> series_div(const TruncSeries1D<T>& a, const TruncSeries1D<T>& b) {
  return TruncSeries1D<T>(series_div(a.as2d(), b.as2d()));
}
template <class T>
TruncSeries1D<T> series_log(const TruncSeries1D<T>& f) {
  return TruncSeries1D<T>(series_log(f.as2d()));
}
template <class T>
TruncSeries1D<T> series_exp(const TruncSeries1D<T>& f) {
  return TruncSeries1D<T>(series_exp(f.as2d()));
}
template <class T>
TruncSeries1D<T> series_sqrt(const TruncSeries1D<T>& f) {
  return TruncSeries1D<T>(series_sqrt(f.as2d()));
}
template <class T>
TruncSeries1D<T> series_pow(const TruncSeries1D<T>& f, const Rational& t) {
  return TruncSeries1D<T>(series_pow(f.as2d(), t));
}

}  // namespace algolog
