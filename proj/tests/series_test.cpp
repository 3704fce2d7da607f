#include "helpers.hpp"

#include "algolog/series.hpp"

using namespace algolog;
using testutil::naive_convolution;
using testutil::random_series;

namespace {

BiPoly P(const std::string& s) { return parse_bipoly(s); }

}  // namespace

TEST_CASE("series_from_poly copies into the box and drops outside terms") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 2, 2);
  CHECK(f.at(0, 0) == 1);
  CHECK(f.at(1, 0) == -1);
  CHECK(f.at(0, 1) == -1);
  CHECK(f.at(1, 1) == 0);
  CHECK(f.at(2, 2) == 0);

  auto z = series_from_poly<Rational>(BiPoly(), 3, 3);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) CHECK(z.at(i, j) == 0);

  auto g = series_from_poly<Rational>(P("1 - x - y x^2"), 2, 1);
  CHECK(g.at(2, 1) == -1);
  CHECK(g.at(1, 0) == -1);

  // terms past the box vanish
  auto h = series_from_poly<Rational>(P("1 + x^5 + y^4"), 2, 2);
  CHECK(h.at(0, 0) == 1);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      if (i + j > 0) CHECK(h.at(i, j) == 0);
}

TEST_CASE("series_mul basic identities") {
  auto a = series_from_poly<Rational>(P("1 + x"), 2, 2);
  auto b = series_from_poly<Rational>(P("1 + y"), 2, 2);
  auto ab = series_mul(a, b);
  CHECK(ab.at(0, 0) == 1);
  CHECK(ab.at(1, 0) == 1);
  CHECK(ab.at(0, 1) == 1);
  CHECK(ab.at(1, 1) == 1);
  CHECK(ab.at(2, 2) == 0);

  auto one = series_one<Rational>(2, 2);
  CHECK(series_mul(a, one) == a);
}

TEST_CASE("series inverse against brute-force convolution") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 5, 5);
  auto inv = series_inverse(f);
  auto prod = naive_convolution(f, inv);
  CHECK(prod == series_one<Rational>(5, 5));
  // 1/(1-x-y) has binomial coefficients
  CHECK(inv.at(2, 1) == 3);
  CHECK(inv.at(3, 2) == 10);
}

TEST_CASE("series_mul agrees with naive convolution on random inputs") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 6; ++trial) {
    int rx = 4 + static_cast<int>(rng() % 5);  // up to 8
    int sy = 4 + static_cast<int>(rng() % 5);
    auto a = random_series(rng, rx, sy);
    auto b = random_series(rng, rx, sy);
    CHECK(series_mul(a, b) == naive_convolution(a, b));
  }
}

TEST_CASE("ring axioms on the truncation box") {
  std::mt19937_64 rng(77001);
  for (int trial = 0; trial < 5; ++trial) {
    auto a = random_series(rng, 4, 4);
    auto b = random_series(rng, 4, 4);
    auto c = random_series(rng, 4, 4);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(series_mul(a, b) == series_mul(b, a));
    CHECK(series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c)));
    CHECK(series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c));
  }
}

TEST_CASE("series_log of the interlaced kernel") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 3, 3);
  auto g = series_log(series_inverse(f));  // log(1/(1-x-y))
  // [x^n y^m] = binomial(n+m, n) / (n+m)
  CHECK(g.at(1, 1) == 1);
  CHECK(g.at(2, 1) == 1);
  CHECK(g.at(3, 2) == 2);  // would need box (3,2); (3,3) covers it
  CHECK(g.at(0, 0) == 0);
}

TEST_CASE("series_log trivial and univariate cases") {
  auto one = series_one<Rational>(4, 4);
  CHECK(series_log(one) == TruncSeries2D<Rational>(4, 4));

  // log(1+x): alternating harmonic coefficients
  auto f = series_from_poly<Rational>(P("1 + x"), 6, 0);
  auto g = series_log(f);
  for (int n = 1; n <= 6; ++n) {
    Rational expect = Rational((n % 2 == 1) ? 1 : -1, n);
    CHECK(g.at(n, 0) == expect);
  }
  // independent route: integrate 1/(1+x)
  auto q = series_div(series_one<Rational>(5, 0), series_truncate(f, 5, 0));
  for (int n = 1; n <= 6; ++n) CHECK(g.at(n, 0) == q.at(n - 1, 0) / n);
}

TEST_CASE("series_log satisfies the differential identity") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 4; ++trial) {
    auto f = random_series(rng, 5, 4, /*unit_constant=*/true);
    auto g = series_log(f);
    // F * dG/dx == dF/dx exactly within the shared box
    auto lhs = series_mul(series_truncate(f, 4, 4), series_dx(g));
    auto rhs = series_dx(f);
    CHECK(lhs == rhs);
    // and in y
    auto lhs_y = series_mul(series_truncate(f, 5, 3), series_dy(g));
    auto rhs_y = series_dy(f);
    CHECK(lhs_y == rhs_y);
  }
}

TEST_CASE("series_log differential identity on the float backend") {
  PrecisionGuard guard(128);
  auto f = series_from_poly<BigFloat>(P("3 - x - 2y + x y"), 6, 6);
  auto g = series_log(f);
  auto lhs = series_mul(series_truncate(f, 5, 6), series_dx(g));
  auto rhs = series_dx(f);
  BigFloat tol = ldexp(BigFloat(1), -118);  // 2^-(prec-10)
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 6; ++j) {
      BigFloat mag = abs(rhs.at(i, j));
      BigFloat scale = (std::max)(BigFloat(1), mag);
      CHECK(abs(lhs.at(i, j) - rhs.at(i, j)) <= tol * scale);
    }
}

TEST_CASE("series_log error cases") {
  auto f = series_from_poly<Rational>(P("2 + x"), 2, 2);
  CHECK_THROWS_MATCHES(series_log(f), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::backend_unsupported;
                       }));
  auto g = series_from_poly<Rational>(P("0 - x"), 2, 2);
  CHECK_THROWS_MATCHES(series_log(g), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::non_positive_constant_term;
                       }));
}

TEST_CASE("series_exp basics and round trips") {
  CHECK(series_exp(TruncSeries2D<Rational>(3, 3)) == series_one<Rational>(3, 3));

  // exp(x + y) has coefficients 1/(i! j!)
  auto f = series_from_poly<Rational>(P("x + y"), 3, 3);
  auto g = series_exp(f);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      Rational expect =
          Rational(1, Integer(factorial(static_cast<unsigned long>(i)) *
                              factorial(static_cast<unsigned long>(j))));
      CHECK(g.at(i, j) == expect);
    }

  // exp(log F) == F exactly on the exact backend
  auto h = series_from_poly<Rational>(P("1 - x - y + x^2 y"), 4, 4);
  CHECK(series_exp(series_log(h)) == h);

  auto bad = series_from_poly<Rational>(P("1 + x"), 2, 2);
  CHECK_THROWS_MATCHES(series_exp(bad), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::backend_unsupported;
                       }));
}

TEST_CASE("series_pow values and round trips") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 4, 4);
  CHECK(series_pow(f, Rational(0)) == series_one<Rational>(4, 4));

  // (1 - 4x)^(1/2) truncated at order 4
  auto u = series_from_poly<Rational>(P("1 - 4x"), 4, 0);
  auto root = series_pow(u, Rational(1, 2));
  Rational expect[] = {Rational(1), Rational(-2), Rational(-2), Rational(-4), Rational(-10)};
  for (int n = 0; n <= 4; ++n) CHECK(root.at(n, 0) == expect[n]);

  // pow(t) then pow(1/t) is the identity for t in {2, 3, -1}
  auto g = series_from_poly<Rational>(P("1 + x + 2y + x y^2"), 4, 4);
  for (long t : {2L, 3L, -1L}) {
    auto powed = series_pow(g, Rational(t));
    CHECK(series_pow(powed, Rational(1) / t) == g);
  }

  // pow(-1) agrees with the direct inverse recurrence
  CHECK(series_pow(g, Rational(-1)) == series_inverse(g));

  auto neg = series_from_poly<Rational>(P("0 - 1 + x"), 3, 3);
  CHECK_THROWS_MATCHES(series_pow(neg, Rational(2)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::non_positive_constant_term;
                       }));
}

TEST_CASE("series_sqrt squares back exactly") {
  // the Narayana inner polynomial, on the exact backend
  BiPoly h = narayana_inner_poly();
  auto f = series_from_poly<Rational>(h, 6, 6);
  auto root = series_sqrt(f);
  CHECK(series_mul(root, root) == f);

  PrecisionGuard guard(192);
  auto ff = series_from_poly<BigFloat>(h, 6, 6);
  auto r2 = series_sqrt(ff);
  auto p2 = series_pow(ff, Rational(1, 2));
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 6; ++j)
      CHECK(abs(r2.at(i, j) - p2.at(i, j)) < ldexp(BigFloat(1), -150));
}

TEST_CASE("non-integer powers stay exact when the constant term is 1") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 5, 5);
  auto half = series_pow(f, Rational(1, 2));
  CHECK(series_mul(half, half) == f);

  auto third = series_pow(f, Rational(1, 3));
  CHECK(series_mul(series_mul(third, third), third) == f);
}

TEST_CASE("series_coeff bounds") {
  auto f = series_from_poly<Rational>(P("1 - x - y"), 3, 3);
  CHECK(series_coeff(f, 0, 0) == 1);
  auto g = series_log(series_inverse(f));
  CHECK(series_coeff(g, 2, 1) == 1);
  CHECK_THROWS_MATCHES(series_coeff(f, 4, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::out_of_box;
                       }));
}

TEST_CASE("box mismatch is rejected") {
  auto a = series_one<Rational>(3, 3);
  auto b = series_one<Rational>(3, 4);
  CHECK_THROWS_MATCHES(series_mul(a, b), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::order_mismatch;
                       }));
}

TEST_CASE("enlarging the box never changes earlier coefficients") {
  BiPoly h = P("1 - x - y x^2");
  auto small = series_log(series_inverse(series_from_poly<Rational>(h, 6, 4)));
  auto large = series_log(series_inverse(series_from_poly<Rational>(h, 10, 7)));
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 4; ++j) CHECK(small.at(i, j) == large.at(i, j));
}

TEST_CASE("univariate wrappers") {
  // log(1 - 4z) = -sum 4^n z^n / n
  auto f = series_from_poly_1d<Rational>(P("1 - 4x"), 5);
  auto g = series_log(f);
  for (int n = 1; n <= 5; ++n) {
    Rational expect = -Rational(Integer(1) << (2 * n), n);
    CHECK(g.at(n) == expect);
  }
  CHECK(series_exp(g) == f);

  auto root = series_sqrt(f);
  CHECK(series_mul(root, root) == f);
  CHECK_THROWS_AS(series_coeff(g, 6), Error);
}
