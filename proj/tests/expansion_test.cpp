#include "helpers.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include "algolog/expansion.hpp"

using namespace algolog;
using testutil::central_difference;
using testutil::rel_err;

namespace {

BiPoly P(const std::string& s) { return parse_bipoly(s); }

LocalGeometry geometry_for(const BiPoly& h, const Direction& dir) {
  auto recs = solve_critical(h, dir);
  REQUIRE(!recs.empty());
  check_smooth(h, recs.front());
  return local_geometry(h, recs.front(), dir);
}

}  // namespace

TEST_CASE("local geometry of the interlaced kernel") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y");
  for (long long ell : {1LL, 2LL, 3LL}) {
    auto g = geometry_for(h, Direction(1, ell));
    CHECK(rel_err(g.chi1, BigFloat(1)) < 1e-12);
    CHECK(static_cast<double>(abs(g.chi2)) < 1e-12);
    BigFloat expect_m = -BigFloat((1 + ell) * (1 + ell) * (1 + ell)) / ell;
    CHECK(rel_err(g.m, expect_m) < 1e-12);
  }
}

TEST_CASE("local geometry of the necklace kernel") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y x^2");
  for (long long ell : {3LL, 4LL, 5LL}) {
    auto g = geometry_for(h, Direction(ell, 1));
    BigFloat e2 = BigFloat(ell - 2), e1 = BigFloat(ell - 1), e = BigFloat(ell);
    BigFloat chi1 = e2 * e2 * e2 / (e * e1 * e1);
    BigFloat chi2 = -(2 * e - 1) * pow(e2, 5) / (pow(e, 3) * pow(e1, 3));
    BigFloat m = -pow(e2, 5) / (pow(e, 3) * e1);
    CHECK(rel_err(g.chi1, chi1) < 1e-12);
    CHECK(rel_err(g.chi2, chi2) < 1e-12);
    CHECK(rel_err(g.m, m) < 1e-12);
  }
}

TEST_CASE("chi1 matches the implicit-function slope") {
  PrecisionGuard guard(256);
  // continue H(x, y) = 0 numerically: chi1 = -dx/dy at the critical point
  auto slope_check = [](const BiPoly& h, const Direction& dir) {
    auto g = geometry_for(h, dir);
    BiPoly hx = h.dx();
    BigFloat hstep("1e-8");
    auto solve_x = [&](const BigFloat& y) {
      BigFloat x = g.p;
      for (int i = 0; i < 80; ++i) {
        BigFloat f = h.eval<BigFloat>(x, y);
        BigFloat d = hx.eval<BigFloat>(x, y);
        x -= f / d;
      }
      return x;
    };
    BigFloat dxdy = (solve_x(g.q + hstep) - solve_x(g.q - hstep)) / (2 * hstep);
    CHECK(rel_err(g.chi1, -dxdy) < 1e-6);
  };
  slope_check(P("1 - x - y x^2"), Direction(3, 1));
  slope_check(P("1 - x - y"), Direction(1, 2));
}

TEST_CASE("chi mismatch flags a non-critical direction") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y x^2");
  auto recs = solve_critical(h, Direction(3, 1));
  check_smooth(h, recs.front());
  CHECK_THROWS_MATCHES(local_geometry(h, recs.front(), Direction(5, 1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::chi_mismatch;
                       }));
}

TEST_CASE("reciprocal gamma derivatives") {
  PrecisionGuard guard(256);
  auto d_half = gamma_recip_derivs(BigFloat(0.5), 0);
  CHECK(rel_err(d_half[0], 1 / sqrt(pi_value())) < 1e-30);

  auto d_zero = gamma_recip_derivs(BigFloat(0), 3);
  CHECK(d_zero[0].is_zero());
  CHECK(rel_err(d_zero[1], BigFloat(1)) < 1e-30);
  // (1/Gamma)''(0) = 2*euler
  BigFloat euler = -boost::math::digamma(BigFloat(1));
  CHECK(rel_err(d_zero[2], 2 * euler) < 1e-30);

  auto d_one = gamma_recip_derivs(BigFloat(1), 1);
  CHECK(rel_err(d_one[1], euler) < 1e-30);

  // limit at a negative integer: (1/Gamma)'(-1) = -1
  auto d_neg = gamma_recip_derivs(BigFloat(-1), 1);
  CHECK(d_neg[0].is_zero());
  CHECK(rel_err(d_neg[1], BigFloat(-1)) < 1e-30);
}

TEST_CASE("reciprocal gamma derivatives match finite differences") {
  PrecisionGuard guard(128);
  BigFloat hstep("1e-5");
  auto recip = [](BigFloat t) { return 1 / boost::math::tgamma(t); };
  for (double a : {0.5, 1.0, 2.5}) {
    auto derivs = gamma_recip_derivs(BigFloat(a), 3);
    for (unsigned j = 0; j <= 3; ++j) {
      BigFloat fd = central_difference(recip, BigFloat(a), j, hstep);
      CHECK(static_cast<double>(abs(fd - derivs[j])) < 1e-6);
    }
  }
}

TEST_CASE("correction terms: base cases and the dual derivation") {
  PrecisionGuard guard(256);
  CHECK(correction_terms(BigFloat(0.5), 0, BigFloat(1), BigFloat(-1)).empty());

  // beta = 1, alpha = 1/2, p*hx = -1: E_1 = Gamma(1/2) (1/Gamma)'(1/2)
  auto e = correction_terms(BigFloat(0.5), 1, BigFloat(1), BigFloat(-1));
  REQUIRE(e.size() == 1);
  BigFloat euler = -boost::math::digamma(BigFloat(1));
  BigFloat expect = euler + 2 * log(BigFloat(2));  // = -psi(1/2)
  CHECK(rel_err(e[0], expect) < 1e-12);

  // beta = 2, alpha = 2 at p*hx = -1/2: both derivations, j = 1 and 2
  {
    auto closed = correction_terms(BigFloat(2), 2, BigFloat(1), BigFloat(-0.5));
    auto assembled = correction_terms_assembled(BigFloat(2), 2, BigFloat(1), BigFloat(-0.5));
    REQUIRE(closed.size() == 2);
    CHECK(rel_err(closed[0], assembled[0]) < 1e-12);
    CHECK(rel_err(closed[1], assembled[1]) < 1e-12);
  }

  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> dist(0.05, 8.0);
  for (double a : {0.5, 1.0 / 3.0, 2.0, 2.5}) {
    for (int trial = 0; trial < 5; ++trial) {
      BigFloat p(dist(rng)), hx(-dist(rng));
      for (unsigned beta = 1; beta <= 4; ++beta) {
        auto lhs = correction_terms(BigFloat(a), beta, p, hx);
        auto rhs = correction_terms_assembled(BigFloat(a), beta, p, hx);
        REQUIRE(lhs.size() == beta);
        for (unsigned j = 0; j < beta; ++j) CHECK(rel_err(lhs[j], rhs[j]) < 1e-12);
      }
    }
  }

  CHECK_THROWS_MATCHES(correction_terms(BigFloat(0.5), 1, BigFloat(1), BigFloat(1)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e2) {
                         return e2.code() == Errc::negative_log_argument;
                       }));
}

TEST_CASE("leading asymptotic closed forms") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y");
  auto geom = geometry_for(h, Direction(1, 1));

  SECTION("zero-alpha branch at (10, 10)") {
    auto e = leading_asymptotic(geom, BigFloat(0), 1);
    CHECK(e.zero_alpha_branch);
    CHECK(e.corrections.empty());
    auto ev = evaluate(e, 10, 10);
    // |value| = 4^10 * 10^(-3/2) / (2 sqrt(pi)); the log factor carries sign (-1)^beta
    BigFloat expect = pow(BigFloat(4), 10) * pow(BigFloat(10), BigFloat(-1.5)) /
                      (2 * sqrt(pi_value()));
    CHECK(ev.sign == -1);
    CHECK(rel_err(pow(BigFloat(10), ev.log10_magnitude), expect) < 1e-12);
  }

  SECTION("beta = 0, alpha = 1 has no log factors") {
    auto e = leading_asymptotic(geom, BigFloat(1), 0);
    CHECK_FALSE(e.zero_alpha_branch);
    CHECK(e.corrections.empty());
    auto ev = evaluate(e, 30, 30);
    // (-p Hx)^(-1) p^(-r) q^(-s) / sqrt(-2 pi q^2 M r)
    BigFloat expect = (1 / (BigFloat(0.5))) * pow(BigFloat(4), 30) /
                      sqrt(2 * pi_value() * BigFloat(0.25) * BigFloat(8) * 30);
    CHECK(ev.sign == 1);
    CHECK(rel_err(pow(BigFloat(10), ev.log10_magnitude), expect) < 1e-12);
  }
}

TEST_CASE("zero-alpha branch is the limit of the general branch") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y");
  auto geom = geometry_for(h, Direction(1, 1));
  auto exact0 = leading_asymptotic(geom, BigFloat(0), 1);
  auto near0 = leading_asymptotic(geom, BigFloat("1e-6"), 1);
  auto v0 = evaluate(exact0, 100, 100);
  auto ve = evaluate(near0, 100, 100);
  CHECK(v0.sign == ve.sign);
  BigFloat ratio = pow(BigFloat(10), ve.log10_magnitude - v0.log10_magnitude);
  CHECK(static_cast<double>(abs(ratio - 1)) < 1e-4);
}

TEST_CASE("hypothesis violations raise named errors") {
  PrecisionGuard guard(256);
  LocalGeometry g;
  g.p = 0.5;
  g.q = 0.5;
  g.lambda = Rational(1);
  g.dir = Direction(1, 1);
  g.hx = -1;
  g.hy = -1;
  g.m = 2;  // positive M: sqrt argument would be negative
  CHECK_THROWS_MATCHES(leading_asymptotic(g, BigFloat(0.5), 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::positive_m;
                       }));
  g.m = -8;
  CHECK_THROWS_MATCHES(leading_asymptotic(g, BigFloat(-1), 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::unsupported_alpha;
                       }));
  g.hx = 1;  // -p*hx < 0
  CHECK_THROWS_MATCHES(leading_asymptotic(g, BigFloat(0.5), 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::negative_log_argument;
                       }));
}

TEST_CASE("evaluate enforces the direction rounding rule") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y");
  auto geom = geometry_for(h, Direction(1, 1));
  auto e = leading_asymptotic(geom, BigFloat(0), 1);
  CHECK_THROWS_MATCHES(evaluate(e, 10, 11), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e2) {
                         return e2.code() == Errc::direction_mismatch;
                       }));
}

TEST_CASE("evaluate growth is consistent along the ray") {
  PrecisionGuard guard(256);
  BiPoly h = P("1 - x - y x^2");
  Direction dir(3, 1);
  auto geom = geometry_for(h, dir);
  auto e = leading_asymptotic(geom, BigFloat(0), 1);
  auto v1 = evaluate(e, 150, 50);
  auto v2 = evaluate(e, 300, 100);
  BigFloat ln10 = log(BigFloat(10));
  BigFloat algebraic = BigFloat(-1.5) * (log(BigFloat(300)) - log(BigFloat(150))) / ln10;
  BigFloat growth = -(BigFloat(150) * log(e.p) + BigFloat(50) * log(e.q)) / ln10;
  BigFloat delta = v2.log10_magnitude - v1.log10_magnitude - algebraic - growth;
  CHECK(static_cast<double>(abs(delta)) < 1e-25);
}

TEST_CASE("univariate standard scale") {
  PrecisionGuard guard(256);
  BigFloat r2000(2000);
  BigFloat v0 = univariate_standard_scale(BigFloat(0.5), 0, 400, 0);
  CHECK(rel_err(v0, pow(BigFloat(400), BigFloat(-0.5)) / sqrt(pi_value())) < 1e-25);

  BigFloat euler = -boost::math::digamma(BigFloat(1));
  BigFloat c1 = euler + 2 * log(BigFloat(2));
  BigFloat v1 = univariate_standard_scale(BigFloat(0.5), 1, 2000, 1);
  BigFloat expect = pow(r2000, BigFloat(-0.5)) / sqrt(pi_value()) * (log(r2000) + c1);
  CHECK(rel_err(v1, expect) < 1e-25);

  // negative half-integer alpha: r^(-3/2) / Gamma(-1/2)
  BigFloat vneg = univariate_standard_scale(BigFloat(-0.5), 0, 500, 0);
  CHECK(rel_err(vneg, pow(BigFloat(500), BigFloat(-1.5)) /
                          boost::math::tgamma(BigFloat(-0.5))) < 1e-25);
}

TEST_CASE("univariate scale against exact series coefficients") {
  PrecisionGuard guard(256);
  const int r = 2000;
  auto base = series_from_poly<BigFloat>(P("1 - x"), r, 0);
  auto powp = series_pow(base, Rational(-1, 2));
  auto lg = series_scale(series_log(base), BigFloat(-1));  // log(1/(1-x))
  auto prod = series_mul(powp, lg);
  BigFloat exact = prod.at(r, 0);
  BigFloat approx = univariate_standard_scale(BigFloat(0.5), 1, r, 1);
  CHECK(rel_err(exact, approx) < 0.01);
}

TEST_CASE("dominant-term selection") {
  PrecisionGuard guard(256);
  Direction dir(3, 1);
  std::vector<std::pair<int, CriticalPointRecord>> candidates;
  for (int k = 1; k <= 5; ++k) {
    BiPoly h = BiPoly(Rational(1)) - BiPoly::monomial(k, 0, 1) - BiPoly::monomial(2 * k, k, 1);
    auto recs = solve_critical(h, dir);
    REQUIRE(recs.size() == 1);
    candidates.emplace_back(k, std::move(recs.front()));
  }
  CHECK(dominant_term(candidates, dir) == 1);

  std::vector<std::pair<int, CriticalPointRecord>> single = {candidates.front()};
  CHECK(dominant_term(single, dir) == 1);

  std::vector<std::pair<int, CriticalPointRecord>> tied = {candidates.front(),
                                                           candidates.front()};
  tied[1].first = 99;
  CHECK_THROWS_MATCHES(dominant_term(tied, dir), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == Errc::tied_growth;
                       }));
}
