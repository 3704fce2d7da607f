#pragma once
// Local geometry at a certified critical point and the evaluable
// coefficient expansion for H^(-alpha) * log^beta(H), including the
// descending-log correction terms and the alpha = 0 branch.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/polygamma.hpp>

#include <utility>
#include <vector>

#include "algolog/critical.hpp"
#include "algolog/numeric.hpp"
#include "algolog/unipoly.hpp"

namespace algolog {

inline BigFloat pi_value() { return boost::math::constants::pi<BigFloat>(); }

// ---------------------------------------------------------------------------
// Derivatives of the reciprocal gamma function

namespace detail {

inline bool is_nonpositive_integer(const BigFloat& a) {
  return a <= 0 && a == floor(a);
}

// d^j/dt^j (1/Gamma) at a regular (non-pole-adjacent) argument, by the
// product-rule recurrence on (1/Gamma)' = -psi/Gamma.
inline std::vector<BigFloat> recip_gamma_derivs_regular(const BigFloat& alpha, unsigned jmax) {
  std::vector<BigFloat> r(jmax + 1);
  r[0] = 1 / boost::math::tgamma(alpha);
  if (jmax == 0) return r;
  std::vector<BigFloat> psi(jmax);
  psi[0] = boost::math::digamma(alpha);
  for (unsigned k = 1; k < jmax; ++k)
    psi[k] = boost::math::polygamma(static_cast<int>(k), alpha);
  for (unsigned n = 0; n < jmax; ++n) {
    BigFloat acc = 0;
    for (unsigned k = 0; k <= n; ++k)
      acc += static_cast<BigFloat>(binomial(n, k)) * psi[k] * r[n - k];
    r[n + 1] = -acc;
  }
  return r;
}

}  // namespace detail

// Values [d^j/dt^j (1/Gamma(t))] at t = alpha for j = 0..jmax.  At
// nonpositive integers the limiting values are returned: 1/Gamma has simple
// zeros there, recovered through 1/Gamma(t) = t(t+1)...(t+m) / Gamma(t+m+1).
inline std::vector<BigFloat> gamma_recip_derivs(const BigFloat& alpha, unsigned jmax) {
  if (!detail::is_nonpositive_integer(alpha))
    return detail::recip_gamma_derivs_regular(alpha, jmax);

  const long m = -static_cast<long>(alpha);
  UniPoly poly(Rational(1));
  for (long i = 0; i <= m; ++i)
    poly = poly * UniPoly(std::vector<Rational>{Rational(i), Rational(1)});
  std::vector<BigFloat> shifted = detail::recip_gamma_derivs_regular(BigFloat(1), jmax);

  std::vector<BigFloat> out(jmax + 1);
  for (unsigned j = 0; j <= jmax; ++j) {
    BigFloat acc = 0;
    UniPoly d = poly;
    for (unsigned i = 0; i <= j; ++i) {
      if (d.is_zero()) break;
      BigFloat pv = static_cast<BigFloat>(d.eval_rational(Rational(-m)));
      acc += static_cast<BigFloat>(binomial(j, i)) * pv * shifted[j - i];
      d = d.derivative();
    }
    out[j] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correction coefficients E_1..E_beta

inline std::vector<BigFloat> correction_terms(const BigFloat& alpha, unsigned beta,
                                              const BigFloat& p, const BigFloat& hx);

// Assembly through the univariate-scale route: e_j^(k) = C(beta,k) L^k c_{j-k}^(k)
// with c_i^(k) = C(beta-k, i) Gamma(alpha) (1/Gamma)^(i)(alpha).  Agrees with
// the closed form by the identity C(b,k)C(b-k,j-k) = C(b,j)C(j,k).
inline std::vector<BigFloat> correction_terms_assembled(const BigFloat& alpha, unsigned beta,
                                                        const BigFloat& p, const BigFloat& hx) {
  BigFloat arg = -p * hx;
  if (arg <= 0)
    raise(Errc::negative_log_argument, "-p*Hx(p,q) must be positive");
  if (detail::is_nonpositive_integer(alpha))
    raise(Errc::unsupported_alpha, "correction terms need alpha outside the nonpositive integers");
  BigFloat big_l = -log(arg);  // log(-1/(p*Hx))
  BigFloat gamma_alpha = boost::math::tgamma(alpha);
  std::vector<BigFloat> derivs = gamma_recip_derivs(alpha, beta);
  std::vector<BigFloat> e(beta);
  for (unsigned j = 1; j <= beta; ++j) {
    BigFloat acc = 0;
    BigFloat lpow = 1;
    for (unsigned k = 0; k <= j; ++k) {
      BigFloat c_kj = static_cast<BigFloat>(binomial(beta - k, j - k)) * gamma_alpha *
                      derivs[j - k];
      acc += static_cast<BigFloat>(binomial(beta, k)) * lpow * c_kj;
      lpow *= big_l;
    }
    e[j - 1] = acc;
  }
  return e;
}

inline std::vector<BigFloat> correction_terms(const BigFloat& alpha, unsigned beta,
                                              const BigFloat& p, const BigFloat& hx) {
  if (beta == 0) return {};
  BigFloat arg = -p * hx;
  if (arg <= 0)
    raise(Errc::negative_log_argument, "-p*Hx(p,q) must be positive");
  if (detail::is_nonpositive_integer(alpha))
    raise(Errc::unsupported_alpha, "correction terms need alpha outside the nonpositive integers");
  BigFloat big_l = -log(arg);
  BigFloat gamma_alpha = boost::math::tgamma(alpha);
  std::vector<BigFloat> derivs = gamma_recip_derivs(alpha, beta);
  std::vector<BigFloat> e(beta);
  for (unsigned j = 1; j <= beta; ++j) {
    BigFloat acc = 0;
    BigFloat lpow = 1;
    for (unsigned k = 0; k <= j; ++k) {
      acc += static_cast<BigFloat>(binomial(beta, j)) *
             static_cast<BigFloat>(binomial(j, k)) * lpow * gamma_alpha * derivs[j - k];
      lpow *= big_l;
    }
    e[j - 1] = acc;
  }
  // the two derivations are algebraically identical; disagreement means a bug
  std::vector<BigFloat> check = correction_terms_assembled(alpha, beta, p, hx);
  for (unsigned j = 0; j < beta; ++j)
    if (!rel_close(e[j], check[j], BigFloat("1e-20")))
      throw std::logic_error("correction term derivations disagree");
  return e;
}

// ---------------------------------------------------------------------------
// Local geometry

struct LocalGeometry {
  BigFloat p, q;
  Rational lambda;
  Direction dir{1, 1};
  BigFloat hx, hy, hxx, hxy, hyy;
  BigFloat chi1, chi2, m;
};

inline LocalGeometry local_geometry(const BiPoly& h, const CriticalPointRecord& rec,
                                    const Direction& dir) {
  if (rec.smooth_checked && !rec.smooth)
    raise(Errc::invalid_request, "local geometry requested at a nonsmooth point");
  auto [a, b] = critical_system(h, dir);
  auto [p, q] = polish_point(a, b, rec);
  // the polish must stay inside the certified enclosure; escaping means the
  // record is not a critical point of this direction's system
  BigFloat drift_x = abs(p - rec.p_approx()), drift_y = abs(q - rec.q_approx());
  BigFloat slack = BigFloat("1e-9") * (1 + abs(p) + abs(q));
  if (drift_x > slack || drift_y > slack)
    raise(Errc::chi_mismatch,
          "point is not critical for this direction (Newton polish escapes the certificate)");

  PartialSet ps = partials(h);
  LocalGeometry g;
  g.p = p;
  g.q = q;
  g.lambda = dir.lambda();
  g.dir = dir;
  g.hx = ps.hx.eval<BigFloat>(p, q);
  g.hy = ps.hy.eval<BigFloat>(p, q);
  g.hxx = ps.hxx.eval<BigFloat>(p, q);
  g.hxy = ps.hxy.eval<BigFloat>(p, q);
  g.hyy = ps.hyy.eval<BigFloat>(p, q);

  BigFloat tiny = ldexp(BigFloat(1), -64);
  if (abs(g.hx) < tiny)
    raise(Errc::hx_vanishes, "Hx vanishes at the critical point");
  g.chi1 = g.hy / g.hx;
  BigFloat lambda_f = static_cast<BigFloat>(g.lambda);
  BigFloat chi1_alt = p / (lambda_f * q);
  if (!rel_close(g.chi1, chi1_alt, BigFloat("1e-10")))
    raise(Errc::chi_mismatch,
          "Hy/Hx and p/(lambda q) disagree; point is not critical for this direction");
  g.chi2 = (g.chi1 * g.chi1 * g.hxx - 2 * g.chi1 * g.hxy + g.hyy) / (2 * g.hx);
  g.m = -2 * g.chi2 / p - g.chi1 * g.chi1 / (p * p) - 1 / (lambda_f * q * q);
  if (abs(g.m) < tiny)
    raise(Errc::m_vanishes, "M vanishes at the critical point");
  return g;
}

// ---------------------------------------------------------------------------
// The evaluable expansion

struct AsymptoticExpansion {
  BigFloat alpha;
  unsigned beta = 0;
  BigFloat p, q;
  BigFloat prefactor;                // r-independent constant factor
  std::vector<BigFloat> corrections; // E_1..E_beta (empty on the alpha=0 branch)
  bool zero_alpha_branch = false;
  Direction dir{1, 1};
};

inline AsymptoticExpansion leading_asymptotic(const LocalGeometry& geom, const BigFloat& alpha,
                                              unsigned beta) {
  if (geom.m >= 0)
    raise(Errc::positive_m, "sqrt(-2 pi q^2 M r) needs M < 0");
  BigFloat sq = sqrt(-2 * pi_value() * geom.q * geom.q * geom.m);
  BigFloat sign = (beta % 2 == 0) ? BigFloat(1) : BigFloat(-1);

  AsymptoticExpansion e;
  e.alpha = alpha;
  e.beta = beta;
  e.p = geom.p;
  e.q = geom.q;
  e.dir = geom.dir;

  if (alpha.is_zero()) {
    e.zero_alpha_branch = true;
    e.prefactor = sign * static_cast<BigFloat>(beta) / sq;
    return e;
  }
  if (detail::is_nonpositive_integer(alpha))
    raise(Errc::unsupported_alpha,
          "alpha in the negative integers is outside both branches");
  BigFloat arg = -geom.p * geom.hx;
  if (arg <= 0)
    raise(Errc::negative_log_argument, "-p*Hx(p,q) must be positive");
  e.prefactor = sign * pow(arg, -alpha) / (boost::math::tgamma(alpha) * sq);
  if (beta >= 1) e.corrections = correction_terms(alpha, beta, geom.p, geom.hx);
  return e;
}

struct EvalResult {
  Scaled scaled;
  double approx = 0.0;
  int sign = 0;
  BigFloat log10_magnitude;  // valid when sign != 0
};

// Numeric value of the expansion at integer indices on the direction ray
// (s must equal round(r * r2 / r1)); computed in log space so growth like
// p^-r stays representable.
inline EvalResult evaluate(const AsymptoticExpansion& e, long long r, long long s) {
  if (r <= 0 || s <= 0)
    raise(Errc::invalid_request, "evaluation needs positive indices");
  Integer expected = round_nearest(Rational(r) * Rational(e.dir.r2, e.dir.r1));
  if (Integer(s) != expected)
    raise(Errc::direction_mismatch,
          "target (" + std::to_string(r) + "," + std::to_string(s) +
              ") is off the direction ray; expected s = " + expected.str());

  EvalResult out;
  if (e.prefactor.is_zero()) return out;

  BigFloat ln_r = log(BigFloat(r));
  BigFloat ln_mag = log(abs(e.prefactor)) - BigFloat(r) * log(e.p) - BigFloat(s) * log(e.q);
  int sign = e.prefactor < 0 ? -1 : 1;

  if (e.zero_alpha_branch) {
    ln_mag += BigFloat(-1.5) * ln_r;
    if (e.beta >= 1) ln_mag += static_cast<BigFloat>(e.beta - 1) * log(ln_r);
  } else {
    ln_mag += (e.alpha - BigFloat(1.5)) * ln_r;
    ln_mag += static_cast<BigFloat>(e.beta) * log(ln_r);
    BigFloat bracket = 1;
    BigFloat lp = 1;
    for (const BigFloat& corr : e.corrections) {
      lp *= ln_r;
      bracket += corr / lp;
    }
    if (bracket.is_zero()) return out;
    if (bracket < 0) sign = -sign;
    ln_mag += log(abs(bracket));
  }

  out.sign = sign;
  out.log10_magnitude = ln_mag / log(BigFloat(10));
  out.scaled = scaled_from_log10(sign, out.log10_magnitude);
  out.approx = scaled_to_double(out.scaled);
  return out;
}

// ---------------------------------------------------------------------------
// Univariate standard scale for [z^r] (1-z)^(-alpha) log^bp(1/(1-z))

inline BigFloat univariate_standard_scale(const BigFloat& alpha, unsigned beta_power,
                                          long long r, unsigned jmax) {
  if (r <= 0) raise(Errc::invalid_request, "scale needs a positive index");
  BigFloat ln_r = log(BigFloat(r));
  std::vector<BigFloat> derivs = gamma_recip_derivs(alpha, jmax);
  // bracket written with 1/Gamma folded in, so nonpositive-integer alpha
  // takes its limit without intermediate infinities
  BigFloat bracket = derivs[0];
  BigFloat lp = 1;
  for (unsigned j = 1; j <= jmax; ++j) {
    lp *= ln_r;
    if (j > beta_power) continue;  // binomial vanishes
    bracket += static_cast<BigFloat>(binomial(beta_power, j)) * derivs[j] / lp;
  }
  return pow(BigFloat(r), alpha - 1) * pow(ln_r, static_cast<int>(beta_power)) * bracket;
}

// The correction series is finite for integer log powers; jmax defaults to
// the log power itself.
inline BigFloat univariate_standard_scale(const BigFloat& alpha, unsigned beta_power,
                                          long long r) {
  return univariate_standard_scale(alpha, beta_power, r, beta_power);
}

// ---------------------------------------------------------------------------
// Dominant-growth selection across candidate points

// Picks the candidate maximizing |p^r1 q^r2|^-1, i.e. minimizing
// r1 log p + r2 log q.  A tie within 1e-12 relative violates the
// single-critical-point hypothesis.
inline std::size_t dominant_candidate_position(
    const std::vector<std::pair<int, CriticalPointRecord>>& candidates, const Direction& dir) {
  if (candidates.empty())
    raise(Errc::invalid_request, "dominant-term selection over an empty list");
  std::vector<BigFloat> growth(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& rec = candidates[i].second;
    growth[i] = BigFloat(dir.r1) * log(rec.p_approx()) + BigFloat(dir.r2) * log(rec.q_approx());
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < growth.size(); ++i)
    if (growth[i] < growth[best]) best = i;
  for (std::size_t i = 0; i < growth.size(); ++i) {
    if (i == best) continue;
    BigFloat ga = abs(growth[i]), gb = abs(growth[best]), one(1);
    BigFloat scale = (std::max)((std::max)(ga, gb), one);
    if (abs(growth[i] - growth[best]) <= BigFloat("1e-12") * scale)
      raise(Errc::tied_growth, "two critical points share the maximal exponential growth");
  }
  return best;
}

inline int dominant_term(const std::vector<std::pair<int, CriticalPointRecord>>& candidates,
                         const Direction& dir) {
  return candidates[dominant_candidate_position(candidates, dir)].first;
}

}  // namespace algolog
