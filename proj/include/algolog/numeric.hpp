#pragma once
// Scalar layer: exact rationals (GMP) and dynamic-precision binary floats
// (MPFR), plus the error vocabulary shared by every module.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace algolog {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using BigFloat = boost::multiprecision::mpfr_float;

// ---------------------------------------------------------------------------
// Errors

enum class Errc {
  order_mismatch,
  backend_unsupported,
  non_positive_constant_term,
  non_invertible_constant_term,
  out_of_box,
  degenerate_system,
  no_positive_solution,
  inconclusive,
  hx_vanishes,
  m_vanishes,
  chi_mismatch,
  negative_log_argument,
  positive_m,
  unsupported_alpha,
  direction_mismatch,
  tied_growth,
  division_residue,
  parse_error,
  invalid_request,
  hypothesis_failure,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::order_mismatch: return "OrderMismatch";
    case Errc::backend_unsupported: return "BackendUnsupported";
    case Errc::non_positive_constant_term: return "NonPositiveConstantTerm";
    case Errc::non_invertible_constant_term: return "NonInvertibleConstantTerm";
    case Errc::out_of_box: return "OutOfBox";
    case Errc::degenerate_system: return "DegenerateSystem";
    case Errc::no_positive_solution: return "NoPositiveSolution";
    case Errc::inconclusive: return "Inconclusive";
    case Errc::hx_vanishes: return "HxVanishes";
    case Errc::m_vanishes: return "MVanishes";
    case Errc::chi_mismatch: return "ChiMismatch";
    case Errc::negative_log_argument: return "NegativeLogArgument";
    case Errc::positive_m: return "PositiveM";
    case Errc::unsupported_alpha: return "UnsupportedAlpha";
    case Errc::direction_mismatch: return "DirectionMismatch";
    case Errc::tied_growth: return "TiedGrowth";
    case Errc::division_residue: return "DivisionResidue";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_request: return "InvalidRequest";
    case Errc::hypothesis_failure: return "HypothesisFailure";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}
  Errc code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

// ---------------------------------------------------------------------------
// Coefficient backends

struct CoefficientBackend {
  enum class Kind { ExactRational, BigFloat };
  Kind kind = Kind::ExactRational;
  unsigned precision_bits = 256;

  static CoefficientBackend exact() { return {Kind::ExactRational, 0}; }
  static CoefficientBackend big_float(unsigned bits = 256) {
    return {Kind::BigFloat, bits};
  }
  bool is_exact() const { return kind == Kind::ExactRational; }
};

inline unsigned bits_to_digits10(unsigned bits) {
  // ceil(bits * log10(2)) plus slack so round trips keep full precision
  return static_cast<unsigned>((static_cast<std::uint64_t>(bits) * 30103u) / 100000u) + 4u;
}

// Scopes the default MPFR precision.  All BigFloat temporaries created while
// a guard is alive carry at least the requested number of bits.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits)
      : previous_(BigFloat::default_precision()) {
    BigFloat::default_precision(bits_to_digits10(bits));
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;
  ~PrecisionGuard() { BigFloat::default_precision(previous_); }

 private:
  unsigned previous_;
};

// ---------------------------------------------------------------------------
// Scalar traits used by the templated series kernels

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& v) { return v; }
  static bool is_zero(const Rational& v) { return v.is_zero(); }
};

template <>
struct scalar_traits<BigFloat> {
  static constexpr bool exact = false;
  static BigFloat from_rational(const Rational& v) {
    return static_cast<BigFloat>(v);
  }
  static bool is_zero(const BigFloat& v) { return v.is_zero(); }
};

// ---------------------------------------------------------------------------
// Small integer helpers

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.backend().data(), n);
  return r;
}

inline long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Nearest integer, halves rounded up.  Used by the direction rounding rule.
inline Integer round_nearest(const Rational& v) {
  Rational shifted = v + Rational(1, 2);
  Integer n = numerator(shifted) / denominator(shifted);
  if (shifted < 0 && Rational(n) != shifted) --n;  // floor for negatives
  return n;
}

// ---------------------------------------------------------------------------
// Scaled decimal representation for values far outside double range

struct Scaled {
  double mantissa = 0.0;  // in [1,10) up to sign, 0 for zero
  long long exp10 = 0;

  bool is_zero() const { return mantissa == 0.0; }
};

// Builds a Scaled from sign and log10 of the magnitude.
inline Scaled scaled_from_log10(int sign, const BigFloat& log10_mag) {
  if (sign == 0) return {};
  BigFloat fl = floor(log10_mag);
  long long e = static_cast<long long>(fl);
  double m = static_cast<double>(pow(BigFloat(10), log10_mag - fl));
  if (m >= 10.0) {  // guard rounding at the bin edge
    m /= 10.0;
    ++e;
  }
  return {sign > 0 ? m : -m, e};
}

inline Scaled scaled_from_bigfloat(const BigFloat& v) {
  if (v.is_zero()) return {};
  int sign = v < 0 ? -1 : 1;
  return scaled_from_log10(sign, log10(abs(v)));
}

inline Scaled scaled_from_rational(const Rational& v) {
  if (v.is_zero()) return {};
  return scaled_from_bigfloat(static_cast<BigFloat>(v));
}

inline double scaled_to_double(const Scaled& s) {
  if (s.is_zero()) return 0.0;
  if (s.exp10 > 307 || s.exp10 < -307) return s.mantissa * 0.0;  // under/overflow -> 0 signal
  double p = 1.0;
  long long e = s.exp10 < 0 ? -s.exp10 : s.exp10;
  for (long long i = 0; i < e; ++i) p *= 10.0;
  return s.exp10 < 0 ? s.mantissa / p : s.mantissa * p;
}

// ---------------------------------------------------------------------------
// Misc numeric helpers

inline bool rel_close(const BigFloat& a, const BigFloat& b, const BigFloat& tol) {
  BigFloat aa = abs(a), bb = abs(b);
  BigFloat scale = (std::max)(aa, bb);
  if (scale.is_zero()) return true;
  return abs(a - b) <= tol * scale;
}

inline std::string bigfloat_string(const BigFloat& v, unsigned digits = 40) {
  return v.str(digits, std::ios_base::scientific);
}

}  // namespace algolog
