#pragma once
// End-to-end analysis pipeline: solve -> certify -> expand -> estimate,
// optional exact-coefficient comparison, and report emission in table,
// JSON, and CSV form.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algolog/critical.hpp"
#include "algolog/expansion.hpp"
#include "algolog/genfun.hpp"
#include "algolog/numeric.hpp"

namespace algolog {

enum class EstimateMode { LogSingularity, AlgebraicReadoff, UnivariateScale };

inline const char* estimate_mode_name(EstimateMode m) {
  switch (m) {
    case EstimateMode::LogSingularity: return "log-singularity";
    case EstimateMode::AlgebraicReadoff: return "algebraic-readoff";
    case EstimateMode::UnivariateScale: return "univariate-scale";
  }
  return "?";
}

struct AnalysisRequest {
  GFSpec spec;
  Direction dir{1, 1};
  std::vector<std::pair<long long, long long>> targets;
  bool oracle = false;
  std::optional<std::pair<int, int>> oracle_box;
  unsigned precision_bits = 256;
  int minimality_grid = 64;
  EstimateMode mode = EstimateMode::LogSingularity;
  bool necklace_family = false;  // oracle sums all contributing k <= max target r
  unsigned catalan_m = 2;
  unsigned readoff_log_power = 1;
};

struct ReportCriticalPoint {
  int term = -1;
  std::string p, q;
  bool smooth = false;
  std::string minimal = "Unchecked";
};

struct ReportRow {
  long long r = 0, s = 0;
  Scaled estimate;
  bool has_oracle = false;
  Scaled oracle;
  bool has_rel_error = false;
  double rel_error = 0.0;
};

struct Report {
  // request echo
  std::string spec_name;
  std::string direction;
  std::vector<std::pair<long long, long long>> targets;
  bool oracle = false;
  std::optional<std::pair<int, int>> oracle_box;
  unsigned precision_bits = 256;
  int minimality_grid = 64;
  std::string mode;

  std::vector<ReportCriticalPoint> critical_points;
  int dominant_term = -1;

  bool has_geometry = false;
  double chi1 = 0, chi2 = 0, m = 0, hx = 0;

  bool has_expansion = false;
  double alpha = 0;
  unsigned beta = 0;
  double prefactor = 0;  // dominant-term weight folded in
  std::vector<double> corrections;
  std::string p_value, q_value;  // 40-digit decimal of the dominant point

  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;

  bool failed = false;
  std::string failure_stage, failure_error, failure_message;
};

inline int exit_code(const Report& rep) { return rep.failed ? 1 : 0; }

// ---------------------------------------------------------------------------
// Helpers

namespace detail {

inline std::string coordinate_string(const RootHandle& h, unsigned digits = 40) {
  if (h.exact()) {
    const Rational& v = h.root.value();
    if (denominator(v) == 1) return numerator(v).str();
    return v.str();
  }
  return bigfloat_string(h.box().mid_bigfloat(), digits);
}

inline std::string point_display(const CriticalPointRecord& rec) {
  auto one = [](const RootHandle& h) {
    if (h.exact()) {
      const Rational& v = h.root.value();
      return denominator(v) == 1 ? numerator(v).str() : v.str();
    }
    return bigfloat_string(h.box().mid_bigfloat(), 8);
  };
  return "(" + one(rec.x) + ", " + one(rec.y) + ")";
}

struct LogValue {
  int sign = 0;
  BigFloat log10_mag;  // valid when sign != 0
};

inline Scaled to_scaled(const LogValue& v) {
  if (v.sign == 0) return {};
  return scaled_from_log10(v.sign, v.log10_mag);
}

inline LogValue log_value_from_rational(const Rational& v) {
  if (v.is_zero()) return {};
  return {v < 0 ? -1 : 1, log10(abs(static_cast<BigFloat>(v)))};
}

inline LogValue log_value_from_bigfloat(const BigFloat& v) {
  if (v.is_zero()) return {};
  return {v < 0 ? -1 : 1, log10(abs(v))};
}

inline std::optional<double> relative_error(const LogValue& estimate, const LogValue& exact) {
  if (exact.sign == 0) return std::nullopt;
  if (estimate.sign == 0) return 1.0;
  BigFloat delta = estimate.log10_mag - exact.log10_mag;
  if (abs(delta) > 30) return 1e300;  // wildly off; keep finite for serialization
  double ratio = static_cast<double>(pow(BigFloat(10), delta));
  if (estimate.sign != exact.sign) ratio = -ratio;
  return std::abs(ratio - 1.0);
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pipeline

namespace detail {

inline void fill_row_estimate(ReportRow& row, const LogValue& est) {
  row.estimate = to_scaled(est);
}

inline void run_log_singularity(const AnalysisRequest& req, Report& rep) {
  rep.failure_stage = "critical-points";
  std::vector<std::pair<int, CriticalPointRecord>> candidates;
  for (int ti = 0; ti < static_cast<int>(req.spec.terms.size()); ++ti) {
    const GFTerm& term = req.spec.terms[ti];
    try {
      auto recs = solve_critical(term.h, req.dir);
      for (auto& r : recs) {
        r.source_term = ti;
        candidates.emplace_back(ti, std::move(r));
      }
    } catch (const Error& e) {
      if (e.code() == Errc::no_positive_solution) {
        rep.warnings.push_back("term " + std::to_string(ti) +
                               ": no positive critical points; not a growth candidate");
        continue;
      }
      throw;
    }
  }
  if (candidates.empty())
    raise(Errc::no_positive_solution, "no term produced a positive critical point");

  for (auto& [ti, rec] : candidates) {
    ReportCriticalPoint cp;
    cp.term = ti;
    cp.p = coordinate_string(rec.x);
    cp.q = coordinate_string(rec.y);
    rep.critical_points.push_back(cp);
  }

  rep.failure_stage = "smoothness";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& [ti, rec] = candidates[i];
    bool ok = check_smooth(req.spec.terms[ti].h, rec);
    rep.critical_points[i].smooth = ok;
    if (!ok)
      raise(Errc::hypothesis_failure,
            "smoothness check failed at " + point_display(rec) + " for term " +
                std::to_string(ti));
  }

  rep.failure_stage = "minimality";
  bool any_assumed = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& [ti, rec] = candidates[i];
    MinimalStatus st = check_minimal(req.spec.terms[ti].h, rec, req.minimality_grid);
    rep.critical_points[i].minimal = minimal_status_name(st);
    if (st == MinimalStatus::Failed)
      raise(Errc::hypothesis_failure,
            "minimality check failed at " + point_display(rec) + " for term " +
                std::to_string(ti));
    if (st == MinimalStatus::Assumed) any_assumed = true;
  }
  if (any_assumed)
    rep.warnings.push_back(
        "minimality only Assumed on some cells (interval subdivision cap)");
  rep.warnings.push_back(
      "minimality verified on the positive quadrant box; equal-modulus torus "
      "points are not examined");

  rep.failure_stage = "dominant-term";
  std::size_t pos = dominant_candidate_position(candidates, req.dir);
  rep.dominant_term = candidates[pos].first;
  const GFTerm& dom = req.spec.terms[static_cast<std::size_t>(rep.dominant_term)];
  CriticalPointRecord& rec = candidates[pos].second;

  rep.failure_stage = "local-geometry";
  LocalGeometry geom = local_geometry(dom.h, rec, req.dir);
  rep.has_geometry = true;
  rep.chi1 = static_cast<double>(geom.chi1);
  rep.chi2 = static_cast<double>(geom.chi2);
  rep.m = static_cast<double>(geom.m);
  rep.hx = static_cast<double>(geom.hx);

  rep.failure_stage = "expansion";
  AsymptoticExpansion exp =
      leading_asymptotic(geom, static_cast<BigFloat>(dom.alpha), dom.beta);
  rep.has_expansion = true;
  rep.alpha = static_cast<double>(exp.alpha);
  rep.beta = exp.beta;
  BigFloat weighted_prefactor = static_cast<BigFloat>(dom.weight) * exp.prefactor;
  rep.prefactor = static_cast<double>(weighted_prefactor);
  for (const BigFloat& e : exp.corrections) rep.corrections.push_back(static_cast<double>(e));
  rep.p_value = bigfloat_string(exp.p, 40);
  rep.q_value = bigfloat_string(exp.q, 40);

  rep.failure_stage = "evaluation";
  int wsign = dom.weight.is_zero() ? 0 : (dom.weight < 0 ? -1 : 1);
  BigFloat wlog10 = wsign == 0 ? BigFloat(0) : log10(abs(static_cast<BigFloat>(dom.weight)));
  bool rounding_noted = false;
  std::vector<LogValue> estimates;
  for (auto [r, s] : req.targets) {
    Rational exact_s = Rational(r) * Rational(req.dir.r2, req.dir.r1);
    if (denominator(exact_s) != 1 && !rounding_noted) {
      rep.warnings.push_back("direction rounding applied: targets use s = round(r*r2/r1)");
      rounding_noted = true;
    }
    EvalResult ev = evaluate(exp, r, s);
    LogValue est;
    if (ev.sign != 0 && wsign != 0) est = {ev.sign * wsign, ev.log10_magnitude + wlog10};
    estimates.push_back(est);
    ReportRow row;
    row.r = r;
    row.s = s;
    fill_row_estimate(row, est);
    rep.rows.push_back(row);
  }

  if (req.oracle) {
    rep.failure_stage = "oracle";
    GFSpec ospec = req.spec;
    long long max_r = 0, max_s = 0;
    for (auto [r, s] : req.targets) {
      max_r = (std::max)(max_r, r);
      max_s = (std::max)(max_s, s);
    }
    if (req.necklace_family) ospec = necklace_spec(static_cast<int>(max_r));
    int bx = req.oracle_box ? req.oracle_box->first : static_cast<int>(max_r);
    int by = req.oracle_box ? req.oracle_box->second : static_cast<int>(max_s);

    bool exact_ok = true;
    for (const auto& t : ospec.terms)
      if (denominator(t.alpha) != 1 && t.h.constant_term() != 1) exact_ok = false;

    std::vector<LogValue> oracle_values(req.targets.size());
    std::vector<bool> in_box(req.targets.size(), false);
    if (exact_ok) {
      auto table = gf_table<Rational>(ospec, bx, by);
      for (std::size_t i = 0; i < req.targets.size(); ++i) {
        auto [r, s] = req.targets[i];
        if (r > bx || s > by) continue;
        in_box[i] = true;
        oracle_values[i] = log_value_from_rational(table.at(static_cast<int>(r),
                                                            static_cast<int>(s)));
      }
    } else {
      auto table = gf_table<BigFloat>(ospec, bx, by);
      for (std::size_t i = 0; i < req.targets.size(); ++i) {
        auto [r, s] = req.targets[i];
        if (r > bx || s > by) continue;
        in_box[i] = true;
        oracle_values[i] = log_value_from_bigfloat(table.at(static_cast<int>(r),
                                                            static_cast<int>(s)));
      }
    }
    for (std::size_t i = 0; i < req.targets.size(); ++i) {
      if (!in_box[i]) {
        rep.warnings.push_back("oracle box does not cover target " +
                               std::to_string(req.targets[i].first) + ":" +
                               std::to_string(req.targets[i].second));
        continue;
      }
      rep.rows[i].has_oracle = true;
      rep.rows[i].oracle = to_scaled(oracle_values[i]);
      auto rel = relative_error(estimates[i], oracle_values[i]);
      if (rel) {
        rep.rows[i].has_rel_error = true;
        rep.rows[i].rel_error = *rel;
      }
    }
  }
  rep.failure_stage.clear();
}

// Narayana log powers: the singularity is a square root, so the estimate
// comes from the cited algebraic read-off; critical-point certification
// still runs on the inner polynomial and is reported.
inline void run_algebraic_readoff(const AnalysisRequest& req, Report& rep) {
  if (req.dir.r2 != 1 || req.dir.r1 < 2)
    raise(Errc::invalid_request, "read-off estimate needs a direction (l, 1) with l >= 2");
  if (req.readoff_log_power < 1)
    raise(Errc::invalid_request, "log power must be >= 1");
  const long long ell = req.dir.r1;
  const unsigned rp = req.readoff_log_power;
  const BiPoly& h = req.spec.terms.front().h;

  rep.failure_stage = "critical-points";
  auto recs = solve_critical(h, req.dir);
  std::vector<std::pair<int, CriticalPointRecord>> candidates;
  for (auto& r : recs) candidates.emplace_back(0, std::move(r));
  for (auto& [ti, rec] : candidates) {
    ReportCriticalPoint cp;
    cp.term = 0;
    cp.p = coordinate_string(rec.x);
    cp.q = coordinate_string(rec.y);
    rep.critical_points.push_back(cp);
  }

  rep.failure_stage = "smoothness";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool ok = check_smooth(h, candidates[i].second);
    rep.critical_points[i].smooth = ok;
    if (!ok)
      raise(Errc::hypothesis_failure,
            "smoothness check failed at " + point_display(candidates[i].second));
  }
  rep.failure_stage = "minimality";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    MinimalStatus st = check_minimal(h, candidates[i].second, req.minimality_grid);
    rep.critical_points[i].minimal = minimal_status_name(st);
    if (st == MinimalStatus::Failed)
      raise(Errc::hypothesis_failure,
            "minimality check failed at " + point_display(candidates[i].second));
  }
  rep.warnings.push_back(
      "minimality verified on the positive quadrant box; equal-modulus torus "
      "points are not examined");

  rep.failure_stage = "dominant-term";
  std::size_t pos = dominant_candidate_position(candidates, req.dir);
  rep.dominant_term = 0;

  rep.failure_stage = "local-geometry";
  LocalGeometry geom = local_geometry(h, candidates[pos].second, req.dir);
  rep.has_geometry = true;
  rep.chi1 = static_cast<double>(geom.chi1);
  rep.chi2 = static_cast<double>(geom.chi2);
  rep.m = static_cast<double>(geom.m);
  rep.hx = static_cast<double>(geom.hx);
  rep.p_value = bigfloat_string(geom.p, 40);
  rep.q_value = bigfloat_string(geom.q, 40);

  rep.warnings.push_back(
      "estimate uses the cited read-off for square-root singularities; the "
      "log-singularity expansion does not apply to this family");

  rep.failure_stage = "evaluation";
  std::vector<LogValue> estimates;
  for (auto [r, s] : req.targets) {
    Integer expected = round_nearest(Rational(r) / Rational(ell));
    if (Integer(s) != expected)
      raise(Errc::direction_mismatch, "target off the direction ray");
    long long n = s;
    BigFloat ln_ell = log(BigFloat(ell));
    BigFloat ln_em1 = ell == 2 ? BigFloat(0) : log(BigFloat(ell - 1));
    BigFloat log_ratio = log(BigFloat(ell) / BigFloat(ell - 1));
    BigFloat ln_est = log(BigFloat(rp)) - log(2 * pi_value()) +
                      static_cast<BigFloat>(rp - 1) * log(log_ratio) -
                      2 * log(BigFloat(n)) +
                      BigFloat(-2 * n * (ell - 1) - 1) * ln_em1 +
                      BigFloat(2 * ell * n - 1) * ln_ell;
    LogValue est{1, ln_est / log(BigFloat(10))};
    estimates.push_back(est);
    ReportRow row;
    row.r = r;
    row.s = s;
    fill_row_estimate(row, est);
    rep.rows.push_back(row);
  }

  if (req.oracle) {
    rep.failure_stage = "oracle";
    long long max_r = 0, max_s = 0;
    for (auto [r, s] : req.targets) {
      max_r = (std::max)(max_r, r);
      max_s = (std::max)(max_s, s);
    }
    int bx = req.oracle_box ? req.oracle_box->first : static_cast<int>(max_r);
    int by = req.oracle_box ? req.oracle_box->second : static_cast<int>(max_s);
    auto table = narayana_log_series<BigFloat>(rp, bx, by);
    for (std::size_t i = 0; i < req.targets.size(); ++i) {
      auto [r, s] = req.targets[i];
      if (r > bx || s > by) {
        rep.warnings.push_back("oracle box does not cover target " + std::to_string(r) +
                               ":" + std::to_string(s));
        continue;
      }
      LogValue ov =
          log_value_from_bigfloat(table.at(static_cast<int>(r), static_cast<int>(s)));
      rep.rows[i].has_oracle = true;
      rep.rows[i].oracle = to_scaled(ov);
      auto rel = relative_error(estimates[i], ov);
      if (rel) {
        rep.rows[i].has_rel_error = true;
        rep.rows[i].rel_error = *rel;
      }
    }
  }
  rep.failure_stage.clear();
}

// Catalan log powers: univariate standard scale, no bivariate stages.
inline void run_univariate_scale(const AnalysisRequest& req, Report& rep) {
  const unsigned m = req.catalan_m;
  if (m < 1) raise(Errc::invalid_request, "log power must be >= 1");
  rep.warnings.push_back(
      "univariate family: estimates use the standard transfer scale; the "
      "direction and bivariate certification stages do not apply");

  rep.failure_stage = "evaluation";
  BigFloat ln2 = log(BigFloat(2));
  std::vector<LogValue> estimates;
  for (auto [r, s] : req.targets) {
    if (s != 0)
      raise(Errc::direction_mismatch, "univariate targets use s = 0");
    long long n = r;
    BigFloat scale = univariate_standard_scale(BigFloat(-0.5), 0, n, 0);
    // [z^n] log^m C ~ -m log^(m-1)(2) * 4^n * scale, scale < 0
    BigFloat ln_est = log(BigFloat(m)) + static_cast<BigFloat>(m - 1) * log(ln2) +
                      log(abs(scale)) + BigFloat(n) * log(BigFloat(4));
    LogValue est{1, ln_est / log(BigFloat(10))};
    estimates.push_back(est);
    ReportRow row;
    row.r = r;
    row.s = 0;
    fill_row_estimate(row, est);
    rep.rows.push_back(row);
  }

  if (req.oracle) {
    rep.failure_stage = "oracle";
    long long max_n = 0;
    for (auto [r, s] : req.targets) max_n = (std::max)(max_n, r);
    int order = req.oracle_box ? req.oracle_box->first : static_cast<int>(max_n);
    auto series = catalan_log_series<BigFloat>(m, order);
    for (std::size_t i = 0; i < req.targets.size(); ++i) {
      long long n = req.targets[i].first;
      if (n > order) {
        rep.warnings.push_back("oracle order does not cover target " + std::to_string(n));
        continue;
      }
      LogValue ov = log_value_from_bigfloat(series.at(static_cast<int>(n)));
      rep.rows[i].has_oracle = true;
      rep.rows[i].oracle = to_scaled(ov);
      auto rel = relative_error(estimates[i], ov);
      if (rel) {
        rep.rows[i].has_rel_error = true;
        rep.rows[i].rel_error = *rel;
      }
    }
  }
  rep.failure_stage.clear();
}

}  // namespace detail

inline Report run(const AnalysisRequest& req) {
  PrecisionGuard guard(req.precision_bits);
  Report rep;
  rep.spec_name = req.spec.name;
  rep.direction = std::to_string(req.dir.r1) + "/" + std::to_string(req.dir.r2);
  rep.targets = req.targets;
  rep.oracle = req.oracle;
  rep.oracle_box = req.oracle_box;
  rep.precision_bits = req.precision_bits;
  rep.minimality_grid = req.minimality_grid;
  rep.mode = estimate_mode_name(req.mode);

  if (req.targets.empty()) {
    rep.failed = true;
    rep.failure_stage = "request";
    rep.failure_error = errc_name(Errc::invalid_request);
    rep.failure_message = "no targets given";
    return rep;
  }
  try {
    switch (req.mode) {
      case EstimateMode::LogSingularity:
        detail::run_log_singularity(req, rep);
        break;
      case EstimateMode::AlgebraicReadoff:
        detail::run_algebraic_readoff(req, rep);
        break;
      case EstimateMode::UnivariateScale:
        detail::run_univariate_scale(req, rep);
        break;
    }
  } catch (const Error& e) {
    rep.failed = true;
    rep.failure_error = errc_name(e.code());
    rep.failure_message = e.detail();
    if (rep.failure_stage.empty()) rep.failure_stage = "pipeline";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in example requests

inline AnalysisRequest builtin_request(const std::string& name, long long ell = 0,
                                       unsigned m = 2, unsigned rpower = 1,
                                       int analysis_kmax = 5) {
  AnalysisRequest req;
  if (name == "necklace") {
    if (ell == 0) ell = 3;
    req.spec = necklace_spec(analysis_kmax);
    req.dir = Direction(ell, 1);
    req.necklace_family = true;
  } else if (name == "interlaced") {
    if (ell == 0) ell = 1;
    req.spec = interlaced_spec();
    req.dir = Direction(1, ell);
  } else if (name == "narayana-log") {
    if (ell == 0) ell = 2;
    req.spec.name = "narayana-log";
    req.spec.terms.push_back({Rational(1), narayana_inner_poly(), Rational(0), rpower});
    req.dir = Direction(ell, 1);
    req.mode = EstimateMode::AlgebraicReadoff;
    req.readoff_log_power = rpower;
  } else if (name == "catalan-log") {
    req.spec.name = "catalan-log";
    req.spec.terms.push_back(
        {Rational(1), BiPoly(Rational(1)) - BiPoly::monomial(1, 0, 4), Rational(-1, 2), m});
    req.mode = EstimateMode::UnivariateScale;
    req.catalan_m = m;
  } else {
    raise(Errc::invalid_request, "unknown example '" + name + "'");
  }
  return req;
}

// ---------------------------------------------------------------------------
// Spec files

inline GFSpec parse_spec_json(const nlohmann::json& j) {
  GFSpec spec;
  spec.name = j.value("name", "spec");
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    raise(Errc::parse_error, "spec needs a nonempty \"terms\" array");
  int index = 0;
  for (const auto& jt : j["terms"]) {
    auto need = [&](const char* field) -> const nlohmann::json& {
      if (!jt.contains(field))
        raise(Errc::parse_error,
              "missing field \"" + std::string(field) + "\" in term " + std::to_string(index));
      return jt[field];
    };
    GFTerm term;
    const auto& jw = need("weight");
    term.weight = jw.is_string() ? parse_rational(jw.get<std::string>())
                                 : Rational(jw.get<long long>());
    term.h = parse_bipoly(need("H").get<std::string>());
    const auto& ja = need("alpha");
    term.alpha = ja.is_string() ? parse_rational(ja.get<std::string>())
                                : Rational(ja.get<long long>());
    const auto& jb = need("beta");
    if (!jb.is_number_unsigned())
      raise(Errc::parse_error, "field \"beta\" must be a nonnegative integer in term " +
                                   std::to_string(index));
    term.beta = jb.get<unsigned>();
    spec.terms.push_back(std::move(term));
    ++index;
  }
  return spec;
}

inline GFSpec parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::parse_error, "cannot open spec file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::parse_error, "spec file '" + path + "': " + e.what());
  }
  return parse_spec_json(j);
}

// ---------------------------------------------------------------------------
// Emission

enum class EmitFormat { Table, Json, Csv };

namespace detail {

inline nlohmann::ordered_json scaled_json(const Scaled& s) {
  nlohmann::ordered_json j;
  j["mantissa"] = s.mantissa;
  j["exp10"] = s.exp10;
  double approx = scaled_to_double(s);
  if (s.is_zero() || (s.exp10 > -290 && s.exp10 < 290))
    j["approx"] = approx;
  else
    j["approx"] = nullptr;
  return j;
}

inline Scaled scaled_from_json(const nlohmann::ordered_json& j) {
  Scaled s;
  s.mantissa = j.at("mantissa").get<double>();
  s.exp10 = j.at("exp10").get<long long>();
  return s;
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const Report& rep) {
  nlohmann::ordered_json j;
  auto& jr = j["request"];
  jr["spec"] = rep.spec_name;
  jr["direction"] = rep.direction;
  {
    nlohmann::ordered_json jt = nlohmann::ordered_json::array();
    for (auto [r, s] : rep.targets) jt.push_back({r, s});
    jr["targets"] = jt;
  }
  jr["oracle"] = rep.oracle;
  if (rep.oracle_box)
    jr["oracle_box"] = {rep.oracle_box->first, rep.oracle_box->second};
  else
    jr["oracle_box"] = nullptr;
  jr["precision_bits"] = rep.precision_bits;
  jr["minimality_grid"] = rep.minimality_grid;
  jr["mode"] = rep.mode;

  auto& jc = j["critical_points"];
  jc = nlohmann::ordered_json::array();
  for (const auto& cp : rep.critical_points) {
    nlohmann::ordered_json e;
    e["term"] = cp.term;
    e["p"] = cp.p;
    e["q"] = cp.q;
    e["smooth"] = cp.smooth;
    e["minimal"] = cp.minimal;
    jc.push_back(e);
  }

  if (rep.has_geometry) {
    auto& jg = j["geometry"];
    jg["chi1"] = rep.chi1;
    jg["chi2"] = rep.chi2;
    jg["M"] = rep.m;
    jg["hx"] = rep.hx;
  } else {
    j["geometry"] = nullptr;
  }

  if (rep.has_expansion) {
    auto& je = j["expansion"];
    je["alpha"] = rep.alpha;
    je["beta"] = rep.beta;
    je["prefactor"] = rep.prefactor;
    je["corrections"] = rep.corrections;
    je["p"] = rep.p_value;
    je["q"] = rep.q_value;
  } else {
    j["expansion"] = nullptr;
  }

  auto& jrows = j["rows"];
  jrows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json e;
    e["r"] = row.r;
    e["s"] = row.s;
    e["estimate"] = detail::scaled_json(row.estimate);
    if (row.has_oracle)
      e["oracle"] = detail::scaled_json(row.oracle);
    else
      e["oracle"] = nullptr;
    if (row.has_rel_error)
      e["rel_error"] = row.rel_error;
    else
      e["rel_error"] = nullptr;
    jrows.push_back(e);
  }

  j["warnings"] = rep.warnings;

  auto& js = j["status"];
  js["failed"] = rep.failed;
  js["stage"] = rep.failed ? nlohmann::ordered_json(rep.failure_stage)
                           : nlohmann::ordered_json(nullptr);
  js["error"] = rep.failed ? nlohmann::ordered_json(rep.failure_error)
                           : nlohmann::ordered_json(nullptr);
  js["message"] = rep.failed ? nlohmann::ordered_json(rep.failure_message)
                             : nlohmann::ordered_json(nullptr);
  return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
  Report rep;
  const auto& jr = j.at("request");
  rep.spec_name = jr.at("spec").get<std::string>();
  rep.direction = jr.at("direction").get<std::string>();
  for (const auto& t : jr.at("targets"))
    rep.targets.emplace_back(t.at(0).get<long long>(), t.at(1).get<long long>());
  rep.oracle = jr.at("oracle").get<bool>();
  if (!jr.at("oracle_box").is_null())
    rep.oracle_box = {jr.at("oracle_box").at(0).get<int>(), jr.at("oracle_box").at(1).get<int>()};
  rep.precision_bits = jr.at("precision_bits").get<unsigned>();
  rep.minimality_grid = jr.at("minimality_grid").get<int>();
  rep.mode = jr.at("mode").get<std::string>();

  for (const auto& e : j.at("critical_points")) {
    ReportCriticalPoint cp;
    cp.term = e.at("term").get<int>();
    cp.p = e.at("p").get<std::string>();
    cp.q = e.at("q").get<std::string>();
    cp.smooth = e.at("smooth").get<bool>();
    cp.minimal = e.at("minimal").get<std::string>();
    rep.critical_points.push_back(cp);
  }
  if (!j.at("geometry").is_null()) {
    rep.has_geometry = true;
    rep.chi1 = j.at("geometry").at("chi1").get<double>();
    rep.chi2 = j.at("geometry").at("chi2").get<double>();
    rep.m = j.at("geometry").at("M").get<double>();
    rep.hx = j.at("geometry").at("hx").get<double>();
  }
  if (!j.at("expansion").is_null()) {
    const auto& je = j.at("expansion");
    rep.has_expansion = true;
    rep.alpha = je.at("alpha").get<double>();
    rep.beta = je.at("beta").get<unsigned>();
    rep.prefactor = je.at("prefactor").get<double>();
    for (const auto& c : je.at("corrections")) rep.corrections.push_back(c.get<double>());
    rep.p_value = je.at("p").get<std::string>();
    rep.q_value = je.at("q").get<std::string>();
  }
  for (const auto& e : j.at("rows")) {
    ReportRow row;
    row.r = e.at("r").get<long long>();
    row.s = e.at("s").get<long long>();
    row.estimate = detail::scaled_from_json(e.at("estimate"));
    if (!e.at("oracle").is_null()) {
      row.has_oracle = true;
      row.oracle = detail::scaled_from_json(e.at("oracle"));
    }
    if (!e.at("rel_error").is_null()) {
      row.has_rel_error = true;
      row.rel_error = e.at("rel_error").get<double>();
    }
    rep.rows.push_back(row);
  }
  for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
  const auto& js = j.at("status");
  rep.failed = js.at("failed").get<bool>();
  if (rep.failed) {
    rep.failure_stage = js.at("stage").get<std::string>();
    rep.failure_error = js.at("error").get<std::string>();
    rep.failure_message = js.at("message").get<std::string>();
  }
  return rep;
}

inline std::string emit(const Report& rep, EmitFormat format) {
  if (format == EmitFormat::Json) return report_to_json(rep).dump(2) + "\n";

  if (format == EmitFormat::Csv) {
    std::ostringstream out;
    out << "r,s,estimate_mantissa,estimate_exp10,oracle_mantissa,oracle_exp10,rel_error\n";
    for (const auto& row : rep.rows) {
      out << row.r << "," << row.s << ",";
      if (!row.estimate.is_zero())
        out << detail::format_double(row.estimate.mantissa) << "," << row.estimate.exp10;
      else
        out << "0,0";
      out << ",";
      if (row.has_oracle)
        out << detail::format_double(row.oracle.mantissa) << "," << row.oracle.exp10;
      else
        out << ",";
      out << ",";
      if (row.has_rel_error) out << detail::format_double(row.rel_error);
      out << "\n";
    }
    return out.str();
  }

  // table
  std::ostringstream out;
  out << "analysis: " << rep.spec_name << "   direction " << rep.direction << "   mode "
      << rep.mode << "\n";
  if (rep.failed) {
    out << "FAILED at stage '" << rep.failure_stage << "': [" << rep.failure_error << "] "
        << rep.failure_message << "\n";
  }
  if (!rep.critical_points.empty()) {
    out << "critical points:\n";
    for (const auto& cp : rep.critical_points)
      out << "  term " << cp.term << ": p = " << cp.p << ", q = " << cp.q
          << (cp.smooth ? "  [smooth]" : "  [NOT smooth]") << "  minimal: " << cp.minimal
          << "\n";
  }
  if (rep.dominant_term >= 0) out << "dominant term: " << rep.dominant_term << "\n";
  if (rep.has_geometry) {
    out << "geometry: chi1 = " << detail::format_double(rep.chi1)
        << ", chi2 = " << detail::format_double(rep.chi2)
        << ", M = " << detail::format_double(rep.m)
        << ", Hx = " << detail::format_double(rep.hx) << "\n";
  }
  if (rep.has_expansion) {
    out << "expansion: alpha = " << detail::format_double(rep.alpha) << ", beta = " << rep.beta
        << ", prefactor = " << detail::format_double(rep.prefactor) << "\n";
    if (!rep.corrections.empty()) {
      out << "  corrections:";
      for (double c : rep.corrections) out << " " << detail::format_double(c);
      out << "\n";
    }
  }
  if (!rep.rows.empty()) {
    out << "targets:\n";
    for (const auto& row : rep.rows) {
      out << "  [" << row.r << "," << row.s << "]  estimate ";
      if (row.estimate.is_zero())
        out << "0";
      else
        out << detail::format_double(row.estimate.mantissa) << "e" << row.estimate.exp10;
      if (row.has_oracle) {
        out << "   exact ";
        out << detail::format_double(row.oracle.mantissa) << "e" << row.oracle.exp10;
      }
      if (row.has_rel_error) out << "   rel-err " << detail::format_double(row.rel_error);
      out << "\n";
    }
  }
  if (!rep.warnings.empty()) {
    out << "warnings:\n";
    for (const auto& w : rep.warnings) out << "  - " << w << "\n";
  }
  out << (rep.failed ? "status: FAILED\n" : "status: ok\n");
  return out.str();
}

}  // namespace algolog
