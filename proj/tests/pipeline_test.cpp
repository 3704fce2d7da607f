#include "helpers.hpp"

#include <cstdio>
#include <fstream>

#include "algolog/pipeline.hpp"

using namespace algolog;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("spec file parsing") {
  auto path = write_temp("spec_ok.json", R"({
    "name": "demo",
    "terms": [{"weight": "-1", "H": "1 - x - y", "alpha": "0", "beta": 1}]
  })");
  GFSpec spec = parse_spec(path);
  CHECK(spec.name == "demo");
  REQUIRE(spec.terms.size() == 1);
  CHECK(spec.terms[0].weight == -1);
  CHECK(spec.terms[0].h == parse_bipoly("1 - x - y"));
  CHECK(spec.terms[0].alpha == 0);
  CHECK(spec.terms[0].beta == 1);

  auto missing = write_temp("spec_missing.json", R"({
    "terms": [{"weight": "1", "H": "1 - x - y", "alpha": "0"}]
  })");
  try {
    parse_spec(missing);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
  }

  auto frac = write_temp("spec_frac.json", R"({
    "terms": [{"weight": "1/2", "H": "1 - x", "alpha": "1", "beta": 0}]
  })");
  CHECK(parse_spec(frac).terms[0].weight == Rational(1, 2));
}

TEST_CASE("interlaced pipeline: errors shrink along the diagonal") {
  auto req = builtin_request("interlaced", 1);
  req.targets = {{10, 10}, {20, 20}, {40, 40}};
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    CHECK(row.has_oracle);
    CHECK(row.has_rel_error);
  }
  CHECK(rep.rows[0].rel_error > rep.rows[1].rel_error);
  CHECK(rep.rows[1].rel_error > rep.rows[2].rel_error);
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("designed smoothness failure names the point") {
  GFSpec spec;
  spec.name = "product-singularity";
  spec.terms.push_back({Rational(1), parse_bipoly("(1 - x)(1 - y)"), Rational(1), 0});
  AnalysisRequest req;
  req.spec = spec;
  req.dir = Direction(1, 1);
  req.targets = {{10, 10}};
  Report rep = run(req);
  CHECK(rep.failed);
  CHECK(rep.failure_stage == "smoothness");
  CHECK(rep.failure_error == "HypothesisFailure");
  CHECK(rep.failure_message.find("(1, 1)") != std::string::npos);
  CHECK(exit_code(rep) == 1);
}

TEST_CASE("tied growth is reported as a failure") {
  GFSpec spec;
  spec.name = "tied";
  BiPoly h = parse_bipoly("1 - x - y");
  spec.terms.push_back({Rational(1), h, Rational(0), 1});
  spec.terms.push_back({Rational(1), h, Rational(0), 1});
  AnalysisRequest req;
  req.spec = spec;
  req.dir = Direction(1, 1);
  req.targets = {{10, 10}};
  Report rep = run(req);
  CHECK(rep.failed);
  CHECK(rep.failure_error == "TiedGrowth");
  CHECK(exit_code(rep) == 1);
}

TEST_CASE("report emission round trips and is deterministic") {
  auto req = builtin_request("interlaced", 1);
  req.targets = {{10, 10}, {20, 20}};
  req.oracle = true;
  Report rep = run(req);

  std::string json_text = emit(rep, EmitFormat::Json);
  auto parsed = nlohmann::ordered_json::parse(json_text);
  Report round = report_from_json(parsed);
  CHECK(emit(round, EmitFormat::Json) == json_text);

  Report rep2 = run(req);
  CHECK(emit(rep2, EmitFormat::Json) == json_text);
  CHECK(emit(rep2, EmitFormat::Csv) == emit(rep, EmitFormat::Csv));

  // fixed key order
  auto it = parsed.begin();
  CHECK(it.key() == "request");
  ++it;
  CHECK(it.key() == "critical_points");
  ++it;
  CHECK(it.key() == "geometry");
  ++it;
  CHECK(it.key() == "expansion");
  ++it;
  CHECK(it.key() == "rows");
  ++it;
  CHECK(it.key() == "warnings");
}

TEST_CASE("csv rows with and without the oracle") {
  auto req = builtin_request("interlaced", 1);
  req.targets = {{10, 10}};
  Report rep = run(req);
  std::string csv = emit(rep, EmitFormat::Csv);
  CHECK(csv.find("r,s,estimate_mantissa,estimate_exp10,oracle_mantissa,oracle_exp10,rel_error") !=
        std::string::npos);
  CHECK(csv.find("10,10,") != std::string::npos);
  // empty oracle columns
  CHECK(csv.find(",,,\n") != std::string::npos);

  req.oracle = true;
  Report rep2 = run(req);
  std::string csv2 = emit(rep2, EmitFormat::Csv);
  CHECK(csv2.find(",,,\n") == std::string::npos);
}

TEST_CASE("estimates are reproducible from the recorded parameters alone") {
  PrecisionGuard guard(256);
  auto req = builtin_request("necklace", 3);
  req.targets = {{75, 25}};
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  REQUIRE(rep.has_expansion);

  // rebuild from the report fields only
  BigFloat p(rep.p_value), q(rep.q_value);
  long long r = rep.rows[0].r, s = rep.rows[0].s;
  BigFloat ln_r = log(BigFloat(r));
  BigFloat ln_mag;
  if (rep.alpha == 0.0) {
    ln_mag = log(abs(BigFloat(rep.prefactor))) - BigFloat(1.5) * ln_r - r * log(p) - s * log(q);
    if (rep.beta >= 1) ln_mag += BigFloat(static_cast<int>(rep.beta) - 1) * log(ln_r);
  } else {
    BigFloat bracket = 1;
    BigFloat lp = 1;
    for (double c : rep.corrections) {
      lp *= ln_r;
      bracket += BigFloat(c) / lp;
    }
    ln_mag = log(abs(BigFloat(rep.prefactor))) + (BigFloat(rep.alpha) - 1.5) * ln_r -
             r * log(p) - s * log(q) + BigFloat(rep.beta) * log(ln_r) + log(abs(bracket));
  }
  BigFloat log10_mag = ln_mag / log(BigFloat(10));
  Scaled rebuilt = scaled_from_log10(rep.prefactor < 0 ? -1 : 1, log10_mag);
  CHECK(rebuilt.exp10 == rep.rows[0].estimate.exp10);
  CHECK(std::abs(rebuilt.mantissa - rep.rows[0].estimate.mantissa) <
        1e-12 * std::abs(rep.rows[0].estimate.mantissa));
}

TEST_CASE("direction rounding is declared") {
  auto req = builtin_request("necklace", 3);
  req.targets = {{10, 3}};  // 10/3 rounds to 3
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  bool noted = false;
  for (const auto& w : rep.warnings)
    if (w.find("rounding") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("oracle box override can exclude targets") {
  auto req = builtin_request("interlaced", 1);
  req.targets = {{10, 10}, {20, 20}};
  req.oracle = true;
  req.oracle_box = std::make_pair(12, 12);
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  CHECK(rep.rows[0].has_oracle);
  CHECK_FALSE(rep.rows[1].has_oracle);
  bool warned = false;
  for (const auto& w : rep.warnings)
    if (w.find("does not cover") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("narayana-log builtin runs the read-off estimate") {
  auto req = builtin_request("narayana-log", 2, 2, 1);
  req.targets = {{40, 20}};
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  CHECK(rep.mode == "algebraic-readoff");
  CHECK(rep.rows[0].has_rel_error);
  CHECK(rep.rows[0].rel_error < 0.05);
  bool noted = false;
  for (const auto& w : rep.warnings)
    if (w.find("read-off") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("catalan-log builtin uses the univariate scale") {
  auto req = builtin_request("catalan-log", 0, 2);
  req.targets = {{200, 0}};
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  CHECK(rep.mode == "univariate-scale");
  CHECK(rep.rows[0].has_rel_error);
  CHECK(rep.rows[0].rel_error < 0.05);
}

TEST_CASE("off-diagonal direction end to end") {
  auto req = builtin_request("interlaced", 2);  // direction (1, 2)
  req.targets = {{10, 20}, {20, 40}};
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  CHECK(rep.rows[0].rel_error < 0.02);
  CHECK(rep.rows[1].rel_error < rep.rows[0].rel_error);
}

TEST_CASE("narayana-log generalizes across the direction parameter") {
  auto req = builtin_request("narayana-log", 3, 2, 1);
  req.targets = {{60, 20}};
  req.oracle = true;
  Report rep = run(req);
  REQUIRE_FALSE(rep.failed);
  CHECK(rep.rows[0].has_rel_error);
  CHECK(rep.rows[0].rel_error < 0.05);
}

TEST_CASE("invalid requests fail cleanly") {
  AnalysisRequest req;
  req.spec = interlaced_spec();
  Report rep = run(req);  // no targets
  CHECK(rep.failed);
  CHECK(rep.failure_stage == "request");
  CHECK(exit_code(rep) == 1);
}
