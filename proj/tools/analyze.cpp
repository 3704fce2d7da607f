// Command-line front end: run the solve -> certify -> expand -> estimate
// pipeline on a spec file or a built-in example family and emit the report.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "algolog/pipeline.hpp"

namespace {

std::vector<std::pair<long long, long long>> parse_targets(const std::string& text) {
  std::vector<std::pair<long long, long long>> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--targets", "expected r:s pairs separated by commas");
    out.emplace_back(std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--targets", "no targets given");
  return out;
}

algolog::Direction parse_direction(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos)
    throw CLI::ValidationError("--direction", "expected R1/R2");
  return algolog::Direction(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotics of bivariate coefficient arrays with algebraic and "
               "logarithmic factors"};
  argv = app.ensure_utf8(argv);

  std::string spec_path, example, direction, targets, format = "table", out_path;
  long long ell = 0;
  unsigned m = 2, rpower = 1;
  int kmax = 5;
  bool oracle = false;
  std::string oracle_box;
  unsigned precision = 256;
  int grid = 64;

  auto* spec_opt = app.add_option("--spec", spec_path, "JSON spec file");
  auto* ex_opt = app.add_option("--example", example,
                                "built-in example: necklace | interlaced | narayana-log | "
                                "catalan-log");
  spec_opt->excludes(ex_opt);
  app.add_option("--ell", ell, "family parameter l (sets the default direction)");
  app.add_option("--m", m, "log power for catalan-log");
  app.add_option("--rpower", rpower, "log power for narayana-log");
  app.add_option("--kmax", kmax, "necklace terms used for critical-point analysis");
  app.add_option("--direction", direction, "direction R1/R2");
  app.add_option("--targets", targets, "comma-separated r:s pairs")->required();
  app.add_flag("--oracle", oracle, "compare against the exact coefficient oracle");
  app.add_option("--oracle-box", oracle_box, "oracle truncation box RX,SY");
  app.add_option("--precision", precision, "float precision in bits (default 256)");
  app.add_option("--grid", grid, "minimality grid size (default 64)");
  app.add_option("--format", format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", out_path, "write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    algolog::AnalysisRequest req;
    if (!example.empty()) {
      req = algolog::builtin_request(example, ell, m, rpower, kmax);
    } else if (!spec_path.empty()) {
      req.spec = algolog::parse_spec(spec_path);
      req.dir = algolog::Direction(1, 1);
    } else {
      std::cerr << "one of --spec or --example is required\n";
      return 2;
    }
    if (!direction.empty()) req.dir = parse_direction(direction);
    req.targets = parse_targets(targets);
    req.oracle = oracle;
    if (!oracle_box.empty()) {
      std::size_t comma = oracle_box.find(',');
      if (comma == std::string::npos) {
        std::cerr << "--oracle-box expects RX,SY\n";
        return 2;
      }
      req.oracle_box = {std::stoi(oracle_box.substr(0, comma)),
                        std::stoi(oracle_box.substr(comma + 1))};
    }
    req.precision_bits = precision;
    req.minimality_grid = grid;

    algolog::Report rep = algolog::run(req);
    algolog::EmitFormat fmt = format == "json"  ? algolog::EmitFormat::Json
                              : format == "csv" ? algolog::EmitFormat::Csv
                                                : algolog::EmitFormat::Table;
    std::string text = algolog::emit(rep, fmt);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot open output file '" << out_path << "'\n";
        return 2;
      }
      out << text;
    }
    return algolog::exit_code(rep);
  } catch (const algolog::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == algolog::Errc::parse_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
