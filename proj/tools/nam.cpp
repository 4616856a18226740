// Command-line front end: run scenarios, validate documents, enumerate measures.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nam/cli/scenario.hpp"

namespace {

std::vector<nam::Rational> parse_grid(const std::string& text) {
  std::vector<nam::Rational> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) grid.push_back(nam::parse_rational(item));
  return grid;
}

nam::Integer parse_cap(const std::string& text) {
  try {
    nam::Integer cap(text);
    if (cap <= 0) throw nam::InvalidArgument("cap must be positive");
    return cap;
  } catch (const std::invalid_argument&) {
    throw nam::InvalidArgument("cap must be a positive integer");
  }
}

int run_command(const std::string& scenario, const std::string& out, const std::string& csv, const std::string& cap) {
  const nam::cli::Report report = nam::cli::run_scenario_file(scenario, parse_cap(cap));
  const std::string text = nam::cli::serialize(report);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    f << text;
  }
  if (!csv.empty()) nam::cli::write_csv(report, csv);
  return report.exit_code;
}

int validate_command(const std::string& path) {
  try {
    const auto kind = nam::cli::validate_document(nam::cli::read_json_file(path));
    std::cout << path << ": valid " << kind << "\n";
    return 0;
  } catch (const nam::Error& e) {
    std::cerr << path << ": " << e.module() << "/" << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const nam::io::Json::exception& e) {
    std::cerr << path << ": cli/SchemaError: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact non-Archimedean measure toolkit"};
  app.require_subcommand(1);

  std::string scenario, out, csv, cap = "1000000";
  auto* run = app.add_subcommand("run", "Run a scenario and write its report");
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--out", out, "Report path (default: stdout)");
  run->add_option("--csv", csv, "Directory for CSV output");
  run->add_option("--cap", cap, "Upper bound on enumerated lattice points");

  std::string document;
  auto* validate = app.add_subcommand("validate", "Check a document against its schema");
  validate->add_option("file", document, "JSON document")->required();

  long p = 2, m = 1, s = 0;
  int n = 1;
  std::string grid = "0,1/2,1", mode = "real", oracle_cap = "1000000";
  bool probability_only = false;
  auto* oracle = app.add_subcommand("oracle", "Enumerate measures on the cells of Z_p^n as JSON lines");
  oracle->add_option("--p", p, "Prime")->required();
  oracle->add_option("--n", n, "Dimension")->required();
  oracle->add_option("--m", m, "Resolution")->required();
  oracle->add_option("--grid", grid, "Comma-separated weights, e.g. 0,1/2,1");
  oracle->add_option("--mode", mode, "real or sadic")->check(CLI::IsMember({"real", "sadic"}));
  oracle->add_option("--s", s, "Prime of the s-adic value field");
  oracle->add_option("--cap", oracle_cap, "Largest number of candidates");
  oracle->add_flag("--probability-only", probability_only, "Keep probability measures only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(scenario, out, csv, cap);
    if (*validate) return validate_command(document);
    if (*oracle) {
      nam::EnumerationSpec spec;
      spec.p = p;
      spec.n = n;
      spec.m = m;
      spec.grid = parse_grid(grid);
      spec.mode = mode == "real" ? nam::ValueMode::real() : nam::ValueMode::sadic(s);
      spec.probability_only = probability_only;
      spec.cap = parse_cap(oracle_cap);
      nam::MeasureEnumerator e(spec);
      while (auto mu = e.next()) std::cout << nam::io::measure_to_json(*mu).dump() << "\n";
      return 0;
    }
  } catch (const nam::Error& e) {
    std::cerr << e.module() << "/" << e.name() << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
