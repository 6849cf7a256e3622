// verlinde: command-line driver for Verlinde-number computations.
//
//   verlinde compute --n N --d D --g G --k K [--weights FILE]
//                    [--method sum|residue|both] [--backend exact|float]
//                    [--out json|csv] [--sweep K1,K2,...]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "verlinde/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw verlinde::ValidationError("cannot open weight file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verlinde numbers of moduli spaces of (parabolic) SU(n) bundles"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "Compute one job or a sweep over levels");
  verlinde::JobConfig config;
  std::string weights_file, method = "both", backend = "exact", out = "json";
  std::vector<long> sweep;
  compute->add_option("--n", config.n, "rank of SU(n)")->required();
  compute->add_option("--d", config.d, "degree, coprime to n")->required();
  compute->add_option("--g", config.g, "genus (>= 2)")->required();
  compute->add_option("--k", config.k, "level, divisible by n")->required();
  compute->add_option("--weights", weights_file, "JSON file: array of integer arrays (fundamental coordinates)");
  compute->add_option("--method", method, "sum, residue or both")->check(CLI::IsMember({"sum", "residue", "both"}));
  compute->add_option("--backend", backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  compute->add_option("--out", out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* sweep_opt = compute->add_option("--sweep", sweep, "comma-separated levels replacing --k")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : verlinde::kExitValidation;
  }

  try {
    config.method = verlinde::parse_method(method);
    config.backend = verlinde::parse_backend(backend);
    config.output = verlinde::parse_output(out);
    if (!weights_file.empty()) config.weights = verlinde::parse_weights_json(read_file(weights_file));
    if (sweep_opt->count() > 0) config.sweep = sweep;
  } catch (const verlinde::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return verlinde::kExitValidation;
  }

  const verlinde::Report report = verlinde::run(config);
  if (config.output == verlinde::OutputFormat::Json)
    std::cout << verlinde::to_json(report).dump(2) << '\n';
  else
    std::cout << verlinde::to_csv(report);
  for (const auto& job : report.jobs)
    for (const auto& err : job.errors) std::cerr << "k=" << job.k << ": " << err << '\n';
  return report.exit_code();
}
