// Command-line front end: evolve / symmetry / validate / sweep over a JSON
// scenario document. Exit codes: 0 success, 1 internal error, 2 scenario
// problem (diagnostics on stderr, one per line), 3 tolerance failure.
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlgpe/runner.hpp"
#include "nlgpe/scenario.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nlgpe::ScenarioError({"document: cannot open '" + path + "'"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiclassical solver suite for the nonlocal Gross-Pitaevskii equation"};
  app.require_subcommand(1);

  std::string scenario_path;
  nlgpe::RunOptions opt;
  std::string axis;
  std::vector<double> values;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-s,--scenario", scenario_path, "scenario JSON file")->required();
    sub->add_option("-o,--out", opt.out_dir, "output directory (default: out)");
    sub->add_flag("-q,--quiet", opt.quiet, "suppress progress lines on stdout");
    sub->add_flag("--oracle-mode", opt.oracle_mode,
                  "re-check the effective potential by direct quadrature");
  };

  CLI::App* evolve = app.add_subcommand("evolve", "moment/action trajectories + field snapshots");
  CLI::App* symmetry = app.add_subcommand("symmetry", "operator branch construction and checks");
  CLI::App* validate = app.add_subcommand("validate", "assembled field vs split-step reference");
  CLI::App* sweep = app.add_subcommand("sweep", "evolve over a list of values for one field");
  add_common(evolve);
  add_common(symmetry);
  add_common(validate);
  add_common(sweep);
  sweep->add_option("--axis", axis, "dotted path of the numeric field to patch")->required();
  sweep->add_option("--values", values, "values for the axis")->required()->expected(-1);

  CLI11_PARSE(app, argc, argv);

  try {
    std::string text = read_text(scenario_path);
    if (sweep->parsed()) return nlgpe::run_sweep(text, axis, values, opt);
    nlgpe::Scenario sc = nlgpe::parse_scenario_text(text);
    if (evolve->parsed()) return nlgpe::run_evolve(sc, opt);
    if (symmetry->parsed()) return nlgpe::run_symmetry(sc, opt);
    return nlgpe::run_validate(sc, opt);
  } catch (const nlgpe::ScenarioError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "scenario error: " << d << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
