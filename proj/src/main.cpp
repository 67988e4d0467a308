#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "riccilab/report.hpp"

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"verification laboratory for perfect-fluid spacetimes with a "
               "torse-forming reference field"};
  app.name("riccilab");

  std::string command, file, out_path;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  bool json_out = false;

  app.add_option("command", command,
                 "validate | curvature | fluid | torse | identities | classify | "
                 "soliton | report")
      ->required();
  app.add_option("file", file, "scenario file")->required();
  auto* out_opt = app.add_option("--out", out_path, "write the JSON report to this path");
  auto* tol_opt =
      app.add_option("--tolerance", tolerance, "override the scenario tolerance");
  auto* seed_opt =
      app.add_option("--seed", seed, "override the random-point seed");
  app.add_flag("--json", json_out, "print the JSON report instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is an input error
  }

  try {
    const auto cmd = riccilab::report::parse_command(command);
    riccilab::scenario::Overrides ov;
    if (tol_opt->count() > 0) ov.tolerance = tolerance;
    if (seed_opt->count() > 0) ov.seed = seed;
    const auto scn = riccilab::scenario::load_file(file, ov);
    const auto rep = riccilab::report::run(scn, cmd);

    const std::string json = riccilab::report::render_json(rep);
    if (json_out)
      std::cout << json;
    else
      std::cout << riccilab::report::render_text(rep);
    if (out_opt->count() > 0) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return 2;
      }
      out << json;
    }
    return rep.overall_pass ? 0 : 1;
  } catch (const riccilab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
