#include <CLI11.hpp>
#include <iostream>

#include "torlog/cli.hpp"

int main(int argc, char** argv) {
  using namespace torlog::cli;

  CLI::App app{"torlog: exact computations with affine semigroups, combinatorial modules, "
               "Tor obstructions and log regularity"};
  app.require_subcommand(1);

  SessionSpec spec;
  std::string bound_str = "10";
  std::string format_str = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("input", spec.input_path, "input description file")->required();
    sub->add_option("--bound", bound_str, "weight bound for degree scans (default 10)");
    sub->add_option("--format", format_str, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--jobs", spec.jobs, "worker threads for the prime scan");
    sub->add_option("--seed", spec.seed, "seed reserved for randomized property commands");
    sub->add_option("--monoid", spec.monoid_name, "monoid name (default: first in the file)");
    return sub;
  };

  auto* info = add_common(app.add_subcommand("info", "summary invariants of the monoid"));
  auto* saturate = add_common(app.add_subcommand("saturate", "saturation generators"));
  auto* faces = add_common(app.add_subcommand("faces", "face lattice and prime spectrum"));
  auto* embed = add_common(app.add_subcommand("embed", "flag embedding into N^d"));
  embed->add_option("--flag", spec.flag_name, "flag name (default: computed complete flag)");
  auto* filtration =
      add_common(app.add_subcommand("filtration", "prime filtration of a module"));
  filtration->add_option("--module", spec.module_name, "module name (default: first)");
  auto* tflat = add_common(app.add_subcommand("tflat", "t-flatness verdict for a module"));
  tflat->add_option("--module", spec.module_name, "module name (default: first)");
  tflat->add_flag("--expect-tflat", spec.expect_tflat,
                  "exit with status 1 when the module is not t-flat");
  auto* report = add_common(app.add_subcommand("report", "log regularity report"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are reported as errors
  }

  try {
    spec.bound = torlog::Int(bound_str);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: --bound expects an integer\n";
    return 2;
  }
  if (spec.bound < 1) {
    std::cerr << "error: --bound must be at least 1\n";
    return 2;
  }
  spec.format = format_str == "json" ? OutputFormat::json : OutputFormat::text;

  if (info->parsed()) spec.command = Command::info;
  if (saturate->parsed()) spec.command = Command::saturate;
  if (faces->parsed()) spec.command = Command::faces;
  if (embed->parsed()) spec.command = Command::embed;
  if (filtration->parsed()) spec.command = Command::filtration;
  if (tflat->parsed()) spec.command = Command::tflat;
  if (report->parsed()) spec.command = Command::report;

  RunResult res = run(spec);
  if (!res.output.empty()) std::cout << res.output;
  if (!res.error.empty()) std::cerr << "error: " << res.error << "\n";
  return res.exit_code;
}
