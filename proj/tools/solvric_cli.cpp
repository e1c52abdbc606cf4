#include <iostream>

#include <CLI11.hpp>

#include "solvric/commands.hpp"

int main(int argc, char** argv) {
  using namespace solvric;
  CLI::App app{"solvric: Ricci curvature of metric solvable Lie algebras"};
  app.require_subcommand(1);
  CommandOptions opt;
  std::string format = "text";
  app.add_option("--tol", opt.tol, "definiteness / certification tolerance (default: 1e-9 (1 + ||Ric||))");
  app.add_option("--seed", opt.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--budget", opt.budget, "optimizer evaluation budget")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--restarts", opt.restarts, "optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
  app.add_option("--smax", opt.smax, "pullback search bound on s")->capture_default_str()->check(CLI::PositiveNumber);

  std::string alg, metric;
  auto* check = app.add_subcommand("check", "structure report: solvability, nilradical, class");
  check->add_option("algebra", alg, "algebra file or catalog name")->required();
  auto* ricci = app.add_subcommand("ricci", "Ricci operator for a metric (identity if omitted)");
  ricci->add_option("algebra", alg, "algebra file or catalog name")->required();
  ricci->add_option("metric", metric, "metric file");
  auto* decide = app.add_subcommand("decide", "does a Ricci-negative inner product exist?");
  decide->add_option("algebra", alg, "algebra file or catalog name")->required();
  auto* construct = app.add_subcommand("construct", "build and certify a Ricci-negative metric");
  construct->add_option("algebra", alg, "algebra file or catalog name")->required();
  construct->add_option("-o,--out", opt.out_path, "certificate output file");
  auto* optimize = app.add_subcommand("optimize", "numerical search for a Ricci-negative metric");
  optimize->add_option("algebra", alg, "algebra file or catalog name")->required();
  optimize->add_option("-o,--out", opt.out_path, "certificate output file");
  auto* catalog = app.add_subcommand("catalog", "list the built-in examples");
  auto* selftest = app.add_subcommand("selftest", "run every catalog example through the pipeline");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::kInputError;
  }
  opt.structured = format == "structured";

  CommandResult res = run_guarded(
      [&]() -> CommandResult {
        if (*check) return cmd_check(alg, opt);
        if (*ricci) return cmd_ricci(alg, metric, opt);
        if (*decide) return cmd_decide(alg, opt);
        if (*construct) return cmd_construct(alg, opt);
        if (*optimize) return cmd_optimize(alg, opt);
        if (*catalog) return cmd_catalog(opt);
        if (*selftest) return cmd_selftest(opt);
        return {exit_code::kInputError, "no command\n"};
      },
      opt);
  (res.exit_code == exit_code::kInputError ? std::cerr : std::cout) << res.output;
  return res.exit_code;
}
