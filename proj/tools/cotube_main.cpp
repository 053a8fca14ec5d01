// Command-line front end: analyze / tube-eval / verify / simulate over a
// TOML problem spec, emitting JSON reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or spec error.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>

#include "cotube/problem_spec.hpp"
#include "cotube/report.hpp"
#include "cotube/verify.hpp"

namespace {

cotube::ProblemSpec load_spec_or_exit(const std::string& path) {
  const cotube::SpecParseResult res = cotube::parse_spec(path);
  if (!res.ok) {
    std::cerr << "spec error(s) in " << path << ":\n";
    for (const auto& e : res.errors) std::cerr << "  - " << e << "\n";
    std::exit(2);
  }
  return res.spec;
}

int emit(const cotube::Json& report, const std::string& out_path) {
  cotube::write_report(report, out_path);
  return cotube::all_checks_passed(report) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local normal-form data and symplectic tubes for cotangent-lifted actions"};
  app.require_subcommand(1);

  std::string spec_path, out_path = "-", point_json;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = 0;
  double tol = 0.0, fd_step = 0.0, dt = 0.0;
  int steps = 0;

  auto* analyze = app.add_subcommand("analyze", "Chart, slice, and normal-form summary");
  analyze->add_option("--spec", spec_path, "Problem spec (TOML)")->required();
  analyze->add_option("--out", out_path, "Output file (default stdout)");

  auto* tube_eval = app.add_subcommand("tube-eval", "Evaluate the symplectic tube at a point");
  tube_eval->add_option("--spec", spec_path, "Problem spec (TOML)")->required();
  tube_eval->add_option("--point", point_json,
                        "Model point JSON: {\"g_exp\": [...], \"nu\": [...], \"a\": [...], "
                        "\"delta\": [...]}")
      ->required();
  tube_eval->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run every applicable invariant suite");
  verify->add_option("--spec", spec_path, "Problem spec (TOML)")->required();
  verify->add_option("--seed", seed, "Override the spec seed")->each([&](const std::string&) {
    seed_set = true;
  });
  verify->add_option("--samples", samples, "Override the sample count");
  verify->add_option("--tol", tol, "Override the exact-check tolerance");
  verify->add_option("--fd-step", fd_step, "Override the finite-difference step");
  verify->add_option("--out", out_path, "Output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Integrate the bundle equations and compare");
  simulate->add_option("--spec", spec_path, "Problem spec (TOML)")->required();
  simulate->add_option("--dt", dt, "Time step");
  simulate->add_option("--steps", steps, "Step count");
  simulate->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cotube::ProblemSpec spec = load_spec_or_exit(spec_path);
    if (analyze->parsed()) return emit(cotube::run_analyze(spec), out_path);
    if (tube_eval->parsed()) {
      cotube::Json point;
      try {
        point = cotube::Json::parse(point_json);
      } catch (const std::exception& e) {
        std::cerr << "cannot parse --point JSON: " << e.what() << "\n";
        return 2;
      }
      return emit(cotube::run_tube_eval(spec, point), out_path);
    }
    if (verify->parsed()) {
      if (seed_set) spec.options.seed = seed;
      if (samples > 0) spec.options.samples = samples;
      if (tol > 0.0) spec.options.tol_exact = tol;
      if (fd_step > 0.0) spec.options.fd_step = fd_step;
      return emit(cotube::run_verify(spec), out_path);
    }
    if (simulate->parsed()) {
      if (dt > 0.0) spec.options.dt = dt;
      if (steps > 0) spec.options.steps = steps;
      return emit(cotube::run_simulate(spec), out_path);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
