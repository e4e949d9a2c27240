// liecr: build and verify invariant CR / nacs structures on compact Lie algebras.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "liecr/acceptance.hpp"
#include "liecr/pipeline.hpp"

namespace {

liecr::Complex complex_flag(const std::string& raw, const char* name) {
  try {
    return liecr::parse_complex(raw);
  } catch (const liecr::ArgumentError& e) {
    throw CLI::ValidationError(name, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant and non-invariant CR structures on compact Lie groups"};
  app.require_subcommand(1);

  liecr::PipelineConfig cfg;
  std::string format = "text";
  std::string tol_flag;
  bool all_checks = false;
  std::string a_flag = "0";
  std::string b_flag = "1";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--tolerance", tol_flag, "Rank tolerance (overrides LIECR_TOLERANCE)");
    sub->add_option("--seed", cfg.seed, "Seed for randomized sweeps");
    sub->add_flag("--timing", cfg.timing, "Include wall time in the report");
  };

  auto* describe = app.add_subcommand("describe", "Dimension, rank, roots and Borel data of an algebra");
  describe->add_option("algebra", cfg.algebra, "Built-in name (su2, su(3), so3, u1) or JSON file")->required();
  common(describe);

  auto* build = app.add_subcommand("build", "Check the transversality conditions and build the invariant pair");
  build->add_option("algebra", cfg.algebra, "Built-in name or JSON file")->required();
  auto* m_inline = build->add_option("--M", cfg.morphism, "Inline matrix, row-major [[re,im],...]");
  auto* m_file = build->add_option("--morphism", cfg.morphism, "Morphism JSON file");
  m_inline->excludes(m_file);
  build->add_option("--check", cfg.checks, "Checks to run: conditions, oracle, cr, nacs, solvable, borel");
  build->add_flag("--all", all_checks, "Run every applicable check (default)");
  common(build);

  auto* action = app.add_subcommand("su2-action", "Condition IV and invariance for the SU(2) model");
  action->add_option("--a", a_flag, "Complex parameter a (re, re+imi, [re,im])");
  action->add_option("--b", b_flag, "Complex parameter b");
  action->add_option("--radii", cfg.radii, "Sphere radii")->check(CLI::PositiveNumber);
  action->add_option("--samples", cfg.samples, "Points per sphere")
      ->check(CLI::Range(liecr::geom::kMinSamples, 1 << 20));
  common(action);

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--seed", cfg.seed, "Seed for randomized sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return liecr::kExitInput;
  }

  if (selftest->parsed()) {
    return liecr::acceptance::run_all(std::cout, cfg.seed) ? liecr::kExitPass : liecr::kExitFail;
  }

  try {
    liecr::apply_tolerance_from_env();
    cfg.tolerance = tol_flag.empty() ? liecr::tolerance() : std::stod(tol_flag);
    if (action->parsed()) {
      cfg.a = complex_flag(a_flag, "--a");
      cfg.b = complex_flag(b_flag, "--b");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return liecr::kExitInput;
  }
  if (all_checks) cfg.checks.clear();
  cfg.output = format == "json" ? liecr::OutputFormat::json : liecr::OutputFormat::text;
  cfg.command = describe->parsed() ? "describe" : build->parsed() ? "build" : "su2-action";

  const liecr::RunReport report = liecr::run_pipeline(cfg);
  std::cout << liecr::render(report, cfg.output);
  if (report.exit_code == liecr::kExitInput && cfg.output == liecr::OutputFormat::json) {
    std::cerr << "error: " << report.error << "\n";
  }
  return report.exit_code;
}
