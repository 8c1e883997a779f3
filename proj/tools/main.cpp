#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hsm/error.hpp"
#include "hsm/schur.hpp"
#include "jobs.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kAssertion = 1, kInput = 2, kConvergence = 3 };

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw hsm::ParseError("cannot open output file: " + out);
  f << text;
  if (!f) throw hsm::ParseError("failed writing output file: " + out);
}

}  // namespace

int main(int argc, char** argv) {
  using hsm::cli::JobConfig;
  CLI::App app{"Herz-Schur multiplier norms, hereditary transforms and verification suites"};
  app.set_version_flag("--version", hsm::cli::kVersion);
  app.require_subcommand(0, 1);
  app.fallthrough();

  JobConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON job config; its keys override flags")->check(CLI::ExistingFile);
  app.add_option("--tol", cfg.tolerance, "target tolerance in (0, 1e-2]");
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* schur = app.add_subcommand("schur-norm", "Schur multiplier norm of a matrix");
  schur->add_option("--matrix", cfg.matrix, "matrix file (.txt or .csv)");
  schur->add_flag("--factors", cfg.factors, "include the factorization P, Q");
  for (const char* name : {"b2-norm", "fourier-norm", "q-norm"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of a multiplier");
    sub->add_option("--multiplier", cfg.multiplier, "multiplier spec file");
    if (std::string(name) == "b2-norm") sub->add_flag("--factors", cfg.factors, "include the factorization");
  }
  auto* pipeline = app.add_subcommand("transform-pipeline", "apply transforms listed in the config 'steps'");
  pipeline->add_option("--multiplier", cfg.multiplier, "starting multiplier spec file");
  auto* suite = app.add_subcommand("verify-suite", "run verification suites");
  suite->add_option("--suite", cfg.suite, "suite name or 'all'");
  suite->add_option("--instances", cfg.instances, "random instances per inequality")->check(CLI::PositiveNumber);
  auto* cutoff = app.add_subcommand("cutoff", "cutoff surrogate on a word-length window");
  cutoff->add_option("--window", cfg.window, "window expression or group file");
  cutoff->add_option("--inner", cfg.inner_radius, "radius where u = 1");
  cutoff->add_option("--outer", cfg.outer_radius, "radius outside of which u = 0");
  auto* vn = app.add_subcommand("vn-check", "group von Neumann algebra checks");
  vn->add_option("--group", cfg.group, "group expression or file");
  vn->add_option("--multiplier", cfg.multiplier, "multiplier spec file (random if omitted)");
  app.add_subcommand("list-suites", "list verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kInput);
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.kind = sub->get_name();
    if (!config_path.empty()) {
      json j;
      try {
        std::ifstream in(config_path);
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw hsm::ParseError("invalid JSON in " + config_path + ": " + e.what());
      }
      hsm::cli::apply_config(cfg, j, std::filesystem::path(config_path).parent_path());
    }
    if (cfg.kind.empty()) return fail("usage", "no job given: use a subcommand or a config with \"job\"", kInput);
    const auto result = hsm::cli::run(cfg);
    write_output(hsm::cli::render(result, cfg.format), cfg.out);
    return result.pass ? kOk : kAssertion;
  } catch (const hsm::ParseError& e) {
    return fail("parse", e.what(), kInput);
  } catch (const hsm::ValidationError& e) {
    return fail("validation", e.what(), kInput);
  } catch (const hsm::UnsupportedError& e) {
    return fail("unsupported", e.what(), kInput);
  } catch (const hsm::SchurSolverError& e) {
    return fail("convergence", std::string(e.what()) + " (best value " + std::to_string(e.partial().value) + ")",
                kConvergence);
  } catch (const hsm::ConvergenceError& e) {
    return fail("convergence", e.what(), kConvergence);
  } catch (const hsm::Error& e) {
    return fail("error", e.what(), kInput);
  }
}
