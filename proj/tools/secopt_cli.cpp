#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "secopt/errors.hpp"
#include "secopt/experiments.hpp"
#include "secopt/json_io.hpp"
#include "secopt/version.hpp"

namespace fs = std::filesystem;
using namespace secopt;
using namespace secopt::experiments;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SchemaError("<file>", "cannot open " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw SchemaError("<root>", std::string("malformed JSON: ") + e.what());
  }
}

int cmd_solve(const std::string& path, const std::string& scheme_name,
              const std::string& objective) {
  const auto scheme = parse_scheme(scheme_name);
  const auto metric = parse_metric(objective);
  const Scenario sc = scenario_from_json(read_json(path));
  try {
    Json out = solution_to_json(solve_scheme(*scheme, *metric, sc));
    out["scheme"] = scheme_name;
    out["objective"] = objective;
    std::cout << out.dump(2) << "\n";
    return kOk;
  } catch (const InfeasibleError& e) {
    std::cout << Json{{"status", "infeasible"},
                      {"scheme", scheme_name},
                      {"objective", objective},
                      {"reason", e.what()}}
                     .dump(2)
              << "\n";
    return kInfeasible;
  }
}

int cmd_validate(const std::string& path) {
  const Scenario sc = scenario_from_json(read_json(path));
  std::cout << Json{{"status", "ok"},
                    {"n_relays", sc.n_relays()},
                    {"n_eaves", sc.n_eaves()},
                    {"p0", sc.p0},
                    {"p0_min", sc.p0_min}}
                   .dump(2)
            << "\n";
  return kOk;
}

int cmd_sweep(const std::string& config, const std::string& out_dir, int trials,
              std::optional<std::uint64_t> seed, bool svg) {
  SweepSpec spec = sweep_from_json(read_json(config));
  if (trials > 0) spec.trials = trials;
  if (seed) spec.los.seed = *seed;
  spec.validate();
  if (spec.name.empty()) spec.name = fs::path(config).stem().string();

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    std::cerr << "error: cannot create output directory " << out_dir << "\n";
    return kInputError;
  }

  const SweepResult r = run_sweep(spec);
  for (const auto& f : r.failures) {
    std::cerr << "warning: " << to_string(f.scheme) << " failed at axis=" << f.axis_value
              << " trial=" << f.trial << ": " << f.what << "\n";
  }
  std::vector<std::string> outputs;
  const fs::path csv = fs::path(out_dir) / (spec.name + ".csv");
  write_file_atomic(csv, to_csv(r));
  outputs.push_back(csv.string());
  if (svg) {
    const fs::path p = fs::path(out_dir) / (spec.name + ".svg");
    write_file_atomic(p, to_svg(r));
    outputs.push_back(p.string());
  }
  const fs::path manifest = fs::path(out_dir) / (spec.name + ".manifest.json");
  outputs.push_back(manifest.string());
  write_file_atomic(manifest, run_manifest(spec, outputs, utc_timestamp()).dump(2) + "\n");
  for (const auto& o : outputs) std::cout << o << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate and transmit-power optimization for relay networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string scenario, scheme, objective = "max-rate";
  auto* solve = app.add_subcommand("solve", "Solve one scenario and print the solution as JSON");
  solve->add_option("--scenario", scenario, "Scenario JSON file")->required();
  solve->add_option("--scheme", scheme, "df, cj, df-multi, df-sub, cj-sub or direct")
      ->required()
      ->check(CLI::IsMember({"df", "cj", "df-multi", "df-sub", "cj-sub", "direct"}));
  solve->add_option("--objective", objective, "max-rate or min-power")
      ->check(CLI::IsMember({"max-rate", "min-power"}));

  std::string config, out_dir;
  int trials = 0;
  std::optional<std::uint64_t> seed;
  bool svg = false;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV/SVG/manifest");
  sweep->add_option("--config", config, "Sweep configuration JSON")->required();
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--trials", trials, "Override the trial count")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "Override the channel seed");
  sweep->add_flag("--svg", svg, "Also write an SVG plot");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--scenario", validate_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInputError;
  }

  try {
    if (*solve) return cmd_solve(scenario, scheme, objective);
    if (*sweep) return cmd_sweep(config, out_dir, trials, seed, svg);
    return cmd_validate(validate_path);
  } catch (const SchemaError& e) {
    std::cerr << Json{{"error", "schema"}, {"field", e.field()}, {"message", e.what()}}.dump()
              << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
