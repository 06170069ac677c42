// gnls: solve, verify and sweep driver.
//
// Exit codes: 0 success, 1 verification property failed, 2 usage or
// configuration error, 3 solver error.

#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "gnls/calibration.hpp"
#include "gnls/verify.hpp"
#include "run_config.hpp"

namespace {

constexpr int kExitProperty = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int cmd_solve(const std::string& config_file) {
  using namespace gnls::app;
  RunConfig cfg;
  try {
    cfg = RunConfig::load(config_file);
    apply_environment(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const CaseResult result = run_case(cfg);
  nlohmann::json summary;
  try {
    summary = write_solve_artifacts(cfg, result);
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!result.ok) {
    std::cerr << "solver error [" << result.error_kind << "]: " << result.error << "\n";
    return kExitSolver;
  }
  std::cout << "verdict " << summary["verdict"].get<std::string>() << "  sigma " << result.sigma
            << "  max S/S0 " << result.max_S_over_S0 << "  samples " << result.records.size() << "\n"
            << "wrote " << cfg.output_dir.string() << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, unsigned long long seed, long long trials) {
  if (!gnls::is_suite(suite)) {
    std::cerr << "unknown suite '" << suite << "'\nusage: gnls verify --suite <name> [--seed N] [--trials N]\n"
              << "suites:";
    for (const auto& name : gnls::suite_names()) std::cerr << " " << name;
    std::cerr << "\n";
    return kExitConfig;
  }
  const std::size_t n = trials > 0 ? static_cast<std::size_t>(trials) : gnls::default_trials(suite);
  const gnls::SuiteReport report = gnls::run_suite(suite, seed, n);
  std::cout << report.to_json().dump(2) << "\n";
  return report.passed ? 0 : kExitProperty;
}

int cmd_sweep(const std::string& config_file, const std::string& axis, const std::string& values_csv,
              unsigned threads) {
  using namespace gnls::app;
  RunConfig cfg;
  std::vector<double> values;
  try {
    cfg = RunConfig::load(config_file);
    apply_environment(cfg);
    values = parse_values(values_csv);
    for (double v : values) with_axis(cfg, axis, v);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const SweepResult sweep = run_sweep(cfg, axis, values, threads);
  try {
    write_sweep_artifacts(cfg, axis, sweep);
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitConfig;
  }
  std::cout << sweep.csv;
  if (sweep.failures > 0) {
    std::cerr << sweep.failures << " of " << values.size() << " cases failed\n";
    return kExitSolver;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gevrey-class NLS solver and verification driver"};
  app.require_subcommand(1);

  std::string config_file;
  auto* solve = app.add_subcommand("solve", "Run one configuration and write artifacts");
  solve->add_option("--config", config_file, "JSON run configuration")->required();

  std::string suite;
  unsigned long long seed = gnls::calibration::kDefaultSeed;
  long long trials = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name")->required();
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--trials", trials, "Trial count (0 = suite default)");

  std::string axis;
  std::string values;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run one configuration per parameter value");
  sweep->add_option("--config", config_file, "JSON run configuration")->required();
  sweep->add_option("--axis", axis, "sigma, theta, T, p or amplitude")
      ->required()
      ->check(CLI::IsMember(gnls::app::sweep_axes()));
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*solve) return cmd_solve(config_file);
  if (*verify) return cmd_verify(suite, seed, trials);
  return cmd_sweep(config_file, axis, values, threads);
}
