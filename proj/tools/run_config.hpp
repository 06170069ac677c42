#pragma once

// Experiment configuration and the solve / sweep drivers behind the CLI.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnls/diagnostics.hpp"
#include "gnls/gevrey.hpp"
#include "gnls/solver.hpp"
#include "gnls/spectral.hpp"

namespace gnls::app {

inline constexpr const char* kOutputDirEnv = "GNLS_OUTPUT_DIR";

/// Names the offending field, e.g. "solver.p: must be an odd integer >= 3".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Method { picard, splitstep };

struct RunConfig {
  InitialDataSpec initial_data = InitialDataSpec::make(InitialDataKind::sech);
  GridSpec grid;
  SolverConfig solver;
  Method method = Method::picard;
  /// gevrey.sigma; empty means "budget": use the consistent bootstrap sigma.
  std::optional<double> sigma;
  double s = 1.0;
  BootstrapParams bootstrap;
  std::filesystem::path output_dir = "gnls_out";
  unsigned long long seed = 0;
  /// Number of trajectory snapshots written by solve (0 disables them).
  int snapshots = 5;
  /// False when the constant comes from the frozen calibration.
  bool explicit_contraction = false;
  bool explicit_C_boot = false;

  /// Throws ConfigError. Does not touch the filesystem.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& file);
  nlohmann::json to_json() const;
  void validate() const;
  /// Refreshes calibrated defaults after p or theta changed.
  void resolve_defaults();
};

/// Applies the output-directory environment override, if set.
void apply_environment(RunConfig& cfg);

struct CaseResult {
  bool ok = false;
  std::string error;       // solver error message when !ok
  std::string error_kind;  // SolverError kind name, or "error"
  double sigma = 0.0;
  double sigma_budget = 0.0;     // consistent bootstrap sigma
  double bootstrap_sigma = 0.0;  // formula with S0 = S at sigma = 0
  double sigma_final = 0.0;      // 0.99 min(sigma_est(f), budget at theta = 1/(1+eps))
  double S0 = 0.0;
  double S_final = 0.0;
  double max_S_over_S0 = 0.0;
  bool c_holds = false;
  bool h_holds = false;
  std::optional<double> first_c_failure;
  std::optional<double> first_h_failure;
  double min_sestimate_margin = 0.0;
  std::optional<double> n_bound_ratio;
  std::optional<double> grad_n_bound_ratio;
  std::optional<double> sigma_est_initial;
  std::optional<double> sigma_est_final;
  std::size_t segments = 0;
  double wall_time = 0.0;
  Trajectory trajectory;
  std::vector<EnergyRecord> records;
};

/// Runs one configuration end to end without writing anything.
CaseResult run_case(const RunConfig& cfg);

/// CSV writing helpers. sigma_est is "inf" when the estimator saturates.
std::string energy_csv(const std::vector<EnergyRecord>& records);
std::string format_double(double v);

/// Writes energy.csv, summary.json, snapshots/ and plot.gp into
/// cfg.output_dir. Returns the summary.
nlohmann::json write_solve_artifacts(const RunConfig& cfg, const CaseResult& result);

nlohmann::json summary_json(const RunConfig& cfg, const CaseResult& result);

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"sigma", "theta", "T", "p", "amplitude"};
  return axes;
}

/// Copy of `base` with the axis parameter set to `value`. Throws ConfigError.
RunConfig with_axis(const RunConfig& base, const std::string& axis, double value);

/// Parses "0.2,0.1,0.05"; throws ConfigError on empty lists or bad numbers.
std::vector<double> parse_values(const std::string& csv);

struct SweepResult {
  std::vector<double> values;
  std::vector<CaseResult> cases;
  std::string csv;
  std::size_t failures = 0;
};

/// Runs all cases on `threads` workers; rows stay in value order.
SweepResult run_sweep(const RunConfig& base, const std::string& axis, const std::vector<double>& values,
                      unsigned threads);

/// Writes sweep.csv and sweep.gp into base.output_dir.
void write_sweep_artifacts(const RunConfig& base, const std::string& axis, const SweepResult& sweep);

}  // namespace gnls::app
