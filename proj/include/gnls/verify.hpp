#pragma once

// Randomized and deterministic verification suites. Every suite is
// deterministic given its seed and reports the extreme values it saw.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gnls/spectral.hpp"

namespace gnls {

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool passed = true;
  std::vector<std::pair<std::string, double>> metrics{};
  std::vector<std::string> notes{};
  /// Serialized violating case (null when none).
  nlohmann::json failing_case{};

  double metric(std::string_view name) const;
  void record(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
  void fail(std::string note, nlohmann::json replay);
  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);

/// Default trial count per suite (ignored by deterministic suites).
std::size_t default_trials(std::string_view name);

/// Throws std::invalid_argument for unknown suite names.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, std::size_t trials);

// Individual suites, also used by the acceptance tests.
SuiteReport lemma6_suite(std::uint64_t seed, std::size_t trials);
SuiteReport algebra_suite(std::uint64_t seed, std::size_t trials);
SuiteReport embedding_suite(std::uint64_t seed, std::size_t trials);
SuiteReport gn_suite(std::uint64_t seed, std::size_t trials);
SuiteReport nbound_suite();
SuiteReport conservation_suite();
SuiteReport radius_suite();
SuiteReport bootstrap_suite();

/// Grid shared by the random field families: n = 256, L = 32.
GridSpec random_family_grid();

/// Sum of one to three Gaussian wave packets with random complex amplitude,
/// center in [-4, 4], width in [0.5, 2] and carrier in [-2, 2], truncated to
/// |xi| <= 8.
SpectralField random_wave_packets(const GridSpec& grid, std::mt19937_64& rng);

}  // namespace gnls
