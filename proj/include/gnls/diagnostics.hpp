#pragma once

// Almost-conserved quantity S(t) = int |U|^2 + |U_x|^2 + 2/(p+1) |U|^{p+1}
// with U = Lambda u, the commutator defect N(u) = |U|^{p-1}U - Lambda(|u|^{p-1}u),
// its sigma^theta bounds, the dS/dt identity, Gagliardo-Nirenberg ratios, the
// Fourier-decay radius estimator and the bootstrap sigma budget.

#include <optional>
#include <vector>

#include "gnls/gevrey.hpp"
#include "gnls/solver.hpp"
#include "gnls/spectral.hpp"

namespace gnls {

struct EnergyRecord {
  double t = 0.0;
  double S = 0.0;
  double mass = 0.0;            // int |U|^2
  double grad_term = 0.0;       // int |U_x|^2
  double potential_term = 0.0;  // 2/(p+1) int |U|^{p+1}
  double n_norm = 0.0;          // ||N(u)||_{L^2}
  double grad_n_norm = 0.0;     // ||N(u)_x||_{L^2}
  /// Fitted radius; empty when the estimator saturates (entire data).
  std::optional<double> sigma_est;

  /// |S - (mass + grad + potential)| / max(S, tiny)
  double decomposition_error() const;
};

/// The three summands of S; n_norm, grad_n_norm and sigma_est stay unset.
EnergyRecord compute_S(const SpectralField& u, double sigma, int p);

/// compute_S plus the N(u) norms and a radius estimate.
EnergyRecord full_energy_record(const SpectralField& u, double sigma, int p, double t = 0.0);

SpectralField compute_N_spectral(const SpectralField& u, double sigma, int p);
SpatialField compute_N(const SpectralField& u, double sigma, int p);

/// ||N(u)|| (or ||N(u)_x|| when `gradient`) / (sigma^theta (||U||^2 + ||U_x||^2)^{p/2}).
double n_bound_ratio(const SpectralField& u, double sigma, int p, double theta, bool gradient);

/// Right-hand side of the S identity:
///   -2 Im[ int conj(U_x) N_x + int conj(U) N + int |U|^{p-1} conj(U) N ].
double dS_dt_formula(const SpectralField& u, double sigma, int p);

struct DsDtCheck {
  double t = 0.0;
  double finite_difference = 0.0;
  double formula = 0.0;
  double error() const { return std::abs(finite_difference - formula); }
};

/// Centered difference of S at an interior sample against dS_dt_formula.
DsDtCheck dS_dt_identity_check(const Trajectory& traj, double sigma, int p, std::size_t t_index);

// ---------------------------------------------------------------------------
// Radius of analyticity from Fourier decay

struct FrequencyWindow {
  double xi_min = 0.0;
  double xi_max = 0.0;
};

inline constexpr double kRadiusFloor = 1e-12;
/// Max fit residual (log10 units) above which decay is not exponential.
inline constexpr double kSaturationResidual = 0.5;
inline constexpr std::size_t kMinFitModes = 8;

/// From where the envelope of |f_k| has dropped two decades below its peak
/// to the last |xi| where it still exceeds `floor`.
FrequencyWindow default_fit_window(const SpectralField& f, double floor = kRadiusFloor);

struct RadiusEstimate {
  std::optional<double> sigma;  // empty = saturated
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual_log10 = 0.0;
  std::size_t modes_used = 0;
  bool saturated() const { return !sigma.has_value(); }
};

class InsufficientModes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit of -log|f_k| = sigma |xi_k| + c over modes in `window`
/// with |f_k| > floor.
RadiusEstimate estimate_radius(const SpectralField& f, const FrequencyWindow& window,
                               double floor = kRadiusFloor);
RadiusEstimate estimate_radius(const SpectralField& f, double floor = kRadiusFloor);

// ---------------------------------------------------------------------------
// Bootstrap budget

struct BootstrapParams {
  double theta = 0.5;
  double C_boot = 1.0;
  double S0 = 0.0;
  double T = 1.0;
  double epsilon = 1.0;

  void validate() const;
};

/// [C (4 S0)^{p/2} (2 (4 S0)^{1/2} + (4 S0)^{p/2}) T]^{-1/theta}
double bootstrap_sigma(const BootstrapParams& bp, int p);

/// 0.99 min(sigma0, bootstrap_sigma with theta = 1/(1+epsilon)).
double sigma_final(double sigma0, const BootstrapParams& bp, int p);

/// Largest sigma with sigma <= bootstrap_sigma(S0 = S_sigma(u0)); the budget
/// and S(0) are evaluated at the same sigma. `bp.S0` is ignored.
double consistent_bootstrap_sigma(const SpectralField& u0, const BootstrapParams& bp, int p);

struct BootstrapVerdict {
  std::vector<double> times;
  std::vector<double> S;
  std::vector<bool> hypothesis;  // H(t): S(tau) <= 4 S0 on [0, t]
  std::vector<bool> conclusion;  // C(t): S(tau) <= 2 S0 on [0, t]
  bool pass = false;             // C holds at every sample
  std::optional<double> first_h_failure;
  std::optional<double> first_c_failure;
};

BootstrapVerdict bootstrap_monitor(const Trajectory& traj, double sigma, int p, double S0);

/// ||U||_{L^{2p}} / (||U||^{1-alpha} ||U_x||^alpha), alpha = (1 - 1/p)/2.
double gn_ratio(const SpectralField& u, double sigma, int p);
double gn_alpha(int p);

struct SestimateSeries {
  std::vector<double> times;
  std::vector<double> S;
  std::vector<double> margin;
  double min_margin() const;
};

/// margin(t) = S(0) + C sigma^theta int_0^t S^{p/2} (2 S^{1/2} + S^{p/2}) - S(t).
SestimateSeries check_sestimate(const Trajectory& traj, double sigma, double theta, double C_boot, int p);

}  // namespace gnls
