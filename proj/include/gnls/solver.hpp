#pragma once

// Local solutions of i u_t + u_xx = |u|^{p-1} u by Picard iteration of the
// Duhamel map, continuation to arbitrary times, and a Strang split-step
// reference integrator.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnls/gevrey.hpp"
#include "gnls/spectral.hpp"

namespace gnls {

struct SolverConfig {
  int p = 3;
  /// C in ||Phi(u) - Phi(v)|| <= C delta (||u||^{p-1} + ||v||^{p-1}) ||u - v||.
  double contraction_constant = 1.0;
  /// Relative to ||f||: iteration stops once sup_t ||u^{n+1} - u^n|| <= tol ||f||.
  double picard_tol = 1e-12;
  int max_picard_iters = 100;
  /// Trapezoid nodes per local segment (including both endpoints).
  int quadrature_nodes = 33;
  double dt_reference = 1e-3;
  /// Continuation aborts once the G^{sigma,1} norm exceeds this value.
  double norm_ceiling = 1e8;

  void validate() const;
};

/// Largest accepted phase rotation dt * xi_max^2 of a split-step step.
inline constexpr double kMaxLinearPhasePerStep = 3.141592653589793;

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  GevreyParams params;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  void append(double t, SpectralField state);
  /// Index of the sample closest to t.
  std::size_t nearest_index(double t) const;
  /// Throws std::invalid_argument if times are not strictly increasing from 0.
  void validate() const;
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { NoContraction, MaxIters, StepTooLarge, BlowupSuspected };

  SolverError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }
  static const char* kind_name(Kind kind);

 private:
  Kind kind_;
};

enum class InitialDataKind { gaussian, sech, lorentzian, plane_wave, random_bandlimited };

const char* to_string(InitialDataKind kind);
std::optional<InitialDataKind> parse_initial_data_kind(const std::string& name);

struct InitialDataSpec {
  InitialDataKind kind = InitialDataKind::sech;
  double amplitude = 1.0;
  double width = 1.0;
  /// Half-width of the analyticity strip when known: pi/2 * width for sech,
  /// width for the Lorentzian.
  std::optional<double> known_radius;
  int mode = 1;            // plane_wave: wavenumber index k (xi = pi k / L)
  int band = 8;            // random_bandlimited: modes |k| <= band
  std::uint64_t seed = 1;  // random_bandlimited

  static InitialDataSpec make(InitialDataKind kind, double amplitude = 1.0, double width = 1.0);
  void validate() const;
  SpectralField sample(const GridSpec& grid) const;
};

/// Random complex Gaussian coefficients on modes |k| <= band, zero elsewhere.
SpectralField random_bandlimited(const GridSpec& grid, int band, std::uint64_t seed);

/// 0.9 / (2 C f_norm^{p-1}): strictly inside the contraction regime.
double contraction_delta(double f_norm, int p, double contraction_constant);

/// Phi(u)(t) = e^{it Delta} f - i int_0^t e^{i(t-tau) Delta} |u|^{p-1} u dtau
/// at the candidate's times, composite trapezoid in tau.
Trajectory duhamel_apply(const Trajectory& candidate, const SpectralField& f, const SolverConfig& cfg);

/// Free evolution of f sampled at `nodes` equispaced times on [0, delta].
Trajectory free_trajectory(const SpectralField& f, double delta, int nodes);

struct PicardResult {
  Trajectory trajectory;
  /// sup_t ||u^{n+1} - u^n||_{G^{sigma,s}} per iteration.
  std::vector<double> differences;
  int iterations = 0;
  double f_norm = 0.0;
  double max_norm = 0.0;  // sup_t ||u(t)||_{G^{sigma,s}}

  /// differences[n+1] / differences[n].
  std::vector<double> contraction_ratios() const;
};

/// Fixed point of the Duhamel map on [0, delta] starting from e^{it Delta} f.
PicardResult picard_solve(const SpectralField& f, const GevreyParams& params,
                          const SolverConfig& cfg, double delta);

/// Strang splitting of exact free evolution and the exact pointwise phase
/// rotation e^{-i t |u|^{p-1}}. Samples every `sample_every` steps.
Trajectory splitstep_solve(const SpectralField& f, double T, const SolverConfig& cfg,
                           std::size_t sample_every = 1);

struct SegmentInfo {
  double t_start = 0.0;
  double delta = 0.0;
  double entry_norm = 0.0;  // G^{sigma,1}
  int iterations = 0;
  double max_contraction_ratio = 0.0;
};

struct ContinuationResult {
  Trajectory trajectory;
  std::vector<SegmentInfo> segments;
};

using SegmentCallback = std::function<void(double t, const SpectralField& state)>;

/// Repeated local Picard solves up to T, each step sized from the entry
/// G^{sigma,1} norm. `on_boundary` fires at t = 0, every segment boundary and T.
ContinuationResult continue_solution(const SpectralField& f, double T, const GevreyParams& params,
                                     const SolverConfig& cfg,
                                     const SegmentCallback& on_boundary = {});

}  // namespace gnls
