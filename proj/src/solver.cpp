#include "gnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace gnls {

void SolverConfig::validate() const {
  require_odd_power(p);
  if (!(contraction_constant > 0.0))
    throw std::invalid_argument("solver.contraction_constant must be positive");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("solver.picard_tol must be positive");
  if (max_picard_iters < 1) throw std::invalid_argument("solver.max_picard_iters must be >= 1");
  if (quadrature_nodes < 2) throw std::invalid_argument("solver.quadrature_nodes must be >= 2");
  if (!(dt_reference > 0.0)) throw std::invalid_argument("solver.dt_reference must be positive");
  if (!(norm_ceiling > 0.0)) throw std::invalid_argument("solver.norm_ceiling must be positive");
}

// ---------------------------------------------------------------------------
// Trajectory

void Trajectory::append(double t, SpectralField state) {
  times.push_back(t);
  states.push_back(std::move(state));
}

std::size_t Trajectory::nearest_index(double t) const {
  if (times.empty()) throw std::out_of_range("nearest_index: empty trajectory");
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const auto hi = static_cast<std::size_t>(it - times.begin());
  return (t - times[hi - 1] <= times[hi] - t) ? hi - 1 : hi;
}

void Trajectory::validate() const {
  if (times.size() != states.size())
    throw std::invalid_argument("Trajectory: times and states differ in length");
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("Trajectory: must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("Trajectory: times must be strictly increasing");
}

// ---------------------------------------------------------------------------
// Errors

SolverError::SolverError(Kind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

const char* SolverError::kind_name(Kind kind) {
  switch (kind) {
    case Kind::NoContraction: return "NoContraction";
    case Kind::MaxIters: return "MaxIters";
    case Kind::StepTooLarge: return "StepTooLarge";
    case Kind::BlowupSuspected: return "BlowupSuspected";
  }
  return "SolverError";
}

// ---------------------------------------------------------------------------
// Initial data

const char* to_string(InitialDataKind kind) {
  switch (kind) {
    case InitialDataKind::gaussian: return "gaussian";
    case InitialDataKind::sech: return "sech";
    case InitialDataKind::lorentzian: return "lorentzian";
    case InitialDataKind::plane_wave: return "plane_wave";
    case InitialDataKind::random_bandlimited: return "random_bandlimited";
  }
  return "unknown";
}

std::optional<InitialDataKind> parse_initial_data_kind(const std::string& name) {
  for (auto k : {InitialDataKind::gaussian, InitialDataKind::sech, InitialDataKind::lorentzian,
                 InitialDataKind::plane_wave, InitialDataKind::random_bandlimited})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

InitialDataSpec InitialDataSpec::make(InitialDataKind kind, double amplitude, double width) {
  InitialDataSpec spec;
  spec.kind = kind;
  spec.amplitude = amplitude;
  spec.width = width;
  if (kind == InitialDataKind::sech) spec.known_radius = 0.5 * std::numbers::pi * width;
  if (kind == InitialDataKind::lorentzian) spec.known_radius = width;
  return spec;
}

void InitialDataSpec::validate() const {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("initial_data.amplitude must be finite");
  if (!(width > 0.0)) throw std::invalid_argument("initial_data.width must be positive");
  if (known_radius && !(*known_radius > 0.0))
    throw std::invalid_argument("initial_data.known_radius must be positive");
  if (kind == InitialDataKind::random_bandlimited && band < 0)
    throw std::invalid_argument("initial_data.band must be >= 0");
}

SpectralField random_bandlimited(const GridSpec& grid, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField out(grid);
  const int kmax = std::min(band, grid.max_mode());
  for (int k = -kmax; k <= kmax; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    out.mode(k) = Complex{re, im} / std::numbers::sqrt2;
  }
  return out;
}

SpectralField InitialDataSpec::sample(const GridSpec& grid) const {
  validate();
  grid.validate();
  const double a = amplitude;
  const double w = width;
  const double L = grid.half_length;
  switch (kind) {
    case InitialDataKind::plane_wave:
      return SpectralField::single_mode(grid, mode, a * std::sqrt(2.0 * L));
    case InitialDataKind::random_bandlimited: {
      SpectralField f = random_bandlimited(grid, band, seed);
      f *= a;
      return f;
    }
    case InitialDataKind::gaussian:
      return to_spectral(SpatialField::from_function(
          grid, [=](double x) { return Complex{a * std::exp(-0.5 * x * x / (w * w)), 0.0}; }));
    case InitialDataKind::sech:
      // Periodic images; sech(2L) is far below double precision for L >= 20.
      return to_spectral(SpatialField::from_function(grid, [=](double x) {
        double sum = 0.0;
        for (int m = -2; m <= 2; ++m) sum += 1.0 / std::cosh((x + 2.0 * L * m) / w);
        return Complex{a * sum, 0.0};
      }));
    case InitialDataKind::lorentzian: {
      // Closed-form periodization sum_m w^2 / (w^2 + (x + 2Lm)^2); its Fourier
      // coefficients are exactly the continuous transform pi w e^{-w|xi|} / sqrt(2L).
      const double r = std::exp(-w * std::numbers::pi / L);
      return to_spectral(SpatialField::from_function(grid, [=](double x) {
        const double c = std::cos(std::numbers::pi * x / L);
        return Complex{a * std::numbers::pi * w / (2.0 * L) * (1.0 - r * r) / (1.0 - 2.0 * r * c + r * r),
                       0.0};
      }));
    }
  }
  throw std::logic_error("unhandled initial data kind");
}

// ---------------------------------------------------------------------------
// Local theory

double contraction_delta(double f_norm, int p, double contraction_constant) {
  require_odd_power(p);
  if (!(f_norm > 0.0)) throw std::invalid_argument("contraction_delta: f_norm must be positive");
  if (!(contraction_constant > 0.0))
    throw std::invalid_argument("contraction_delta: C must be positive");
  return 0.9 / (2.0 * contraction_constant * std::pow(f_norm, p - 1));
}

Trajectory free_trajectory(const SpectralField& f, double delta, int nodes) {
  Trajectory out;
  for (int j = 0; j < nodes; ++j) {
    const double t = (j == nodes - 1) ? delta : delta * j / (nodes - 1);
    out.append(t, free_evolution(f, t));
  }
  return out;
}

Trajectory duhamel_apply(const Trajectory& candidate, const SpectralField& f, const SolverConfig& cfg) {
  candidate.validate();
  require_odd_power(cfg.p);
  const std::size_t m = candidate.size();

  // Interaction picture: e^{i(t-tau)Delta} g = e^{itDelta} e^{-i tau Delta} g.
  Trajectory out;
  out.params = candidate.params;
  SpectralField integral(f.grid());
  SpectralField prev = free_evolution(nonlinearity(candidate.states[0], cfg.p), -candidate.times[0]);
  out.append(candidate.times[0], free_evolution(f, candidate.times[0]));
  for (std::size_t j = 1; j < m; ++j) {
    const double tau = candidate.times[j];
    SpectralField cur = free_evolution(nonlinearity(candidate.states[j], cfg.p), -tau);
    const double h = tau - candidate.times[j - 1];
    integral += Complex{0.5 * h, 0.0} * (prev + cur);
    SpectralField phi = f - Complex{0.0, 1.0} * integral;
    out.append(tau, free_evolution(phi, tau));
    prev = std::move(cur);
  }
  return out;
}

std::vector<double> PicardResult::contraction_ratios() const {
  std::vector<double> ratios;
  for (std::size_t n = 1; n < differences.size(); ++n)
    if (differences[n - 1] > 0.0) ratios.push_back(differences[n] / differences[n - 1]);
  return ratios;
}

PicardResult picard_solve(const SpectralField& f, const GevreyParams& params,
                          const SolverConfig& cfg, double delta) {
  cfg.validate();
  if (!(params.s > 0.5)) throw std::invalid_argument("picard_solve requires s > 1/2");
  if (!(delta > 0.0)) throw std::invalid_argument("picard_solve: delta must be positive");

  PicardResult result;
  result.f_norm = gevrey_norm(f, params);
  const double target = cfg.picard_tol * result.f_norm;
  // Iterates cannot settle below accumulated round-off.
  const double roundoff = 1e3 * std::numeric_limits<double>::epsilon() * result.f_norm;

  Trajectory current = free_trajectory(f, delta, cfg.quadrature_nodes);
  current.params = params;
  for (int iter = 1;; ++iter) {
    Trajectory next = duhamel_apply(current, f, cfg);
    double diff = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j)
      diff = std::max(diff, gevrey_norm(next.states[j] - current.states[j], params));
    result.differences.push_back(diff);
    current = std::move(next);
    result.iterations = iter;

    if (diff <= target || diff <= roundoff) break;
    const auto& d = result.differences;
    if (d.size() >= 2 && diff >= d[d.size() - 2]) {
      throw SolverError(SolverError::Kind::NoContraction,
                        "Picard differences stopped decreasing (" + std::to_string(d[d.size() - 2]) +
                            " -> " + std::to_string(diff) + "); delta = " + std::to_string(delta) +
                            " is too large for ||f|| = " + std::to_string(result.f_norm));
    }
    if (iter >= cfg.max_picard_iters) {
      throw SolverError(SolverError::Kind::MaxIters,
                        "no convergence to picard_tol after " + std::to_string(iter) + " iterations");
    }
  }

  for (const auto& s : current.states) result.max_norm = std::max(result.max_norm, gevrey_norm(s, params));
  result.trajectory = std::move(current);
  return result;
}

// ---------------------------------------------------------------------------
// Split-step reference

Trajectory splitstep_solve(const SpectralField& f, double T, const SolverConfig& cfg,
                           std::size_t sample_every) {
  cfg.validate();
  if (!(T > 0.0)) throw std::invalid_argument("splitstep_solve: T must be positive");
  if (sample_every == 0) sample_every = 1;
  const auto steps = static_cast<std::size_t>(std::ceil(T / cfg.dt_reference - 1e-9));
  const double dt = T / static_cast<double>(steps);
  const GridSpec& grid = f.grid();
  const double phase = dt * grid.xi_max() * grid.xi_max();
  if (phase > kMaxLinearPhasePerStep) {
    throw SolverError(SolverError::Kind::StepTooLarge,
                      "dt * xi_max^2 = " + std::to_string(phase) + " exceeds " +
                          std::to_string(kMaxLinearPhasePerStep) + "; reduce dt_reference");
  }

  ComplexVector propagator(grid.n_modes);
  for (std::size_t i = 0; i < propagator.size(); ++i) {
    const double xi = grid.xi(grid.mode_at(i));
    propagator[i] = std::polar(1.0, -xi * xi * dt);
  }
  const int half_power = (cfg.p - 1) / 2;
  auto nonlinear_phase = [&](SpatialField& u, double h) {
    for (auto& z : u.samples()) {
      const double r2 = std::norm(z);
      double w = 1.0;
      for (int i = 0; i < half_power; ++i) w *= r2;
      z *= std::polar(1.0, -h * w);
    }
  };

  Trajectory out;
  out.append(0.0, f);
  SpatialField u = to_spatial(f);
  for (std::size_t n = 1; n <= steps; ++n) {
    nonlinear_phase(u, 0.5 * dt);
    SpectralField c = to_spectral(u);
    auto coeffs = c.coeffs();
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] *= propagator[i];
    u = to_spatial(c);
    nonlinear_phase(u, 0.5 * dt);
    if (n % sample_every == 0 || n == steps) {
      const double t = (n == steps) ? T : dt * static_cast<double>(n);
      out.append(t, to_spectral(u));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Continuation

ContinuationResult continue_solution(const SpectralField& f, double T, const GevreyParams& params,
                                     const SolverConfig& cfg, const SegmentCallback& on_boundary) {
  cfg.validate();
  if (!(T > 0.0)) throw std::invalid_argument("continue_solution: T must be positive");
  const GevreyParams delta_norm{params.sigma, 1.0};

  ContinuationResult result;
  result.trajectory.params = params;
  result.trajectory.append(0.0, f);
  if (on_boundary) on_boundary(0.0, f);

  double t = 0.0;
  SpectralField state = f;
  while (T - t > 1e-14 * T) {
    const double norm = gevrey_norm(state, delta_norm);
    if (norm > cfg.norm_ceiling) {
      throw SolverError(SolverError::Kind::BlowupSuspected,
                        "G^{sigma,1} norm " + std::to_string(norm) + " exceeds norm_ceiling at t = " +
                            std::to_string(t));
    }
    SegmentInfo seg;
    seg.t_start = t;
    seg.entry_norm = norm;
    const double remaining = T - t;
    seg.delta = (norm > 0.0) ? std::min(contraction_delta(norm, cfg.p, cfg.contraction_constant), remaining)
                             : remaining;
    // A short tail would waste a full Picard solve.
    if (remaining - seg.delta < 1e-3 * seg.delta) seg.delta = remaining;

    PicardResult local = picard_solve(state, params, cfg, seg.delta);
    seg.iterations = local.iterations;
    for (double r : local.contraction_ratios()) seg.max_contraction_ratio = std::max(seg.max_contraction_ratio, r);

    const bool last = (remaining - seg.delta) <= 1e-14 * T;
    const Trajectory& local_traj = local.trajectory;
    for (std::size_t j = 1; j < local_traj.size(); ++j) {
      const double tj = (last && j + 1 == local_traj.size()) ? T : t + local_traj.times[j];
      result.trajectory.append(tj, local_traj.states[j]);
    }
    t = last ? T : t + seg.delta;
    state = local_traj.states.back();
    result.segments.push_back(seg);
    if (on_boundary) on_boundary(t, state);
  }
  return result;
}

}  // namespace gnls
