#include "gnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gnls {

namespace {

double gradient_energy(const SpectralField& f) {
  const GridSpec& grid = f.grid();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double xi = grid.xi(grid.mode_at(i));
    sum += xi * xi * std::norm(c[i]);
  }
  return sum;
}

SpectralField derivative(const SpectralField& f) {
  return f.multiplied([](double xi) { return Complex{0.0, xi}; });
}

}  // namespace

double EnergyRecord::decomposition_error() const {
  const double sum = mass + grad_term + potential_term;
  return std::abs(S - sum) / std::max(std::abs(S), std::numeric_limits<double>::min());
}

EnergyRecord compute_S(const SpectralField& u, double sigma, int p) {
  require_odd_power(p);
  const SpectralField U = apply_lambda(u, sigma);
  EnergyRecord rec;
  rec.mass = std::pow(U.l2_norm(), 2);
  rec.grad_term = gradient_energy(U);
  rec.potential_term = 2.0 / (p + 1) * integrate_abs_power(U, p + 1);
  rec.S = rec.mass + rec.grad_term + rec.potential_term;
  return rec;
}

SpectralField compute_N_spectral(const SpectralField& u, double sigma, int p) {
  require_odd_power(p);
  const SpectralField U = apply_lambda(u, sigma);
  return nonlinearity(U, p) - apply_lambda(nonlinearity(u, p), sigma);
}

SpatialField compute_N(const SpectralField& u, double sigma, int p) {
  return to_spatial(compute_N_spectral(u, sigma, p));
}

EnergyRecord full_energy_record(const SpectralField& u, double sigma, int p, double t) {
  EnergyRecord rec = compute_S(u, sigma, p);
  rec.t = t;
  const SpectralField N = compute_N_spectral(u, sigma, p);
  rec.n_norm = N.l2_norm();
  rec.grad_n_norm = std::sqrt(gradient_energy(N));
  if (u.max_abs() > 0.0) {
    try {
      rec.sigma_est = estimate_radius(u).sigma;
    } catch (const InsufficientModes&) {
      rec.sigma_est.reset();
    }
  }
  return rec;
}

double n_bound_ratio(const SpectralField& u, double sigma, int p, double theta, bool gradient) {
  if (!(sigma > 0.0)) throw std::invalid_argument("n_bound_ratio requires sigma > 0");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("n_bound_ratio requires theta in (0,1)");
  const SpectralField U = apply_lambda(u, sigma);
  const double h1 = std::pow(U.l2_norm(), 2) + gradient_energy(U);
  if (!(h1 > 0.0)) throw std::invalid_argument("n_bound_ratio: zero field");
  const SpectralField N = compute_N_spectral(u, sigma, p);
  const double numerator = gradient ? std::sqrt(gradient_energy(N)) : N.l2_norm();
  return numerator / (std::pow(sigma, theta) * std::pow(h1, 0.5 * p));
}

double dS_dt_formula(const SpectralField& u, double sigma, int p) {
  const SpectralField U = apply_lambda(u, sigma);
  const SpectralField N = compute_N_spectral(u, sigma, p);
  const Complex grad_term = inner(derivative(U), derivative(N));
  const Complex mass_term = inner(U, N);
  const Complex potential_term = inner(nonlinearity(U, p), N);
  return -2.0 * (grad_term + mass_term + potential_term).imag();
}

DsDtCheck dS_dt_identity_check(const Trajectory& traj, double sigma, int p, std::size_t t_index) {
  if (t_index == 0 || t_index + 1 >= traj.size())
    throw std::out_of_range("dS_dt_identity_check: index must be interior");
  const double t0 = traj.times[t_index - 1];
  const double t1 = traj.times[t_index];
  const double t2 = traj.times[t_index + 1];
  const double s0 = compute_S(traj.states[t_index - 1], sigma, p).S;
  const double s1 = compute_S(traj.states[t_index], sigma, p).S;
  const double s2 = compute_S(traj.states[t_index + 1], sigma, p).S;
  const double h1 = t1 - t0;
  const double h2 = t2 - t1;

  DsDtCheck out;
  out.t = t1;
  out.finite_difference = -h2 / (h1 * (h1 + h2)) * s0 + (h2 - h1) / (h1 * h2) * s1 +
                          h1 / (h2 * (h1 + h2)) * s2;
  out.formula = dS_dt_formula(traj.states[t_index], sigma, p);
  return out;
}

// ---------------------------------------------------------------------------
// Radius estimation

namespace {

double effective_floor(const SpectralField& f, double floor) {
  return std::max(floor, 1e3 * std::numeric_limits<double>::epsilon() * f.max_abs());
}

}  // namespace

FrequencyWindow default_fit_window(const SpectralField& f, double floor) {
  const GridSpec& grid = f.grid();
  const int kmax = static_cast<int>(grid.n_modes / 2);
  std::vector<double> envelope(kmax + 1, 0.0);
  for (int k = 0; k <= kmax; ++k) {
    const double pos = (k <= grid.max_mode()) ? std::abs(f.mode(k)) : 0.0;
    const double neg = std::abs(f.mode(-k));
    envelope[k] = std::max(pos, neg);
  }
  const double peak = *std::max_element(envelope.begin(), envelope.end());
  if (peak == 0.0) return {};

  const double cutoff = 1e-2 * peak;
  int lo = kmax;
  while (lo > 0 && envelope[lo - 1] < cutoff) --lo;
  const double eff_floor = effective_floor(f, floor);
  int hi = kmax;
  while (hi > 0 && envelope[hi] <= eff_floor) --hi;
  if (hi < lo) hi = lo;
  return {grid.xi(lo), grid.xi(hi)};
}

RadiusEstimate estimate_radius(const SpectralField& f, const FrequencyWindow& window, double floor) {
  const GridSpec& grid = f.grid();
  const double eff_floor = effective_floor(f, floor);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = grid.min_mode(); k <= grid.max_mode(); ++k) {
    const double axi = std::abs(grid.xi(k));
    const double a = std::abs(f.mode(k));
    if (axi < window.xi_min || axi > window.xi_max || !(a > eff_floor)) continue;
    xs.push_back(axi);
    ys.push_back(-std::log(a));
  }

  RadiusEstimate est;
  est.modes_used = xs.size();
  if (xs.empty()) return est;  // everything below the floor
  if (xs.size() < kMinFitModes)
    throw InsufficientModes("estimate_radius: only " + std::to_string(xs.size()) +
                            " usable modes in the fit window");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientModes("estimate_radius: fit window spans a single frequency");
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    worst = std::max(worst, std::abs(ys[i] - (est.slope * xs[i] + est.intercept)));
  est.max_residual_log10 = worst / std::numbers::ln10;
  if (est.max_residual_log10 <= kSaturationResidual) est.sigma = std::max(0.0, est.slope);
  return est;
}

RadiusEstimate estimate_radius(const SpectralField& f, double floor) {
  return estimate_radius(f, default_fit_window(f, floor), floor);
}

// ---------------------------------------------------------------------------
// Bootstrap

void BootstrapParams::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("bootstrap.theta must lie in (0, 1)");
  if (!(C_boot > 0.0)) throw std::invalid_argument("bootstrap.C_boot must be positive");
  if (!(S0 >= 0.0)) throw std::invalid_argument("bootstrap.S0 must be nonnegative");
  if (!(T > 0.0)) throw std::invalid_argument("bootstrap.T must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("bootstrap.epsilon must be positive");
}

double bootstrap_sigma(const BootstrapParams& bp, int p) {
  bp.validate();
  require_odd_power(p);
  if (!(bp.S0 > 0.0)) throw std::invalid_argument("bootstrap_sigma requires S0 > 0");
  const double q = 4.0 * bp.S0;
  const double bracket = bp.C_boot * std::pow(q, 0.5 * p) * (2.0 * std::sqrt(q) + std::pow(q, 0.5 * p)) * bp.T;
  return std::pow(bracket, -1.0 / bp.theta);
}

double sigma_final(double sigma0, const BootstrapParams& bp, int p) {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("sigma_final requires sigma0 > 0");
  BootstrapParams adjusted = bp;
  adjusted.theta = 1.0 / (1.0 + bp.epsilon);
  return 0.99 * std::min(sigma0, bootstrap_sigma(adjusted, p));
}

double consistent_bootstrap_sigma(const SpectralField& u0, const BootstrapParams& bp, int p) {
  auto budget_at = [&](double sigma) {
    BootstrapParams at = bp;
    at.S0 = compute_S(u0, sigma, p).S;
    return bootstrap_sigma(at, p);
  };
  const double cap = max_admissible_sigma(u0.grid());
  double hi = std::min(budget_at(0.0), cap);
  if (hi <= budget_at(hi)) return hi;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= budget_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BootstrapVerdict bootstrap_monitor(const Trajectory& traj, double sigma, int p, double S0) {
  BootstrapVerdict v;
  bool h_ok = true;
  bool c_ok = true;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double s = compute_S(traj.states[i], sigma, p).S;
    if (h_ok && s > 4.0 * S0) {
      h_ok = false;
      v.first_h_failure = t;
    }
    if (c_ok && s > 2.0 * S0) {
      c_ok = false;
      v.first_c_failure = t;
    }
    v.times.push_back(t);
    v.S.push_back(s);
    v.hypothesis.push_back(h_ok);
    v.conclusion.push_back(c_ok);
  }
  v.pass = c_ok && !traj.empty();
  return v;
}

double gn_alpha(int p) { return 0.5 * (1.0 - 1.0 / p); }

double gn_ratio(const SpectralField& u, double sigma, int p) {
  require_odd_power(p);
  const SpectralField U = apply_lambda(u, sigma);
  const double l2 = U.l2_norm();
  const double grad = std::sqrt(gradient_energy(U));
  if (!(grad > 0.0) || !(l2 > 0.0)) throw std::invalid_argument("gn_ratio: constant or zero field");
  const double l2p = std::pow(integrate_abs_power(U, 2 * p), 1.0 / (2.0 * p));
  const double alpha = gn_alpha(p);
  return l2p / (std::pow(l2, 1.0 - alpha) * std::pow(grad, alpha));
}

double SestimateSeries::min_margin() const {
  return margin.empty() ? 0.0 : *std::min_element(margin.begin(), margin.end());
}

SestimateSeries check_sestimate(const Trajectory& traj, double sigma, double theta, double C_boot, int p) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("check_sestimate requires sigma >= 0");
  SestimateSeries out;
  const double factor = C_boot * std::pow(sigma, theta);
  double integral = 0.0;
  double prev_integrand = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double s = compute_S(traj.states[i], sigma, p).S;
    const double integrand = std::pow(s, 0.5 * p) * (2.0 * std::sqrt(s) + std::pow(s, 0.5 * p));
    if (i > 0) integral += 0.5 * (traj.times[i] - traj.times[i - 1]) * (integrand + prev_integrand);
    prev_integrand = integrand;
    out.times.push_back(traj.times[i]);
    out.S.push_back(s);
    const double s0 = out.S.front();
    out.margin.push_back(s0 + factor * integral - s);
  }
  return out;
}

}  // namespace gnls
