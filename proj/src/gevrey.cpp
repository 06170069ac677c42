#include "gnls/gevrey.hpp"

#include <cmath>
#include <limits>

namespace gnls {

double max_admissible_sigma(const GridSpec& grid, double tol) {
  return std::log(tol / std::numeric_limits<double>::epsilon()) / grid.xi_max();
}

void check_noise_guard(const GridSpec& grid, double sigma, double tol) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("sigma must be a finite nonnegative number");
  const double limit = max_admissible_sigma(grid, tol);
  if (sigma > limit) {
    throw NoiseGuardError("noise guard: sigma = " + std::to_string(sigma) +
                          " exceeds ln(tol/eps)/xi_max = " + std::to_string(limit) +
                          " on this grid");
  }
}

double japanese_bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

double gevrey_weight(double xi, const GevreyParams& params) {
  const double a = std::abs(xi);
  return std::exp(params.sigma * a) * std::pow(1.0 + a * a, 0.5 * params.s);
}

double gevrey_norm(const SpectralField& f, const GevreyParams& params, double tol) {
  check_noise_guard(f.grid(), params.sigma, tol);
  const GridSpec& grid = f.grid();
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double w = gevrey_weight(grid.xi(grid.mode_at(i)), params);
    sum += w * w * std::norm(c[i]);
  }
  return std::sqrt(sum);
}

SpectralField apply_lambda(const SpectralField& f, double sigma, double tol) {
  check_noise_guard(f.grid(), sigma, tol);
  if (sigma == 0.0) return f;
  return f.multiplied([sigma](double xi) { return Complex{std::exp(sigma * std::abs(xi)), 0.0}; });
}

double embedding_constant(const GevreyParams& from, const GevreyParams& to, const GridSpec& grid) {
  if (to.sigma > from.sigma)
    throw std::invalid_argument("embedding_constant: no embedding when to.sigma > from.sigma");
  if (to.sigma == from.sigma && to.s > from.s)
    throw std::invalid_argument("embedding_constant: no embedding when to.s > from.s at equal sigma");
  const GevreyParams ratio{to.sigma - from.sigma, to.s - from.s};
  double best = 0.0;
  for (int k = 0; k <= static_cast<int>(grid.n_modes / 2); ++k)
    best = std::max(best, gevrey_weight(grid.xi(k), ratio));
  return best;
}

double algebra_defect(const SpectralField& u, const SpectralField& v, const GevreyParams& params,
                      double tol) {
  if (!(params.s > 0.5)) throw std::invalid_argument("algebra_defect requires s > 1/2");
  if (!(u.grid() == v.grid())) throw std::invalid_argument("algebra_defect: grid mismatch");
  const GridSpec& grid = u.grid();
  const double nu = gevrey_norm(u, params, tol);
  const double nv = gevrey_norm(v, params, tol);
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("algebra_defect: zero input");

  // Degree-2 products fit exactly on a grid of twice the size.
  const std::size_t m = 2 * grid.n_modes;
  GridSpec fine = grid;
  fine.n_modes = m;
  check_noise_guard(fine, params.sigma, tol);
  ComplexVector a = padded_samples(u, m);
  const ComplexVector b = padded_samples(v, m);
  for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
  const SpectralField uv(fine, padded_spectrum(grid, a));
  return gevrey_norm(uv, params, tol) / (nu * nv);
}

}  // namespace gnls
