#pragma once

// Gevrey-Sobolev norms ||f||_{G^{sigma,s}} = ||e^{sigma|xi|} <xi>^s f^||_{L^2},
// the multiplier Lambda = e^{sigma|nabla|}, embedding constants and the
// algebra ratio ||uv|| / (||u|| ||v||).

#include <stdexcept>
#include <string>

#include "gnls/spectral.hpp"

namespace gnls {

struct GevreyParams {
  double sigma = 0.0;
  double s = 0.0;
};

/// Default accuracy target for exponentially weighted quantities.
inline constexpr double kDefaultNoiseTolerance = 1e-6;

/// Thrown when e^{sigma * xi_max} would lift the round-off floor of a
/// spectrum above the requested tolerance.
class NoiseGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest sigma accepted on `grid`: ln(tol / eps) / xi_max.
double max_admissible_sigma(const GridSpec& grid, double tol = kDefaultNoiseTolerance);

/// Throws NoiseGuardError (or std::invalid_argument for sigma < 0).
void check_noise_guard(const GridSpec& grid, double sigma, double tol = kDefaultNoiseTolerance);

/// <xi> = (1 + xi^2)^{1/2}
double japanese_bracket(double xi);

/// e^{sigma|xi|} <xi>^s
double gevrey_weight(double xi, const GevreyParams& params);

double gevrey_norm(const SpectralField& f, const GevreyParams& params,
                   double tol = kDefaultNoiseTolerance);

/// Lambda f: coefficients multiplied by e^{sigma |xi_k|}.
SpectralField apply_lambda(const SpectralField& f, double sigma,
                           double tol = kDefaultNoiseTolerance);

/// sup_k e^{(to.sigma - from.sigma)|xi_k|} <xi_k>^{to.s - from.s}, so that
/// ||f||_to <= C ||f||_from for every field on `grid`.
double embedding_constant(const GevreyParams& from, const GevreyParams& to, const GridSpec& grid);

/// ||uv||_{G^{sigma,s}} / (||u||_{G^{sigma,s}} ||v||_{G^{sigma,s}}) with the
/// full (untruncated) product spectrum evaluated on the padded grid.
double algebra_defect(const SpectralField& u, const SpectralField& v, const GevreyParams& params,
                      double tol = kDefaultNoiseTolerance);

}  // namespace gnls
