#pragma once

// Frozen empirical constants. Each value was produced by the verification
// suite named next to it (`gnls verify --suite <name>` with the default seed)
// and rounded up; the suites regress against these numbers.

namespace gnls::calibration {

/// Seed used by the calibration runs and as the CLI default.
inline constexpr unsigned long long kDefaultSeed = 20240601ULL;

/// Upper envelope of ||uv||_{G^{sigma,1}} / (||u|| ||v||) over the random
/// wave-packet family, sigma in {0, 0.2, 0.5} (suite "algebra", 1e4 pairs).
/// Observed maximum 0.6341 at sigma = 0.
inline constexpr double kAlgebraConstantS1 = 0.65;

/// Safety factor between the algebra constant and the contraction constant
/// used to size Picard steps.
inline constexpr double kQuadratureSafety = 2.0;

/// sup ||U||_{L^{2p}} / (||U||^{1-alpha} ||U_x||^alpha) over the random
/// wave-packet family (suite "gn"). Observed maxima 0.8464 (p = 3) and
/// 0.8430 (p = 5).
inline constexpr double kGagliardoNirenbergP3 = 0.87;
inline constexpr double kGagliardoNirenbergP5 = 0.87;

/// max n_bound_ratio (both ||N|| and ||N_x||) over the sigma sweep
/// {0.2, 0.1, 0.05, 0.025} on sech data, n = 1024, L = 32 (suite "nbound").
/// Observed 0.072722, 0.108745, 0.162612, all at sigma = 0.2 for ||N||.
inline constexpr double kNBoundMaxTheta025 = 0.0728;
inline constexpr double kNBoundMaxTheta050 = 0.1088;
inline constexpr double kNBoundMaxTheta075 = 0.1627;

/// Safety factor applied to the n-bound maximum to obtain C_boot.
inline constexpr double kBootstrapSafety = 2.0;

/// C in the S(t) growth estimate for theta = 1/2.
inline constexpr double kBootstrapConstantTheta050 = kBootstrapSafety * kNBoundMaxTheta050;

/// Contraction constant for the Picard step: kAlgebraConstantS1^{p-1} times
/// the quadrature safety factor.
double contraction_constant(int p);

/// Calibrated n-bound maximum for theta in {0.25, 0.5, 0.75}; throws otherwise.
double n_bound_max(double theta);

/// kBootstrapSafety * n_bound_max(theta).
double bootstrap_constant(double theta);

/// Calibrated GN bound for p in {3, 5}; throws otherwise.
double gagliardo_nirenberg_max(int p);

}  // namespace gnls::calibration
