#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "gnls/gevrey.hpp"
#include "test_support.hpp"

using namespace gnls;
using test_support::max_diff;
using test_support::random_modes;

namespace {

SpectralField gaussian(const GridSpec& g) {
  return to_spectral(SpatialField::from_function(g, [](double x) { return Complex{std::exp(-0.5 * x * x), 0.0}; }));
}

}  // namespace

TEST_SUITE("gevrey") {

TEST_CASE("weights") {
  CHECK(japanese_bracket(0.0) == 1.0);
  CHECK(japanese_bracket(3.0) == doctest::Approx(std::sqrt(10.0)));
  CHECK(gevrey_weight(-2.0, {0.5, 2.0}) == doctest::Approx(std::exp(1.0) * 5.0));
}

TEST_CASE("single-mode norm") {
  const GridSpec g{64, 4.0, 2.0};
  const Complex a{0.6, 0.8};
  const int k = 5;
  const double xi = g.xi(k);
  const auto f = SpectralField::single_mode(g, k, a);
  const GevreyParams params{0.3, 1.5};
  CHECK(gevrey_norm(f, params) == doctest::Approx(std::exp(0.3 * xi) * std::pow(1.0 + xi * xi, 0.75)).epsilon(1e-14));
}

TEST_CASE("Gaussian L2 norm is pi^{1/4}") {
  const GridSpec g{1024, 32.0, 2.0};
  CHECK(gevrey_norm(gaussian(g), {0.0, 0.0}) == doctest::Approx(std::pow(std::numbers::pi, 0.25)).epsilon(1e-12));
}

TEST_CASE("Gaussian exponentially weighted norm") {
  const GridSpec g{256, 32.0, 2.0};
  const double sigma = 0.5;
  const double closed = std::sqrt(std::sqrt(std::numbers::pi) * std::exp(sigma * sigma) * (1.0 + std::erf(sigma)));
  const double quad = std::sqrt(test_support::trapezoid(
      [&](double xi) { return std::exp(2.0 * sigma * std::abs(xi) - xi * xi); }, -40.0, 40.0, 400000));
  CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
  // On the grid the norm is a Riemann sum of the same integrand, exact up to the
  // kink of e^{2 sigma |xi|} at the origin.
  double grid_sum = 0.0;
  for (int k = g.min_mode(); k <= g.max_mode(); ++k) {
    const double xi = g.xi(k);
    grid_sum += g.dxi() * std::exp(2.0 * sigma * std::abs(xi) - xi * xi);
  }
  const double norm = gevrey_norm(gaussian(g), {sigma, 0.0});
  CHECK(norm == doctest::Approx(std::sqrt(grid_sum)).epsilon(1e-12));
  CHECK(norm == doctest::Approx(closed).epsilon(g.dxi() * g.dxi()));
}

TEST_CASE("noise guard") {
  const GridSpec g{1024, 32.0, 2.0};
  const double cap = max_admissible_sigma(g);
  CHECK(cap == doctest::Approx(std::log(kDefaultNoiseTolerance / std::numeric_limits<double>::epsilon()) / g.xi_max()));
  CHECK_NOTHROW(check_noise_guard(g, 0.99 * cap));
  CHECK_THROWS_AS(check_noise_guard(g, 1.01 * cap), NoiseGuardError);
  CHECK_THROWS_AS(check_noise_guard(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(gevrey_norm(SpectralField(g), {0.5, 1.0}), NoiseGuardError);
}

TEST_CASE("apply_lambda") {
  const GridSpec g{128, 8.0, 2.0};
  const auto f = random_modes(g, 40, 2);
  CHECK(max_diff(apply_lambda(f, 0.0), f) == 0.0);
  const auto single = SpectralField::single_mode(g, -7, Complex{1.5, 0.5});
  CHECK(std::abs(apply_lambda(single, 0.2).mode(-7) - single.mode(-7) * std::exp(0.2 * std::abs(g.xi(-7)))) < 1e-14);
  const auto twice = apply_lambda(apply_lambda(f, 0.1), 0.25);
  const auto once = apply_lambda(f, 0.35);
  CHECK(max_diff(twice, once) < 1e-12 * once.max_abs());
}

TEST_CASE("embedding constants") {
  const GridSpec g{1024, 32.0, 2.0};
  CHECK(embedding_constant({0.3, 1.0}, {0.3, 1.0}, g) == 1.0);
  CHECK(embedding_constant({0.3, 1.0}, {0.3, 0.0}, g) == 1.0);

  // sup_xi e^{-0.25|xi|}(1 + xi^2) by a dense scan.
  double scan = 0.0;
  for (double xi = 0.0; xi <= g.xi_max(); xi += 1e-4)
    scan = std::max(scan, std::exp(-0.25 * xi) * (1.0 + xi * xi));
  const double c = embedding_constant({0.5, 0.0}, {0.25, 2.0}, g);
  CHECK(c <= scan * (1.0 + 1e-12));
  CHECK(c >= scan * (1.0 - 1e-3));

  CHECK_THROWS_AS(embedding_constant({0.2, 1.0}, {0.3, 1.0}, g), std::invalid_argument);
  CHECK_THROWS_AS(embedding_constant({0.2, 1.0}, {0.2, 2.0}, g), std::invalid_argument);
}

TEST_CASE("embedding inequality holds on random fields") {
  const GridSpec g{256, 16.0, 2.0};
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto f = random_modes(g, 100, seed);
    const GevreyParams from{0.4, 1.0};
    const GevreyParams to{0.1, 2.5};
    CHECK(gevrey_norm(f, to) <= embedding_constant(from, to, g) * gevrey_norm(f, from) * (1.0 + 1e-12));
  }
}

TEST_CASE("algebra ratio for single modes") {
  const GridSpec g{64, 4.0, 2.0};
  const double root = std::sqrt(2.0 * g.half_length);
  const auto one = SpectralField::single_mode(g, 0, 3.0);
  CHECK(algebra_defect(one, one, {0.2, 1.0}) == doctest::Approx(1.0 / root).epsilon(1e-13));

  const int k = 3;
  const double xi = g.xi(k);
  const auto wave = SpectralField::single_mode(g, k, Complex{0.5, -1.0});
  const double expected = japanese_bracket(2.0 * xi) / (root * std::pow(japanese_bracket(xi), 2.0));
  CHECK(algebra_defect(wave, wave, {0.4, 1.0}) == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(algebra_defect(wave, wave, {0.4, 0.5}), std::invalid_argument);
}

TEST_CASE("algebra ratio counts the full product spectrum") {
  // Modes 12 and 13 multiply to mode 25, beyond the n = 32 grid.
  const GridSpec g{32, std::numbers::pi, 2.0};
  const auto u = SpectralField::single_mode(g, 12, 1.0);
  const auto v = SpectralField::single_mode(g, 13, 1.0);
  const double expected = japanese_bracket(25.0) / (std::sqrt(2.0 * std::numbers::pi) * japanese_bracket(12.0) * japanese_bracket(13.0));
  CHECK(algebra_defect(u, v, {0.0, 1.0}) == doctest::Approx(expected).epsilon(1e-13));
}

}  // TEST_SUITE
