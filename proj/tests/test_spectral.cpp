#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "gnls/spectral.hpp"
#include "test_support.hpp"

using namespace gnls;
using test_support::max_diff;
using test_support::random_modes;

TEST_SUITE("spectral") {

TEST_CASE("grid geometry") {
  const GridSpec g{16, std::numbers::pi, 2.0};
  CHECK(g.dxi() == doctest::Approx(1.0));
  CHECK(g.x(0) == doctest::Approx(-std::numbers::pi));
  CHECK(g.min_mode() == -8);
  CHECK(g.max_mode() == 7);
  for (int k = g.min_mode(); k <= g.max_mode(); ++k) CHECK(g.mode_at(g.index_of(k)) == k);
  CHECK_THROWS_AS(GridSpec({12, 1.0, 2.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({16, -1.0, 2.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({16, 1.0, 0.5}).validate(), std::invalid_argument);
}

TEST_CASE("zero field transforms to zero") {
  const GridSpec g{64, 8.0, 2.0};
  CHECK(to_spectral(SpatialField(g)).max_abs() == 0.0);
  CHECK(to_spatial(SpectralField(g)).max_abs() == 0.0);
}

TEST_CASE("plane wave has a single coefficient of modulus sqrt(2L)") {
  const GridSpec g{64, 8.0, 2.0};
  const double xi1 = std::numbers::pi / g.half_length;
  const auto f = to_spectral(SpatialField::from_function(g, [&](double x) { return std::polar(1.0, xi1 * x); }));
  CHECK(std::abs(f.mode(1)) == doctest::Approx(std::sqrt(2.0 * g.half_length)).epsilon(1e-13));
  for (int k = g.min_mode(); k <= g.max_mode(); ++k)
    if (k != 1) CHECK(std::abs(f.mode(k)) < 1e-12);
}

TEST_CASE("inverse of a single mode") {
  const GridSpec g{64, 8.0, 2.0};
  const auto u = to_spatial(SpectralField::single_mode(g, 2, 1.0));
  const double L = g.half_length;
  for (std::size_t j = 0; j < g.n_modes; ++j) {
    const Complex expected = std::polar(1.0, 2.0 * std::numbers::pi * g.x(j) / L) / std::sqrt(2.0 * L);
    CHECK(std::abs(u[j] - expected) < 1e-14);
  }
}

TEST_CASE("Gaussian coefficients match quadrature of the continuous transform") {
  const GridSpec g{1024, 32.0, 2.0};
  const auto f = to_spectral(SpatialField::from_function(g, [](double x) { return Complex{std::exp(-0.5 * x * x), 0.0}; }));
  const double L = g.half_length;
  for (int k : {0, 1, 5, 17, 40, -3, -29}) {
    const double xi = g.xi(k);
    const Complex transform = test_support::trapezoid(
        [&](double x) { return std::exp(-0.5 * x * x) * std::polar(1.0, -xi * x); }, -L, L, 40000);
    CHECK(std::abs(f.mode(k) * std::sqrt(2.0 * L) - transform) < 1e-10);
  }
}

TEST_CASE("round trip and Parseval") {
  const GridSpec g{128, 10.0, 2.0};
  const auto f = random_modes(g, 20, 7);
  const auto u = to_spatial(f);
  CHECK(max_diff(to_spectral(u), f) < 1e-13);
  CHECK(u.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-14));
}

TEST_CASE("conjugate maps to the transform of the conjugate") {
  const GridSpec g{64, 5.0, 2.0};
  const auto f = random_modes(g, 31, 3);
  auto u = to_spatial(f);
  for (auto& z : u.samples()) z = std::conj(z);
  CHECK(max_diff(f.conjugate(), to_spectral(u)) < 1e-13);
}

TEST_CASE("nonlinearity of a plane wave") {
  const GridSpec g{32, std::numbers::pi, 2.0};
  const Complex a{0.3, -0.4};
  const auto f = SpectralField::single_mode(g, 3, a * std::sqrt(2.0 * g.half_length));
  for (int p : {3, 5}) {
    const auto n = nonlinearity(f, p);
    CHECK(std::abs(n.mode(3) - std::pow(std::abs(a), p - 1) * f.mode(3)) < 1e-14);
    CHECK(n.l2_norm() == doctest::Approx(std::pow(std::abs(a), p - 1) * f.l2_norm()).epsilon(1e-13));
  }
  CHECK(nonlinearity(SpectralField(g), 3).max_abs() == 0.0);
}

TEST_CASE("cubic nonlinearity matches the direct triple convolution") {
  const GridSpec g{32, std::numbers::pi, 2.0};
  const auto f = random_modes(g, 4, 11);
  const auto n = nonlinearity(f, 3);
  const double scale = 1.0 / (2.0 * g.half_length);
  double worst = 0.0;
  for (int k = g.min_mode(); k <= g.max_mode(); ++k) {
    Complex sum{0.0, 0.0};
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        const int c = a + b - k;
        if (c < -4 || c > 4) continue;
        sum += f.mode(a) * f.mode(b) * std::conj(f.mode(c));
      }
    worst = std::max(worst, std::abs(scale * sum - n.mode(k)));
  }
  CHECK(worst < 1e-12 * n.max_abs());
}

TEST_CASE("quintic nonlinearity is exact on a band-limited field") {
  // Resolving |u|^4 u of band 3 needs modes up to 15; compare against a
  // product computed on a grid eight times finer.
  const GridSpec g{32, 4.0, 2.0};
  const GridSpec fine{256, 4.0, 2.0};
  const auto f = random_modes(g, 3, 5);
  SpectralField ff(fine);
  for (int k = -3; k <= 3; ++k) ff.mode(k) = f.mode(k);
  auto u = to_spatial(ff);
  for (auto& z : u.samples()) z *= std::norm(z) * std::norm(z);
  const auto reference = to_spectral(u);
  const auto n = nonlinearity(f, 5);
  for (int k = g.min_mode(); k <= g.max_mode(); ++k) CHECK(std::abs(n.mode(k) - reference.mode(k)) < 1e-12);
}

TEST_CASE("dealiased grid size") {
  const GridSpec g{64, 1.0, 2.0};
  CHECK(dealiased_size(g, 3) == 128);
  CHECK(dealiased_size(g, 5) == 192);
  CHECK(dealiased_size(g, 2) == 128);
  CHECK_THROWS_AS(require_odd_power(4), std::invalid_argument);
  CHECK_THROWS_AS(require_odd_power(1), std::invalid_argument);
}

TEST_CASE("padded samples round trip") {
  const GridSpec g{64, 6.0, 2.0};
  const auto f = random_modes(g, 31, 9);
  const auto samples = padded_samples(f, 160);
  CHECK(samples.size() == 160);
  CHECK(max_diff(from_padded_samples(g, samples), f) < 1e-13);
}

TEST_CASE("product of two plane waves") {
  const GridSpec g{32, std::numbers::pi, 2.0};
  const auto u = SpectralField::single_mode(g, 2, 1.0);
  const auto v = SpectralField::single_mode(g, -5, 1.0);
  const auto uv = product(u, v);
  CHECK(std::abs(uv.mode(-3) - 1.0 / std::sqrt(2.0 * g.half_length)) < 1e-14);
}

TEST_CASE("integrate_abs_power on a plane wave") {
  const GridSpec g{32, 2.0, 2.0};
  const double a = 0.7;
  const auto f = SpectralField::single_mode(g, 1, a * std::sqrt(2.0 * g.half_length));
  for (int q : {2, 4, 6})
    CHECK(integrate_abs_power(f, q) == doctest::Approx(2.0 * g.half_length * std::pow(a, q)).epsilon(1e-13));
}

TEST_CASE("free evolution") {
  const GridSpec g{64, 5.0, 2.0};
  const auto f = random_modes(g, 20, 21);
  CHECK(max_diff(free_evolution(f, 0.0), f) == 0.0);

  const auto single = SpectralField::single_mode(g, 4, Complex{0.5, 0.2});
  const double t = 0.37;
  const double xi = g.xi(4);
  const auto e = free_evolution(single, t);
  CHECK(std::abs(e.mode(4) - single.mode(4) * std::polar(1.0, -xi * xi * t)) < 1e-15);
  CHECK(std::abs(e.mode(4)) == doctest::Approx(std::abs(single.mode(4))));

  // phases reach xi_max^2 t ~ 550 rad, so agreement is limited to a few hundred ulps
  CHECK(max_diff(free_evolution(free_evolution(f, 0.3), 1.1), free_evolution(f, 1.4)) < 1e-12 * f.max_abs());
}

}  // TEST_SUITE
