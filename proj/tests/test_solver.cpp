#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "gnls/gevrey.hpp"
#include "gnls/solver.hpp"
#include "test_support.hpp"

using namespace gnls;
using test_support::max_diff;

namespace {

SolverConfig cubic() {
  SolverConfig cfg;
  cfg.contraction_constant = 0.845;
  return cfg;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.p = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.quadrature_nodes = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.picard_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("contraction delta") {
  CHECK(contraction_delta(1.0, 3, 1.0) == doctest::Approx(0.45));
  CHECK(contraction_delta(2.0, 3, 1.0) == doctest::Approx(0.1125));
  CHECK(contraction_delta(1.0, 3, 2.0) < contraction_delta(1.0, 3, 1.0));
  CHECK_THROWS_AS(contraction_delta(0.0, 3, 1.0), std::invalid_argument);
}

TEST_CASE("initial data") {
  const GridSpec g{1024, 32.0, 2.0};
  CHECK(InitialDataSpec::make(InitialDataKind::sech, 1.0, 2.0).known_radius.value() ==
        doctest::Approx(std::numbers::pi));
  CHECK(InitialDataSpec::make(InitialDataKind::lorentzian, 1.0, 0.5).known_radius.value() == doctest::Approx(0.5));
  CHECK_FALSE(InitialDataSpec::make(InitialDataKind::gaussian).known_radius.has_value());
  CHECK(parse_initial_data_kind("plane_wave") == InitialDataKind::plane_wave);
  CHECK_FALSE(parse_initial_data_kind("soliton").has_value());

  // ||sech||^2 = 2; the periodized Lorentzian has coefficients pi e^{-|xi|} / sqrt(2L).
  CHECK(InitialDataSpec::make(InitialDataKind::sech).sample(g).l2_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  double lorentz = 0.0;
  for (int k = g.min_mode(); k <= g.max_mode(); ++k)
    lorentz += std::pow(std::numbers::pi * std::exp(-std::abs(g.xi(k))), 2) / (2.0 * g.half_length);
  CHECK(std::pow(InitialDataSpec::make(InitialDataKind::lorentzian).sample(g).l2_norm(), 2) ==
        doctest::Approx(lorentz).epsilon(1e-12));

  const auto a = random_bandlimited(g, 8, 3);
  const auto b = random_bandlimited(g, 8, 3);
  CHECK(max_diff(a, b) == 0.0);
  CHECK(a.mode(9) == Complex{0.0, 0.0});
  CHECK(a.mode(-8) != Complex{0.0, 0.0});
}

TEST_CASE("trajectory invariants") {
  const GridSpec g{16, 1.0, 2.0};
  Trajectory t;
  t.append(0.0, SpectralField(g));
  t.append(0.5, SpectralField(g));
  CHECK_NOTHROW(t.validate());
  CHECK(t.nearest_index(0.4) == 1);
  t.append(0.5, SpectralField(g));
  CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("Duhamel map of the zero candidate is the free flow") {
  const GridSpec g{64, 8.0, 2.0};
  const auto f = test_support::random_modes(g, 10, 4);
  Trajectory zero = free_trajectory(f, 0.3, 9);
  for (auto& s : zero.states) s = SpectralField(g);
  const auto out = duhamel_apply(zero, f, cubic());
  for (std::size_t j = 0; j < out.size(); ++j) CHECK(max_diff(out.states[j], free_evolution(f, out.times[j])) == 0.0);

  const auto none = duhamel_apply(zero, SpectralField(g), cubic());
  for (const auto& s : none.states) CHECK(s.max_abs() == 0.0);
}

TEST_CASE("Duhamel quadrature converges at second order") {
  // Constant single-mode candidate: the integral of e^{-i xi^2 (t - tau)} |a|^2 a
  // over [0, t] is |a|^2 a (1 - e^{-i xi^2 t}) / (i xi^2).
  const GridSpec g{16, std::numbers::pi, 2.0};
  const int k = 3;
  const double xi = g.xi(k);
  const double root = std::sqrt(2.0 * g.half_length);
  const Complex a{0.4, 0.1};
  const auto f = SpectralField::single_mode(g, k, a * root);
  const double delta = 0.3;
  auto error_with = [&](int nodes) {
    Trajectory cand = free_trajectory(f, delta, nodes);
    for (auto& s : cand.states) s = f;
    const auto out = duhamel_apply(cand, f, cubic());
    const double t = out.times.back();
    const Complex integral = std::norm(a) * a * (1.0 - std::polar(1.0, -xi * xi * t)) / (Complex{0.0, 1.0} * xi * xi);
    const Complex exact = a * std::polar(1.0, -xi * xi * t) - Complex{0.0, 1.0} * integral;
    return std::abs(out.states.back().mode(k) / root - exact);
  };
  const double e17 = error_with(17);
  const double e33 = error_with(33);
  CHECK(e33 < 1e-3);
  CHECK(e17 / e33 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Picard on zero data") {
  const GridSpec g{64, 8.0, 2.0};
  const auto r = picard_solve(SpectralField(g), {0.0, 1.0}, cubic(), 0.5);
  CHECK(r.iterations == 1);
  for (const auto& s : r.trajectory.states) CHECK(s.max_abs() == 0.0);
}

TEST_CASE("Picard reproduces a plane wave") {
  const GridSpec g{16, std::numbers::pi, 2.0};
  const double a = 0.1;
  const int k = 2;
  const double xi = g.xi(k);
  const double omega = xi * xi + a * a;
  const auto f = SpectralField::single_mode(g, k, a * std::sqrt(2.0 * g.half_length));
  const auto r = picard_solve(f, {0.0, 1.0}, cubic(), 0.5);
  for (std::size_t j = 0; j < r.trajectory.size(); ++j) {
    const Complex exact = f.mode(k) * std::polar(1.0, -omega * r.trajectory.times[j]);
    CHECK(std::abs(r.trajectory.states[j].mode(k) - exact) < 1e-9);
  }
}

TEST_CASE("weak nonlinearity stays near the free flow") {
  const GridSpec g{256, 16.0, 2.0};
  const auto f = InitialDataSpec::make(InitialDataKind::gaussian, 1e-3).sample(g);
  const double delta = contraction_delta(gevrey_norm(f, {0.0, 1.0}), 3, 0.845);
  const auto r = picard_solve(f, {0.0, 1.0}, cubic(), std::min(delta, 1.0));
  for (std::size_t j = 0; j < r.trajectory.size(); ++j)
    CHECK((r.trajectory.states[j] - free_evolution(f, r.trajectory.times[j])).l2_norm() < 1e-6);
}

TEST_CASE("Picard detects a non-contracting step") {
  const GridSpec g{64, 8.0, 2.0};
  const auto f = InitialDataSpec::make(InitialDataKind::sech, 3.0).sample(g);
  SolverConfig cfg = cubic();
  cfg.max_picard_iters = 30;
  CHECK_THROWS_AS(picard_solve(f, {0.0, 1.0}, cfg, 2.0), SolverError);
}

TEST_CASE("split-step conserves mass and reproduces a plane wave") {
  const GridSpec g{16, std::numbers::pi, 2.0};
  const double a = 0.3;
  const int k = 1;
  const auto f = SpectralField::single_mode(g, k, a * std::sqrt(2.0 * g.half_length));
  SolverConfig cfg = cubic();
  cfg.dt_reference = 1e-2;
  const auto traj = splitstep_solve(f, 1.0, cfg);
  const double omega = 1.0 + a * a;
  CHECK(std::abs(traj.states.back().mode(k) - f.mode(k) * std::polar(1.0, -omega)) < 1e-13);

  const GridSpec big{256, 16.0, 2.0};
  const auto s = InitialDataSpec::make(InitialDataKind::sech).sample(big);
  cfg.dt_reference = 1e-3;
  const auto run = splitstep_solve(s, 1.0, cfg, 10);
  for (const auto& state : run.states) CHECK(std::abs(state.l2_norm() / s.l2_norm() - 1.0) < 1e-10);
}

TEST_CASE("split-step rejects an unresolved linear phase") {
  const GridSpec g{1024, 32.0, 2.0};
  SolverConfig cfg = cubic();
  cfg.dt_reference = 1e-2;
  try {
    splitstep_solve(InitialDataSpec::make(InitialDataKind::sech).sample(g), 1.0, cfg);
    FAIL("expected StepTooLarge");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverError::Kind::StepTooLarge);
  }
}

TEST_CASE("split-step agrees with Picard inside one step") {
  const GridSpec g{256, 16.0, 2.0};
  const auto f = InitialDataSpec::make(InitialDataKind::sech).sample(g);
  const SolverConfig cfg = cubic();
  const double delta = contraction_delta(gevrey_norm(f, {0.0, 1.0}), 3, cfg.contraction_constant);
  const auto picard = picard_solve(f, {0.0, 1.0}, cfg, delta);
  SolverConfig fine = cfg;
  fine.dt_reference = 1e-4;
  const std::size_t mid = picard.trajectory.size() / 2;
  const auto ref = splitstep_solve(f, picard.trajectory.times[mid], fine);
  CHECK((picard.trajectory.states[mid] - ref.states.back()).l2_norm() < 1e-5);
}

TEST_CASE("continuation") {
  const GridSpec g{256, 16.0, 2.0};
  const SolverConfig cfg = cubic();
  const auto f = InitialDataSpec::make(InitialDataKind::sech).sample(g);
  const double delta = contraction_delta(gevrey_norm(f, {0.0, 1.0}), 3, cfg.contraction_constant);

  SUBCASE("short horizon is a single Picard solve") {
    const auto run = continue_solution(f, 0.5 * delta, {0.0, 1.0}, cfg);
    const auto direct = picard_solve(f, {0.0, 1.0}, cfg, 0.5 * delta);
    CHECK(run.segments.size() == 1);
    REQUIRE(run.trajectory.size() == direct.trajectory.size());
    CHECK(max_diff(run.trajectory.states.back(), direct.trajectory.states.back()) == 0.0);
  }
  SUBCASE("zero data") {
    const auto run = continue_solution(SpectralField(g), 3.0, {0.1, 1.0}, cfg);
    for (const auto& s : run.trajectory.states) CHECK(s.max_abs() == 0.0);
    CHECK(run.trajectory.times.back() == 3.0);
  }
  SUBCASE("boundary callback and norm ceiling") {
    int calls = 0;
    const auto run = continue_solution(f, 0.5, {0.0, 1.0}, cfg, [&](double, const SpectralField&) { ++calls; });
    CHECK(calls == static_cast<int>(run.segments.size()) + 1);
    SolverConfig low = cfg;
    low.norm_ceiling = 0.1;
    try {
      continue_solution(f, 0.5, {0.0, 1.0}, low);
      FAIL("expected BlowupSuspected");
    } catch (const SolverError& e) {
      CHECK(e.kind() == SolverError::Kind::BlowupSuspected);
    }
  }
}

}  // TEST_SUITE
