#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "gnls/multilinear.hpp"

using namespace gnls;

TEST_SUITE("multilinear") {

TEST_CASE("compensated sum recovers cancelled digits") {
  const std::vector<double> v = {1.0, 1e100, 1.0, -1e100};
  CHECK(compensated_sum(v) == 2.0);
  const std::vector<double> small(1000, 0.1);
  CHECK(compensated_sum(small) == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("tuple validation") {
  CHECK_THROWS_AS(lemma6_evaluate({{1.0}, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(lemma6_evaluate({{1.0, 2.0}, -1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(lemma6_evaluate({{1.0, 2.0}, 1.0, 1.5}), std::invalid_argument);
}

TEST_CASE("same-sign frequencies give a zero left side") {
  const auto e = lemma6_evaluate({{0.5, 2.0, 3.0, 0.1}, 0.7, 0.5});
  CHECK(e.lhs == 0.0);
  CHECK(e.margin == doctest::Approx(e.rhs));
  CHECK(e.margin >= 0.0);
}

TEST_CASE("two opposite frequencies") {
  const auto e = lemma6_evaluate({{1.0, -1.0}, 1.0, 1.0});
  const double e2 = std::exp(2.0);
  CHECK(e.lhs == doctest::Approx(e2 - 1.0).epsilon(1e-14));
  CHECK(e.rhs == doctest::Approx(4.0 * e2).epsilon(1e-14));
  CHECK(e.margin == doctest::Approx(3.0 * e2 + 1.0).epsilon(1e-14));
  CHECK(lemma6_margin({{1.0, -1.0}, 1.0, 1.0}) == doctest::Approx(23.1672).epsilon(1e-5));
}

TEST_CASE("theta = 0 bound") {
  // Each nonzero min term contributes 1.
  const auto e = lemma6_evaluate({{3.0, -1.0, 0.5}, 0.4, 0.0});
  CHECK(e.rhs == doctest::Approx(3.0 * std::exp(0.4 * 4.5)));
}

TEST_CASE("huge exponents switch to the scaled margin") {
  std::vector<double> etas = {400.0, -350.0, 300.0, -200.0};
  const FrequencyTuple t{etas, 2.0, 0.5};
  const auto e = lemma6_evaluate(t);
  CHECK(e.log_space);
  CHECK(std::isfinite(e.scaled_margin));
  CHECK(e.scaled_margin >= 0.0);
  CHECK(lemma6_margin(t) == e.scaled_margin);
}

TEST_CASE("random tuples satisfy the inequality") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> eta(-10.0, 10.0);
  std::uniform_real_distribution<double> sig(0.0, 2.0);
  const double thetas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int trial = 0; trial < 5000; ++trial) {
    FrequencyTuple t;
    t.etas.resize(2 + trial % 6);
    for (auto& e : t.etas) e = eta(rng);
    t.sigma = 2.0 - sig(rng);
    t.theta = thetas[trial % 5];
    REQUIRE(lemma6_evaluate(t).scaled_margin >= -1e-12);
  }
}

TEST_CASE("induction trace without cancellation") {
  const auto tr = lemma6_induction_trace({{1.0, 1.0, 1.0}, 0.5, 0.5});
  CHECK(std::abs(tr.first) < 1e-15);
  CHECK(std::abs(tr.second) < 1e-15);
}

TEST_CASE("induction trace telescopes") {
  const double sigma = 0.5;
  const auto tr = lemma6_induction_trace({{2.0, -1.0, -1.0}, sigma, 0.5});
  // sum |eta| = 4, |sum eta| = 0
  CHECK(tr.lhs == doctest::Approx(std::exp(4.0 * sigma) - 1.0).epsilon(1e-15));
  CHECK(tr.first + tr.second == doctest::Approx(std::exp(4.0 * sigma) - 1.0).epsilon(1e-14));
  CHECK(tr.first_within_bound());
  CHECK(tr.second_within_bound());
}

TEST_CASE("induction trace on random five-tuples") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> eta(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    FrequencyTuple t{{eta(rng), eta(rng), eta(rng), eta(rng), eta(rng)}, 0.8, 0.75};
    const auto tr = lemma6_induction_trace(t);
    CHECK(tr.identity_error() < 1e-12);
    CHECK(tr.first_within_bound());
    CHECK(tr.second_within_bound());
  }
  CHECK_THROWS_AS(lemma6_induction_trace({{1.0, 2.0}, 1.0, 0.5}), std::invalid_argument);
}

}  // TEST_SUITE
