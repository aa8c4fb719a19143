#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/matching.hpp"
#include "blowup/solver.hpp"
#include "support.hpp"

using namespace blowup;
using namespace blowup::solver;
using testing_support::named;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sigma(h) matches the oracle") {
  for (const char* h : {"0.25", "0.5", "1", "2", "10", "100", "1000"}) {
    const double ref = named(std::string("sigma(h=") + h + ")").real();
    const RootResult r = solve_sigma(std::stod(h));
    CHECK(r.converged);
    CHECK(std::abs(r.value - ref) <= 1e-10 * ref);
    CHECK(r.bracket_lo <= r.value);
    CHECK(r.value <= r.bracket_hi);
  }
}

TEST_CASE("root quality at h = 1") {
  const RootResult r = solve_sigma(1.0);
  CHECK(r.residual <= 1e-12);
  CHECK(std::abs(matching::f_phase(r.value, 1.0, 1.0).f) <= 1e-12);
  CHECK(std::abs(matching::f_phase_reflected_form(r.value, 1.0, 1.0).f) <= 1e-9);
  // Observed in the paper's numerics, not proved there.
  CHECK(r.value > 0.0);
  CHECK(r.value < 0.5);
}

TEST_CASE("seeds") {
  CHECK(sigma_seed_small_h(0.5) == doctest::Approx(4.0 * std::exp(-2.0 * kPi)));
  CHECK(sigma_seed_large_h(10.0) == doctest::Approx(0.4));
  for (double hi : {1.0, 2.5, 7.0}) {
    CHECK(std::log(sigma_seed_small_h(1.0 / hi)) == doctest::Approx(std::log(2.0) - kPi * hi + std::log(hi)));
  }
  CHECK_THROWS_AS(sigma_seed_small_h(0.0), DomainError);
}

TEST_CASE("small-h structure sigma = seed (1 + O(h))") {
  double c_max = 0.0;
  for (double h : {0.5, 0.4, 0.3, 0.2, 0.15, 0.1}) {
    const double s = solve_sigma(h).value, seed = sigma_seed_small_h(h);
    c_max = std::max(c_max, std::abs(s - seed) / seed / h);
  }
  CHECK(c_max <= 3.0);
  MESSAGE("fitted C = " << c_max);
}

TEST_CASE("large-h expansion") {
  for (double h : {50.0, 100.0, 1000.0}) {
    CHECK(std::abs(solve_sigma(h).value - sigma_seed_large_h(h)) <= 5.0 / (h * h));
  }
}

TEST_CASE("exactly one sign change of f on a 200-point sigma grid") {
  for (double hi : {0.1, 0.8, 2.0, 4.5, 9.0}) {
    int changes = 0;
    double prev = matching::f_phase(0.0, hi, 1.0).f;
    for (int k = 1; k <= 200; ++k) {
      const double cur = matching::f_phase(k / 200.0, hi, 1.0).f;
      if ((prev < 0.0) != (cur < 0.0)) ++changes;
      prev = cur;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("critical exponent and its inverse") {
  CHECK(sigma_critical(3.0) == 0.0);
  CHECK(sigma_critical(5.0) == 0.25);
  CHECK(p_from_sigma(0.25) == doctest::Approx(5.0));
  CHECK(sigma_critical(1e12) == doctest::Approx(0.5));
  CHECK_THROWS_AS(sigma_critical(1.0), DomainError);
}

TEST_CASE("h for given p") {
  for (auto [p, key] : {std::pair{5.0, "h_for_p(5)"}, {4.0, "h_for_p(4)"}, {7.0, "h_for_p(7)"}}) {
    const RootResult r = solve_h_for_p(p);
    CHECK(r.converged);
    CHECK(std::abs(r.value - named(key).real()) <= 1e-8 * r.value);
    CHECK(std::abs(solve_sigma(r.value).value - sigma_critical(p)) <= 10.0 * 1e-11);
  }
  const double seed = h_seed_for_p(3.001);
  CHECK(seed == doctest::Approx(kPi / std::log(8000.0)));
  CHECK(std::abs(solve_h_for_p(3.001).value - seed) <= 0.25 * seed);
  CHECK_THROWS_AS(solve_h_for_p(3.0), DomainError);
}

TEST_CASE("sweep is monotone and ordered") {
  const auto rows = sweep_sigma(0.1, 6.0, 60, 4);
  REQUIRE(rows.size() == 60);
  CHECK(rows.front().h_inv == doctest::Approx(0.1));
  CHECK(rows.back().h_inv == doctest::Approx(6.0));
  CHECK(std::abs(rows.front().sigma - (0.5 - 0.1)) < 0.02);
  bool decreasing = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    decreasing = decreasing && rows[k].sigma < rows[k - 1].sigma;
    CHECK(rows[k].failure.empty());
  }
  CHECK(decreasing);
  const auto serial = sweep_sigma(0.1, 6.0, 60, 1);
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(serial[k].sigma == rows[k].sigma);
  CHECK_THROWS_AS(sweep_sigma(1.0, 0.5, 4), DomainError);
  CHECK_THROWS_AS(sweep_sigma(0.5, 1.0, 1), DomainError);
}

TEST_CASE("Figure 1 asymptote at h_inv = 3") {
  const double s = solve_sigma(1.0 / 3.0).value;
  CHECK(std::abs(std::log(s) - (std::log(2.0) - 3.0 * kPi + std::log(3.0))) <= 0.15);
}
