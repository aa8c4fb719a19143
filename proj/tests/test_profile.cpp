#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blowup/errors.hpp"
#include "blowup/matching.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"
#include "support.hpp"

using namespace blowup;
using namespace blowup::profile;
using testing_support::rel_err;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

// Built once; each profile takes a fraction of a second.
const ProfileSolution& profile_p(int p) {
  static std::map<int, ProfileSolution> cache;
  auto it = cache.find(p);
  if (it == cache.end()) {
    const auto grid = symmetric_grid(1e-3, 400.0, 200);
    it = cache.emplace(p, build_profile(static_cast<double>(p), std::nullopt, grid)).first;
  }
  return it->second;
}
}  // namespace

TEST_CASE("spectral parameter sets") {
  const SpectralParams a = SpectralParams::from_p(5.0);
  CHECK(a.sigma == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(a.sigma_c == 0.25);
  CHECK(a.lambda == cplx(-1.0 / a.h, -a.sigma));
  const SpectralParams b = SpectralParams::from_h(a.h);
  CHECK(b.p == doctest::Approx(5.0).epsilon(1e-8));
  CHECK_THROWS_AS(SpectralParams::make(1.0, 0.2, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SpectralParams::make(5.0, 0.2, -1.0, 1.0), DomainError);
  CHECK(sigma_c_of_p(3.0) == 0.0);
  CHECK(sigma_c_of_p(5.0) == 0.25);
  CHECK(sigma_c_of_p(1e15) == doctest::Approx(0.5));
}

TEST_CASE("amplitude") {
  const SpectralParams P = SpectralParams::from_p(5.0);
  const cplx alpha = amplitude(P);
  const weber::DValue w0 = weber::v_at_zero(P.lambda);
  const cplx A = matching::a_gamma(P.sigma, P.h, 1.0);
  CHECK(std::abs(alpha) * std::abs(w0.value) ==
        doctest::Approx(std::pow(2.0 * std::sqrt(P.h) * std::abs(A), 1.0 / (P.p - 1.0))).epsilon(1e-10));
  CHECK(std::abs(std::remainder(std::arg(alpha) + std::arg(w0.value), 2.0 * kPi)) < 1e-10);
  // Off the root the quotient is not real.
  const SpectralParams off = SpectralParams::make(5.0, P.sigma + 0.05, P.h, 1.0);
  CHECK_THROWS_AS(amplitude(off), MatchError);
  CHECK_NOTHROW(amplitude(off, AmplitudeMode::relaxed));
}

TEST_CASE("small-h amplitude asymptotics") {
  for (double h : {0.3, 0.2, 0.1}) {
    const SpectralParams P = SpectralParams::from_h(h);
    const cplx alpha = amplitude(P);
    const cplx asym = std::pow(2.0, 1.0 / (P.p - 1.0)) * std::sqrt(2.0) * std::exp(kI * kPi / 8.0) * std::pow(h, -0.25) *
                      std::exp(-kPi / (4.0 * h)) * std::exp(0.5 * kI / h * std::log(1.0 / h)) * std::exp(-0.5 * kI / h);
    CHECK(rel_err(alpha, asym) <= 0.1 * h);
    const cplx phi0 = alpha * weber::v_at_zero(P.lambda).value;
    CHECK(std::abs(phi0 / std::pow(2.0, 1.0 / (P.p - 1.0)) - 1.0) <= 0.1 * h);
  }
}

TEST_CASE("profile structure") {
  const ProfileSolution& s = profile_p(5);
  REQUIRE(s.samples.size() == 400);
  for (std::size_t k = 0; k < s.samples.size() / 2; ++k) {
    const ProfileSample& a = s.samples[k];
    const ProfileSample& b = s.samples[s.samples.size() - 1 - k];
    CHECK(a.z == -b.z);
    CHECK(a.phi == b.phi);
    CHECK(std::abs(a.eta) == std::abs(b.eta));
  }
  // The chirp phase reaches ~1e5 rad at the grid edge; rounding of the phase sets the tolerance.
  for (const ProfileSample& q : s.samples) {
    const double chirp = 0.25 * s.params.h * q.z * q.z;
    CHECK(std::abs(q.eta - std::polar(1.0, -chirp) * q.phi) <= 1e-15 * (1.0 + chirp) * std::abs(q.phi));
  }
  CHECK(std::abs(s.evaluate(-1e-9).phi - s.evaluate(1e-9).phi) < 1e-8);
  CHECK(s.c1 == (kI * s.params.lambda - 0.5) * s.c0);
  // Entry by h reproduces entry by p.
  const std::vector<double> grid = symmetric_grid(0.1, 2.0, 4);
  const ProfileSolution t = build_profile(std::nullopt, s.params.h, grid);
  CHECK(rel_err(t.evaluate(1.0).phi, s.evaluate(1.0).phi) < 1e-8);
}

TEST_CASE("jump condition and its negative control") {
  for (int p : {4, 5, 7}) CHECK(jump_residual(profile_p(p)) <= 1e-8);
  const SpectralParams P = SpectralParams::from_p(5.0);
  const SpectralParams off = SpectralParams::make(5.0, P.sigma + 0.05, P.h, 1.0);
  const std::vector<double> grid = symmetric_grid(0.1, 2.0, 4);
  CHECK(jump_residual(build_profile(off, grid, {}, AmplitudeMode::relaxed)) > 1e-3);
}

TEST_CASE("bad inputs") {
  const std::vector<double> lopsided{-2.0, -1.0, 1.0, 3.0};
  CHECK_THROWS_AS(build_profile(5.0, std::nullopt, lopsided), GridError);
  const std::vector<double> grid = symmetric_grid(0.1, 2.0, 4);
  CHECK_THROWS_AS(build_profile(5.0, 2.0, grid), DomainError);
  CHECK_THROWS_AS(build_profile(std::nullopt, std::nullopt, grid), DomainError);
  CHECK_THROWS_AS(symmetric_grid(1.0, 0.5, 10), GridError);
  CHECK_THROWS_AS(ode_residual(profile_p(5), 1e-4), GridError);
}

TEST_CASE("linear equation away from the origin") {
  for (int p : {5, 7}) {
    const ProfileSolution& s = profile_p(p);
    for (double z : {0.2, -0.5, 1.0, 2.5, -5.0}) {
      CHECK(ode_residual(s, z) <= 1e-5 * (1.0 + std::abs(s.evaluate(z).phi)));
      CHECK(ode_residual_eta(s, z) <= 1e-5 * (1.0 + std::abs(s.evaluate(z).eta)));
    }
  }
  // Fourth order: halving the step divides the residual by about 16.
  const ProfileSolution& s = profile_p(5);
  const double coarse = ode_residual(s, 1.0, 0.1), fine = ode_residual(s, 1.0, 0.05);
  CHECK(coarse / fine == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("far field constant") {
  const ProfileSolution& s = profile_p(5);
  const double z = 50.0, sigma = s.params.sigma;
  const weber::AsymptoticValue lead = weber::v_asym_plus(std::sqrt(s.params.h) * z, s.params.lambda);
  const double band = lead.error_bound / std::abs(lead.value);
  const double predicted = std::abs(s.c0) * std::pow(z, sigma - 0.5);
  CHECK(std::abs(std::abs(s.evaluate(z).eta) - predicted) <= predicted * band);
  CHECK(std::abs(std::abs(s.evaluate(-z).eta) - predicted) <= predicted * band);
}

TEST_CASE("Pohozhaev identities at sigma = sigma_c") {
  const ProfileSolution& s = profile_p(5);
  const PohozhaevReport a = pohozhaev_report(s, 100.0), b = pohozhaev_report(s, 200.0);
  CHECK(a.sigma_positive);
  CHECK(a.kappa_positive);
  const double decay = std::pow(2.0, 2.0 * s.params.sigma - 2.0);
  CHECK(std::abs(b.final_truncated / a.final_truncated) == doctest::Approx(decay).epsilon(0.3));
  CHECK(std::abs(b.first / a.first) == doctest::Approx(decay).epsilon(0.3));
  CHECK(std::abs(b.third / a.third) == doctest::Approx(decay).epsilon(0.3));
  CHECK(std::abs(a.final_truncated) <= 10.0 * std::pow(100.0, 2.0 * s.params.sigma - 2.0));
  CHECK(std::abs(a.final_corrected) <= 1e-3 * std::abs(a.final_truncated));
  CHECK(b.mass_limit == doctest::Approx(b.c0_sq).epsilon(0.05));
  CHECK(b.virial_limit > 0.0);
  CHECK(b.virial_limit == doctest::Approx(s.params.kappa * b.c0_sq).epsilon(0.5));
}

TEST_CASE("energy vanishes at sigma = sigma_c") {
  const ProfileSolution& s = profile_p(5);
  const EnergyReport e = energy_report(s, 200.0);
  CHECK(std::abs(e.direct) <= 10.0 * e.grad_tail);
  CHECK(std::abs(e.identity_form - e.direct) <= 10.0 * e.grad_tail);
  CHECK(std::abs(energy(s)) <= 10.0 * energy_report(s, 400.0).grad_tail);
  const double ratio = mass_truncated(s, 200.0) / mass_truncated(s, 100.0);
  CHECK(ratio == doctest::Approx(std::pow(2.0, 2.0 * s.params.sigma)).epsilon(0.01));
}

TEST_CASE("scaling symmetry of the profile") {
  // phi_{h,kappa,sigma}(z) = mu^{1/(p-1)} phi_{h/mu^2, kappa/mu^2, sigma}(mu z)
  const SpectralParams P = SpectralParams::from_p(5.0);
  const double mu = 2.0;
  const SpectralParams Q = SpectralParams::make(P.p, P.sigma, P.h / (mu * mu), P.kappa / (mu * mu));
  const std::vector<double> grid = symmetric_grid(0.1, 2.0, 4);
  const ProfileSolution a = build_profile(P, grid), b = build_profile(Q, grid);
  for (double z : {0.0, 0.3, 1.0, -2.0, 7.0}) {
    const cplx lhs = a.evaluate(z).phi;
    const cplx rhs = std::pow(mu, 1.0 / (P.p - 1.0)) * b.evaluate(mu * z).phi;
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
  }
}

TEST_CASE("self-similar blow-up solution") {
  const ProfileSolution& s = profile_p(5);
  const double p = s.params.p;
  const BlowupCurve curve{1.0, s.params.h, s.params.kappa, 0.0};
  const double scale = 2.0 * s.params.h * curve.T_star;
  for (double x : {0.0, 0.4, -1.5}) {
    const cplx expect = std::pow(scale, -1.0 / (2.0 * (p - 1.0))) * s.evaluate(x / std::sqrt(scale)).eta;
    CHECK(std::abs(reconstruct_psi(curve, s, x, 0.0) - expect) <= 1e-12 * std::abs(expect));
  }
  const double c0 = std::abs(reconstruct_psi(curve, s, 0.0, 0.0)) * std::pow(curve.T_star, 1.0 / (2.0 * (p - 1.0)));
  for (double t : {0.3, 0.9, 0.999, 0.999999}) {
    const double c = std::abs(reconstruct_psi(curve, s, 0.0, t)) * std::pow(curve.T_star - t, 1.0 / (2.0 * (p - 1.0)));
    CHECK(c == doctest::Approx(c0).epsilon(1e-10));
  }
  CHECK(std::abs(reconstruct_psi(curve, s, 0.0, 1.0 - 1e-12)) > 10.0 * std::abs(reconstruct_psi(curve, s, 0.0, 0.0)));
  CHECK_THROWS_AS(reconstruct_psi(curve, s, 0.0, 1.0), DomainError);
  // psi_mu(x, t) = mu^{1/(p-1)} psi(mu x, mu^2 t) is the solution with T* / mu^2.
  const double mu = 1.7;
  const BlowupCurve shrunk{curve.T_star / (mu * mu), curve.h, curve.kappa, curve.tau0};
  for (auto [x, t] : {std::pair{0.2, 0.1}, {-0.7, 0.3}}) {
    const cplx lhs = std::pow(mu, 1.0 / (p - 1.0)) * reconstruct_psi(curve, s, mu * x, mu * mu * t);
    const cplx rhs = reconstruct_psi(shrunk, s, x, t);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
}
