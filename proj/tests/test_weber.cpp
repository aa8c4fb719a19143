#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blowup/errors.hpp"
#include "blowup/specfun.hpp"
#include "blowup/weber.hpp"
#include "support.hpp"

using namespace blowup;
using namespace blowup::weber;
using testing_support::named;
using testing_support::rel_err;

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI{0.0, 1.0};

// -f'' - x^2 f / 4 - lambda f by a five-point stencil.
template <class F>
cplx ode_defect(F&& f, double x, cplx lambda, double step) {
  const cplx d2 = (-f(x + 2 * step) + 16.0 * f(x + step) - 30.0 * f(x) + 16.0 * f(x - step) - f(x - 2 * step)) /
                  (12.0 * step * step);
  return -d2 - 0.25 * x * x * f(x) - lambda * f(x);
}
}  // namespace

TEST_CASE("D_nu at the origin") {
  const cplx half = d_nu_integral(-0.5, 0.0);
  CHECK(rel_err(half, std::sqrt(kPi) * std::pow(2.0, -0.25) / specfun::gamma(0.75)) < 1e-12);
  CHECK(rel_err(d_nu_integral(-1.0, 0.0), std::sqrt(kPi / 2.0)) < 1e-12);
  const DValue z0 = d_at_zero(0.0);
  CHECK(std::abs(z0.value - 1.0) < 1e-14);
  CHECK(std::abs(z0.derivative) < 1e-15);
  const DValue zh = d_at_zero(-0.5);
  CHECK(rel_err(zh.derivative, -std::sqrt(kPi) * std::pow(2.0, 0.25) / specfun::gamma(0.25)) < 1e-13);
  const cplx nu(-0.4, 0.9);
  const DValue q = d_nu_with_derivative(nu, 0.0);
  CHECK(rel_err(q.value, d_at_zero(nu).value) < 1e-8);
  CHECK(rel_err(q.derivative, d_at_zero(nu).derivative) < 1e-8);
}

TEST_CASE("D_nu against the oracle") {
  CHECK(rel_err(d_nu_integral({-0.3, 0.7}, {1.0, -2.0}), named("d_nu(-0.3+0.7i,1-2i)")) < 1e-11);
  CHECK(rel_err(d_nu(0.5, {1.0, 1.0}), named("d_nu(0.5,1+i)")) < 1e-11);
  CHECK(rel_err(d_nu({-0.4, 0.9}, {0.6, 0.2}), named("d_nu(-0.4+0.9i,0.6+0.2i)")) < 1e-11);
  CHECK_THROWS_AS(d_nu_integral(0.2, 1.0), DomainError);
}

TEST_CASE("D_0 is the Gaussian") {
  CHECK(std::abs(d_nu(0.0, 2.0) - std::exp(-1.0)) < 1e-9);
  for (cplx z : {cplx{0.5, 0.5}, cplx{-1.2, 0.3}, cplx{3.0, -1.0}}) {
    CHECK(std::abs(d_nu(0.0, z) - std::exp(-z * z / 4.0)) < 1e-9);
  }
  const DValue d = d_nu_with_derivative(0.0, 0.0);
  CHECK(std::abs(d.value - 1.0) < 1e-12);
  CHECK(std::abs(d.derivative) < 1e-12);
}

TEST_CASE("recurrence agrees with the integral on -1 < Re nu < 0") {
  for (cplx nu : {cplx{-0.3, 0.2}, cplx{-0.7, -1.1}, cplx{-0.5, 2.0}}) {
    for (cplx z : {cplx{0.4, -0.3}, cplx{1.5, 0.5}}) {
      // D_nu = z D_{nu-1} - (nu-1) D_{nu-2}, both on the integral side.
      const cplx rec = z * d_nu_integral(nu - 1.0, z) - (nu - 1.0) * d_nu_integral(nu - 2.0, z);
      CHECK(rel_err(rec, d_nu_integral(nu, z)) < 1e-8);
    }
  }
}

TEST_CASE("v and v* boundary values") {
  for (cplx lam : {cplx{-2.0, -0.1}, cplx{0.5, 0.3}, cplx{-0.2, -0.45}}) {
    const cplx v0 = std::sqrt(kPi) * std::pow(cplx{2.0}, 0.5 * kI * lam - 0.25) / specfun::gamma(0.75 - 0.5 * kI * lam);
    const cplx v0p = -std::exp(-kI * kPi / 4.0) * std::sqrt(kPi) * std::pow(cplx{2.0}, 0.5 * kI * lam + 0.25) /
                     specfun::gamma(0.25 - 0.5 * kI * lam);
    const cplx s0 = std::sqrt(kPi) * std::pow(cplx{2.0}, -0.5 * kI * lam - 0.25) / specfun::gamma(0.75 + 0.5 * kI * lam);
    CHECK(rel_err(v_at_zero(lam).value, v0) < 1e-13);
    CHECK(rel_err(v_at_zero(lam).derivative, v0p) < 1e-13);
    CHECK(rel_err(v_star_at_zero(lam).value, s0) < 1e-13);
    const DValue q = v(0.0, lam);
    CHECK(rel_err(q.value, v0) < 1e-10);
    CHECK(rel_err(q.derivative, v0p) < 1e-10);
  }
}

TEST_CASE("v and v* against the oracle") {
  const DValue a = v(3.0, {-2.0, -0.1});
  CHECK(rel_err(a.value, named("v(3,-2-0.1i)")) < 1e-11);
  CHECK(rel_err(a.derivative, named("v'(3,-2-0.1i)")) < 1e-11);
  const DValue b = v_star(2.0, {-1.0, -0.2});
  CHECK(rel_err(b.value, named("v*(2,-1-0.2i)")) < 1e-11);
  CHECK(rel_err(b.derivative, named("v*'(2,-1-0.2i)")) < 1e-11);
  CHECK(rel_err(v(40.0, {-2.0, -0.1}).value, named("v(40,-2-0.1i)")) < 1e-10);
  CHECK(rel_err(v(-40.0, {-2.0, -0.1}).value, named("v(-40,-2-0.1i)")) < 1e-10);
}

TEST_CASE("real lambda: v* is the conjugate of v") {
  for (double lam : {-1.5, 0.0, 0.8}) {
    for (double x : {-2.0, 0.0, 0.7, 3.0}) {
      CHECK(std::abs(v_star(x, lam).value - std::conj(v(x, lam).value)) < 1e-12 * std::abs(v(x, lam).value));
    }
  }
}

TEST_CASE("v solves the inverted oscillator equation") {
  const double step = 0.01;
  for (cplx lam : {cplx{-1.0, -0.1}, cplx{0.5, -0.4}, cplx{-2.0, -0.8}, cplx{0.0, -0.6}}) {
    for (double x = -3.0; x <= 3.0; x += 0.75) {
      auto f = [&](double y) { return v(y, lam).value; };
      CHECK(std::abs(ode_defect(f, x, lam, step)) <= 1e-5 * (1.0 + std::abs(f(x))));
    }
  }
}

TEST_CASE("w is v at scaled argument") {
  const cplx lam(-2.0, -0.1);
  CHECK(std::abs(w(1.3, lam, 1.0).value - v(1.3, lam).value) == 0.0);
  CHECK(std::abs(w(0.0, lam, 0.37).value - v(0.0, lam).value) < 1e-14);
  const double h = 0.5, step = 0.01;
  for (double x : {0.5, 1.0, 2.0}) {
    auto f = [&](double y) { return w(y, lam, h).value; };
    const cplx d2 = (-f(x + 2 * step) + 16.0 * f(x + step) - 30.0 * f(x) + 16.0 * f(x - step) - f(x - 2 * step)) /
                    (12.0 * step * step);
    const cplx res = -d2 - 0.25 * h * h * x * x * f(x) - h * lam * f(x);
    CHECK(std::abs(res) <= 1e-5 * std::max(1.0, std::abs(f(x))));
    CHECK(rel_err(w_star(x, lam, h).value, v_star(std::sqrt(h) * x, lam).value) < 1e-14);
  }
  CHECK_THROWS_AS(w(1.0, lam, 0.0), DomainError);
}

TEST_CASE("connection formula") {
  CHECK(connection_residual(0.0, 1.0) < 1e-12);
  CHECK(connection_residual(-0.5, 1.3) <= 1e-7);
  CHECK(connection_residual({-0.25, 0.5}, {0.7, -0.2}) <= 1e-7);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-0.95, -0.05), im(-1.5, 1.5), zr(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const cplx nu(re(rng), im(rng)), z(zr(rng), zr(rng));
    CHECK(connection_residual(nu, z) <= 1e-9);
  }
}

TEST_CASE("Wronskians") {
  const cplx lam(-3.0, -0.05);
  const WronskianReport r = wronskian_check(lam, 1.0);
  const double scale = std::abs(std::exp(kPi * lam / 2.0));
  CHECK(std::abs(r.closed_v_vstar - kI * std::exp(kPi * lam / 2.0)) < 1e-15 * scale);
  CHECK(std::abs(r.numeric_v_vstar - r.closed_v_vstar) <= 1e-8 * scale);
  CHECK(rel_err(r.numeric_v_vminus, r.closed_v_vminus) <= 1e-8);
  const WronskianReport a = wronskian_check({-1.0, -0.3}, 0.3), b = wronskian_check({-1.0, -0.3}, 2.1);
  CHECK(std::abs(a.numeric_v_vstar - b.numeric_v_vstar) <= 1e-8 * std::abs(a.closed_v_vstar));
  CHECK(std::abs(a.numeric_v_vminus - b.numeric_v_vminus) <= 1e-8 * std::abs(a.closed_v_vminus));
}

TEST_CASE("far-field forms") {
  const cplx lam(-2.0, -0.1);
  const AsymptoticValue p = v_asym_plus(40.0, lam);
  CHECK(std::abs(v(40.0, lam).value - p.value) <= 10.0 * p.error_bound);
  const AsymptoticValue m = v_asym_minus(-40.0, lam);
  CHECK(std::abs(v(-40.0, lam).value - m.value) <= 10.0 * m.error_bound);
  // |v_asym_plus| behaves like x^{sigma-1/2} with sigma = -Im lambda.
  const double ratio = std::abs(v_asym_plus(80.0, lam).value) / std::abs(v_asym_plus(40.0, lam).value);
  CHECK(ratio == doctest::Approx(std::pow(2.0, -lam.imag() - 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(v_asym_plus(-1.0, lam), DomainError);
  CHECK_THROWS_AS(v_asym_minus(1.0, lam), DomainError);
}

TEST_CASE("configuration is validated") {
  QuadratureConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(v(1.0, {-1.0, -0.1}, bad), DomainError);
  bad = {};
  bad.n_nodes = 2;
  CHECK_THROWS_AS(d_nu(-0.5, 1.0, bad), DomainError);
  CHECK_THROWS_AS(v(std::nan(""), {-1.0, -0.1}), DomainError);
}

TEST_CASE("large |lambda| beyond the turning point needs a looser tolerance") {
  const cplx lam(-10.0, -0.001);
  QuadratureConfig loose;
  loose.rel_tol = 1e-6;
  const DValue a = v(15.8, lam, loose);
  CHECK(std::isfinite(std::abs(a.value)));
}
