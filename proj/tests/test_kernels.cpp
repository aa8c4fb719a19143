#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowup/kernels.hpp"

using namespace blowup::kernels;
using cplx = std::complex<double>;

namespace {

std::vector<Isa> vector_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

struct MomentData {
  std::vector<double> w, z, er, ei, dr, di;
  MomentInput view() const { return {w, z, er, ei, dr, di}; }
};

MomentData random_moments(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  MomentData d;
  for (std::size_t i = 0; i < n; ++i) {
    d.w.push_back(std::abs(u(rng)));
    d.z.push_back(u(rng) * 10.0);
    d.er.push_back(u(rng));
    d.ei.push_back(u(rng));
    d.dr.push_back(u(rng));
    d.di.push_back(u(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("dispatch reports a usable ISA") {
  const Isa active = active_isa();
  CHECK(isa_available(active));
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_name(Isa::scalar) == "scalar");
  const char* env = std::getenv("BLOWUP_PROFILES_SIMD");
  if (env && std::string(env) == "scalar") CHECK(active == Isa::scalar);
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (!isa_available(isa)) CHECK_THROWS_AS(digamma_partial_sum(isa, cplx{1.0, 1.0}, 4), std::invalid_argument);
  }
  MESSAGE("active kernel ISA: " << isa_name(active));
}

TEST_CASE("series kernels agree with the scalar reference") {
  const cplx zs[] = {{0.3, 0.0}, {0.25, 2.5}, {-0.4, 0.7}, {7.0, -30.0}};
  for (Isa isa : vector_isas()) {
    for (cplx z : zs) {
      for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 1000u, 4097u}) {
        const cplx a = scalar::digamma_partial_sum(z, n), b = digamma_partial_sum(isa, z, n);
        CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
        const cplx c = scalar::half_gap_partial_sum(z, n), d = half_gap_partial_sum(isa, z, n);
        CHECK(std::abs(c - d) <= 1e-13 * std::max(1.0, std::abs(c)));
      }
    }
  }
}

TEST_CASE("moment kernel agrees with the scalar reference") {
  for (Isa isa : vector_isas()) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
      const MomentData d = random_moments(n, static_cast<unsigned>(n) + 1);
      const Moments a = scalar::profile_moments(d.view()), b = profile_moments(isa, d.view());
      CHECK(std::abs(a.mass - b.mass) <= 1e-13 * std::max(1.0, std::abs(a.mass)));
      CHECK(std::abs(a.grad - b.grad) <= 1e-13 * std::max(1.0, std::abs(a.grad)));
      CHECK(std::abs(a.virial - b.virial) <= 1e-13 * std::max(1.0, std::abs(a.virial)));
    }
  }
}

TEST_CASE("moment kernel on a hand-computed case") {
  const std::vector<double> w{0.5, 2.0}, z{1.0, -3.0}, er{1.0, 0.0}, ei{0.0, 2.0}, dr{0.0, 1.0}, di{1.0, 0.0};
  const MomentInput in{w, z, er, ei, dr, di};
  const Moments m = profile_moments(in);
  CHECK(m.mass == doctest::Approx(0.5 * 1.0 + 2.0 * 4.0));
  CHECK(m.grad == doctest::Approx(0.5 * 1.0 + 2.0 * 1.0));
  // Im(eta_z conj(eta)): (i)(1) -> 1 ; (1)(-2i) -> -2
  CHECK(m.virial == doctest::Approx(0.5 * 1.0 * 1.0 + 2.0 * -3.0 * -2.0));
}

TEST_CASE("mismatched spans are rejected") {
  const std::vector<double> a{1.0, 2.0}, b{1.0};
  const MomentInput in{a, a, a, a, a, b};
  CHECK_THROWS(profile_moments(in));
}
