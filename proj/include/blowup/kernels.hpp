#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace blowup::kernels {

enum class Isa { scalar, avx2, neon };

/// ISA chosen at first use. BLOWUP_PROFILES_SIMD=scalar forces the
/// reference path.
Isa active_isa();
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

/// sum_{k<n} [1/(k+1) - 1/(z+k)]
std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n);
std::complex<double> digamma_partial_sum(Isa isa, std::complex<double> z, std::size_t n);

/// sum_{k<n} 1 / ((z+k)(z+k+1/2))
std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n);
std::complex<double> half_gap_partial_sum(Isa isa, std::complex<double> z, std::size_t n);

/// Weighted quadratic moments of a profile sampled at nodes z_j:
///   mass   = sum w |eta|^2
///   grad   = sum w |eta_z|^2
///   virial = sum w z Im(eta_z conj(eta))
struct Moments {
  double mass = 0.0;
  double grad = 0.0;
  double virial = 0.0;
};

struct MomentInput {
  std::span<const double> weight;
  std::span<const double> z;
  std::span<const double> eta_re;
  std::span<const double> eta_im;
  std::span<const double> deta_re;
  std::span<const double> deta_im;
};

Moments profile_moments(const MomentInput& in);
Moments profile_moments(Isa isa, const MomentInput& in);

namespace scalar {
std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n);
std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n);
Moments profile_moments(const MomentInput& in);
}  // namespace scalar

namespace avx2 {
std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n);
std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n);
Moments profile_moments(const MomentInput& in);
}  // namespace avx2

namespace neon {
std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n);
std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n);
Moments profile_moments(const MomentInput& in);
}  // namespace neon

}  // namespace blowup::kernels
