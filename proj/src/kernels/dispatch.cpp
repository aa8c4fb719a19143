#include <cstdlib>
#include <stdexcept>
#include <string>

#include "blowup/kernels.hpp"

namespace blowup::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("BLOWUP_PROFILES_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    if (want == "neon" && isa_available(Isa::neon)) return Isa::neon;
  }
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

void require(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
  }
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(BLOWUP_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(BLOWUP_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::complex<double> digamma_partial_sum(Isa isa, std::complex<double> z, std::size_t n) {
  require(isa);
  switch (isa) {
#if defined(BLOWUP_HAVE_AVX2)
    case Isa::avx2:
      return avx2::digamma_partial_sum(z, n);
#endif
#if defined(BLOWUP_HAVE_NEON)
    case Isa::neon:
      return neon::digamma_partial_sum(z, n);
#endif
    default:
      return scalar::digamma_partial_sum(z, n);
  }
}

std::complex<double> half_gap_partial_sum(Isa isa, std::complex<double> z, std::size_t n) {
  require(isa);
  switch (isa) {
#if defined(BLOWUP_HAVE_AVX2)
    case Isa::avx2:
      return avx2::half_gap_partial_sum(z, n);
#endif
#if defined(BLOWUP_HAVE_NEON)
    case Isa::neon:
      return neon::half_gap_partial_sum(z, n);
#endif
    default:
      return scalar::half_gap_partial_sum(z, n);
  }
}

Moments profile_moments(Isa isa, const MomentInput& in) {
  require(isa);
  const std::size_t n = in.weight.size();
  if (in.z.size() != n || in.eta_re.size() != n || in.eta_im.size() != n ||
      in.deta_re.size() != n || in.deta_im.size() != n) {
    throw std::invalid_argument("profile_moments: span lengths differ");
  }
  switch (isa) {
#if defined(BLOWUP_HAVE_AVX2)
    case Isa::avx2:
      return avx2::profile_moments(in);
#endif
#if defined(BLOWUP_HAVE_NEON)
    case Isa::neon:
      return neon::profile_moments(in);
#endif
    default:
      return scalar::profile_moments(in);
  }
}

std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n) {
  return digamma_partial_sum(active_isa(), z, n);
}

std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n) {
  return half_gap_partial_sum(active_isa(), z, n);
}

Moments profile_moments(const MomentInput& in) { return profile_moments(active_isa(), in); }

}  // namespace blowup::kernels
