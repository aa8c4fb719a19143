#include "blowup/kernels.hpp"

namespace blowup::kernels::scalar {

std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n) {
  double sr = 0.0, si = 0.0;
  const double x = z.real(), y = z.imag();
  for (std::size_t k = 0; k < n; ++k) {
    const double a = x + static_cast<double>(k);
    const double d = a * a + y * y;
    sr += 1.0 / static_cast<double>(k + 1) - a / d;
    si += y / d;
  }
  return {sr, si};
}

std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n) {
  double sr = 0.0, si = 0.0;
  const double x = z.real(), y = z.imag();
  for (std::size_t k = 0; k < n; ++k) {
    // (a + iy)(a + 1/2 + iy) = (a(a+1/2) - y^2) + i y (2a + 1/2)
    const double a = x + static_cast<double>(k);
    const double pr = a * (a + 0.5) - y * y;
    const double pi = y * (2.0 * a + 0.5);
    const double d = pr * pr + pi * pi;
    sr += pr / d;
    si -= pi / d;
  }
  return {sr, si};
}

Moments profile_moments(const MomentInput& in) {
  Moments m;
  const std::size_t n = in.weight.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = in.weight[j];
    const double er = in.eta_re[j], ei = in.eta_im[j];
    const double dr = in.deta_re[j], di = in.deta_im[j];
    m.mass += w * (er * er + ei * ei);
    m.grad += w * (dr * dr + di * di);
    m.virial += w * in.z[j] * (di * er - dr * ei);
  }
  return m;
}

}  // namespace blowup::kernels::scalar
