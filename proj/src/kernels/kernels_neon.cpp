#include <arm_neon.h>

#include "blowup/kernels.hpp"

namespace blowup::kernels::neon {

std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t x = vdupq_n_f64(z.real());
  const float64x2_t y = vdupq_n_f64(z.imag());
  const float64x2_t y2 = vmulq_f64(y, y);
  float64x2_t k = {0.0, 1.0};
  const float64x2_t step = vdupq_n_f64(2.0);
  float64x2_t sr = vdupq_n_f64(0.0), si = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t a = vaddq_f64(x, k);
    const float64x2_t d = vfmaq_f64(y2, a, a);
    const float64x2_t inv = vdivq_f64(one, d);
    const float64x2_t h = vdivq_f64(one, vaddq_f64(k, one));
    sr = vaddq_f64(sr, vfmsq_f64(h, a, inv));
    si = vfmaq_f64(si, y, inv);
    k = vaddq_f64(k, step);
  }
  std::complex<double> s{vaddvq_f64(sr), vaddvq_f64(si)};
  for (; j < n; ++j) {
    const double a = z.real() + static_cast<double>(j);
    const double d = a * a + z.imag() * z.imag();
    s += std::complex<double>(1.0 / static_cast<double>(j + 1) - a / d, z.imag() / d);
  }
  return s;
}

std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n) {
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t two = vdupq_n_f64(2.0);
  const float64x2_t x = vdupq_n_f64(z.real());
  const float64x2_t y = vdupq_n_f64(z.imag());
  const float64x2_t y2 = vmulq_f64(y, y);
  float64x2_t k = {0.0, 1.0};
  float64x2_t sr = vdupq_n_f64(0.0), si = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t a = vaddq_f64(x, k);
    const float64x2_t pr = vsubq_f64(vmulq_f64(a, vaddq_f64(a, half)), y2);
    const float64x2_t pi = vmulq_f64(y, vfmaq_f64(half, two, a));
    const float64x2_t d = vfmaq_f64(vmulq_f64(pi, pi), pr, pr);
    sr = vaddq_f64(sr, vdivq_f64(pr, d));
    si = vsubq_f64(si, vdivq_f64(pi, d));
    k = vaddq_f64(k, two);
  }
  double tr = vaddvq_f64(sr), ti = vaddvq_f64(si);
  for (; j < n; ++j) {
    const double a = z.real() + static_cast<double>(j);
    const double pr = a * (a + 0.5) - z.imag() * z.imag();
    const double pi = z.imag() * (2.0 * a + 0.5);
    const double d = pr * pr + pi * pi;
    tr += pr / d;
    ti -= pi / d;
  }
  return {tr, ti};
}

Moments profile_moments(const MomentInput& in) {
  const std::size_t n = in.weight.size();
  float64x2_t mass = vdupq_n_f64(0.0), grad = vdupq_n_f64(0.0), vir = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t w = vld1q_f64(in.weight.data() + j);
    const float64x2_t er = vld1q_f64(in.eta_re.data() + j);
    const float64x2_t ei = vld1q_f64(in.eta_im.data() + j);
    const float64x2_t dr = vld1q_f64(in.deta_re.data() + j);
    const float64x2_t di = vld1q_f64(in.deta_im.data() + j);
    const float64x2_t zz = vld1q_f64(in.z.data() + j);
    mass = vfmaq_f64(mass, w, vfmaq_f64(vmulq_f64(ei, ei), er, er));
    grad = vfmaq_f64(grad, w, vfmaq_f64(vmulq_f64(di, di), dr, dr));
    const float64x2_t cr = vsubq_f64(vmulq_f64(di, er), vmulq_f64(dr, ei));
    vir = vfmaq_f64(vir, vmulq_f64(w, zz), cr);
  }
  Moments m{vaddvq_f64(mass), vaddvq_f64(grad), vaddvq_f64(vir)};
  for (; j < n; ++j) {
    const double w = in.weight[j];
    const double er = in.eta_re[j], ei = in.eta_im[j];
    const double dr = in.deta_re[j], di = in.deta_im[j];
    m.mass += w * (er * er + ei * ei);
    m.grad += w * (dr * dr + di * di);
    m.virial += w * in.z[j] * (di * er - dr * ei);
  }
  return m;
}

}  // namespace blowup::kernels::neon
