// Built with -mavx2 -mfma; only entered after a runtime CPU check.
#include <immintrin.h>

#include "blowup/kernels.hpp"

namespace blowup::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

std::complex<double> digamma_partial_sum(std::complex<double> z, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d x = _mm256_set1_pd(z.real());
  const __m256d y = _mm256_set1_pd(z.imag());
  const __m256d y2 = _mm256_mul_pd(y, y);
  __m256d k = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_add_pd(x, k);
    const __m256d d = _mm256_fmadd_pd(a, a, y2);
    const __m256d inv = _mm256_div_pd(one, d);
    const __m256d h = _mm256_div_pd(one, _mm256_add_pd(k, one));
    sr = _mm256_add_pd(sr, _mm256_fnmadd_pd(a, inv, h));
    si = _mm256_fmadd_pd(y, inv, si);
    k = _mm256_add_pd(k, four);
  }
  std::complex<double> tail{hsum(sr), hsum(si)};
  const double x0 = z.real(), y0 = z.imag();
  for (; j < n; ++j) {
    const double a = x0 + static_cast<double>(j);
    const double d = a * a + y0 * y0;
    tail += std::complex<double>(1.0 / static_cast<double>(j + 1) - a / d, y0 / d);
  }
  return tail;
}

std::complex<double> half_gap_partial_sum(std::complex<double> z, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d x = _mm256_set1_pd(z.real());
  const __m256d y = _mm256_set1_pd(z.imag());
  const __m256d y2 = _mm256_mul_pd(y, y);
  __m256d k = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_add_pd(x, k);
    const __m256d pr = _mm256_fmsub_pd(a, _mm256_add_pd(a, half), y2);
    const __m256d pi = _mm256_mul_pd(y, _mm256_fmadd_pd(two, a, half));
    const __m256d d = _mm256_fmadd_pd(pr, pr, _mm256_mul_pd(pi, pi));
    sr = _mm256_add_pd(sr, _mm256_div_pd(pr, d));
    si = _mm256_sub_pd(si, _mm256_div_pd(pi, d));
    k = _mm256_add_pd(k, four);
  }
  double tr = hsum(sr), ti = hsum(si);
  const double x0 = z.real(), y0 = z.imag();
  for (; j < n; ++j) {
    const double a = x0 + static_cast<double>(j);
    const double pr = a * (a + 0.5) - y0 * y0;
    const double pi = y0 * (2.0 * a + 0.5);
    const double d = pr * pr + pi * pi;
    tr += pr / d;
    ti -= pi / d;
  }
  return {tr, ti};
}

Moments profile_moments(const MomentInput& in) {
  const std::size_t n = in.weight.size();
  __m256d mass = _mm256_setzero_pd(), grad = _mm256_setzero_pd(), vir = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d w = _mm256_loadu_pd(in.weight.data() + j);
    const __m256d er = _mm256_loadu_pd(in.eta_re.data() + j);
    const __m256d ei = _mm256_loadu_pd(in.eta_im.data() + j);
    const __m256d dr = _mm256_loadu_pd(in.deta_re.data() + j);
    const __m256d di = _mm256_loadu_pd(in.deta_im.data() + j);
    const __m256d zz = _mm256_loadu_pd(in.z.data() + j);
    const __m256d e2 = _mm256_fmadd_pd(er, er, _mm256_mul_pd(ei, ei));
    const __m256d d2 = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
    const __m256d cr = _mm256_fmsub_pd(di, er, _mm256_mul_pd(dr, ei));
    mass = _mm256_fmadd_pd(w, e2, mass);
    grad = _mm256_fmadd_pd(w, d2, grad);
    vir = _mm256_fmadd_pd(_mm256_mul_pd(w, zz), cr, vir);
  }
  Moments m{hsum(mass), hsum(grad), hsum(vir)};
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

}  // namespace blowup::kernels::avx2
