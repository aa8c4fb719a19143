#pragma once

// Small-h asymptotics of v(x) around the turning point x = 2 h^{-1/2}.
//
// With alpha = h^{1/2} x / 2 and s = i/h - sigma + 1/2,
//   v(x) = e^{i x^2/4} (h x)^{-s} e^{-pi/(4h)} e^{-i sigma pi/4} e^{i pi/8} g / Gamma(s),
//   g(alpha, 1/h) = int_0^inf exp((-i t^2/(8 alpha^2) - t + i log t)/h) t^{-sigma-1/2} dt.
// Deforming the ray onto gamma_3 (0 -> 2 i alpha^2 on the imaginary axis)
// followed by gamma_2 (z = 2 alpha^2 (cot th + i), th from pi/2 down to 0)
// splits g = g2 + g3.

#include <complex>

#include "blowup/profile.hpp"
#include "blowup/weber.hpp"

namespace blowup::asym {

using cplx = std::complex<double>;

struct TurningParams {
  double alpha_t = 0.0;  // h^{1/2} x / 2
  double h = 0.0;
  double sigma = 0.0;

  static TurningParams at(double x, double h, double sigma);
};

// Landscape of the gamma_2 integrand.
double f_alpha(double theta, double alpha);       // alpha^2 cot th + th
double nu_alpha(double theta, double alpha);      // Im p_alpha on gamma_2
double f_alpha_dd(double theta, double alpha);    // second derivatives
double nu_alpha_dd(double theta, double alpha);
double phi_alpha(double s, double alpha);         // s^2/(8 alpha^2) - s + log s
double turning_exponent(double x);                // x sqrt(1 - x^2) + arcsin x
double g3_saddle(double alpha);                   // 2 / (1 + sqrt(1 - alpha^-2)), alpha >= 1

/// phi(x) ~ 2^{1/2} (1 - h^2 x^2/4)^{-1/4} exp(-S(h x/2)/h) for h x/2 < 1.
double wkb_inner_phi(double x, double h);
/// c_h e^{i x^2/4} x^{-i/h + sigma - 1/2}, c_h = 2 e^{i pi/4} e^{-i/(2h)} e^{-pi/(2h)}.
cplx wkb_outer_phi(double x, double h, double sigma);

/// g along the ray arg t = -eps. ToleranceError if not certified.
cplx g_direct(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg = {});

/// Contour pieces by certified quadrature.
cplx g2_contour(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg = {});
cplx g3_contour(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg = {});
/// g2_contour + g3_contour.
cplx g_split(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg = {});

/// Laplace approximation of g2 at th0 = arcsin alpha, 0 < alpha < 1.
cplx g2_stationary(double alpha_t, double h_inv, double sigma);
/// Same value written out in closed form.
cplx g2_closed_form(double alpha_t, double h_inv, double sigma);
/// f''(th0) - i nu''(th0).
cplx g2_curvature(double alpha_t);

/// Stationary phase approximation of g3 at s0 = g3_saddle(alpha), alpha > 1.
cplx g3_stationary(double alpha_t, double h_inv, double sigma);

/// v(x) rebuilt from g.
cplx v_from_g(double x, double h, double sigma, cplx g);

/// Guard band around the turning point where neither branch is used.
inline constexpr double kBandLo = 0.85;
inline constexpr double kBandHi = 1.15;

/// v(x) from g2_stationary (alpha_t < 0.85) or g3_stationary (alpha_t > 1.15).
/// Requires kappa = 1, h <= 0.3, x > 0.
cplx turning_asymp_v(double x, const profile::SpectralParams& params);

/// Two branches of the far-field statement for v, with alpha = h^{1/2} x / 2:
///   inner (1 - alpha)^{-1/4} e^{-S(alpha)/h},  outer e^{i x^2/4} x^{-i/h + sigma - 1/2}.
double lemma_inner_v(double x, double h);
cplx lemma_outer_v(double x, double h, double sigma);

}  // namespace blowup::asym
