#pragma once

// Parabolic cylinder functions of complex order and the solutions
//   v(x, lambda)  = D_nu(e^{-i pi/4} x),        nu  =  i lambda - 1/2
//   v*(x, lambda) = D_nu*(e^{+i pi/4} x),       nu* = -i lambda - 1/2
// of -v'' - x^2 v / 4 = lambda v.
//
// D_nu is evaluated from its Laplace-type integral
//   D_nu(z) = e^{-z^2/4} / Gamma(-nu) * int_0^inf e^{-z t - t^2/2} t^{-nu-1} dt
// taken along a ray rotated towards the saddle, with upward recurrence in
// nu when Re nu >= 0. Everything is certified against QuadratureConfig;
// failures raise ToleranceError rather than returning degraded values.

#include <complex>

namespace blowup::weber {

using cplx = std::complex<double>;

struct QuadratureConfig {
  double t_max = 80.0;    // largest radius the integration ray may reach
  int n_nodes = 16;       // minimum number of initial panels on the ray
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;

  void validate() const;  // throws DomainError
};

/// E_nu(z) = e^{z^2/4} D_nu(z) and its z-derivative. The Gaussian factor is
/// kept apart so that callers on the anti-Stokes line avoid cancellation.
struct Envelope {
  cplx value;
  cplx derivative;
  double error = 0.0;  // absolute error bound on value
};

Envelope d_nu_envelope(cplx nu, cplx z, const QuadratureConfig& cfg = {});

/// Integral representation only; requires Re nu < 0.
cplx d_nu_integral(cplx nu, cplx z, const QuadratureConfig& cfg = {});

/// Any nu. Uses D_{nu+1} = z D_nu - nu D_{nu-1} when Re nu >= 0.
cplx d_nu(cplx nu, cplx z, const QuadratureConfig& cfg = {});

struct DValue {
  cplx value;
  cplx derivative;  // d/dz
};

DValue d_nu_with_derivative(cplx nu, cplx z, const QuadratureConfig& cfg = {});

/// Closed forms (D_nu(0), D_nu'(0)); entire in nu.
DValue d_at_zero(cplx nu);

/// v(x) and v'(x); x < 0 goes through the connection formula.
DValue v(double x, cplx lambda, const QuadratureConfig& cfg = {});
DValue v_star(double x, cplx lambda, const QuadratureConfig& cfg = {});

/// v(x) e^{-i x^2/4} and its x-derivative, x >= 0.
Envelope v_envelope(double x, cplx lambda, const QuadratureConfig& cfg = {});

/// Closed-form boundary values at x = 0.
DValue v_at_zero(cplx lambda);
DValue v_star_at_zero(cplx lambda);

/// w(x) = v(h^{1/2} x), with derivative in x.
DValue w(double x, cplx lambda, double h, const QuadratureConfig& cfg = {});
DValue w_star(double x, cplx lambda, double h, const QuadratureConfig& cfg = {});

/// Wronskians use W[f, g] = f' g - f g'.
struct WronskianReport {
  cplx numeric_v_vstar;   // W[v(x), v*(x)] from quadrature values
  cplx closed_v_vstar;    // i e^{pi lambda / 2}
  cplx numeric_v_vminus;  // W[v(x), v(-x)]
  cplx closed_v_vminus;   // -e^{-i pi/4} sqrt(2 pi) / Gamma(1/2 - i lambda)
};

WronskianReport wronskian_check(cplx lambda, double x, const QuadratureConfig& cfg = {});

/// Residual of D_nu(z) = e^{-i pi nu} D_nu(-z)
///   + e^{-i pi (nu+1)/2} sqrt(2 pi)/Gamma(-nu) D_{-nu-1}(i z),
/// relative to |D_nu(z)|.
double connection_residual(cplx nu, cplx z, const QuadratureConfig& cfg = {});

/// Far-field forms with an error bound.
struct AsymptoticValue {
  cplx value;
  double error_bound;  // absolute
};

/// x -> +inf: x^{i lambda - 1/2} e^{i x^2/4} e^{pi lambda/4} e^{i pi/8}.
AsymptoticValue v_asym_plus(double x, cplx lambda);

/// x -> -inf: two-term form from the connection formula.
AsymptoticValue v_asym_minus(double x, cplx lambda);

}  // namespace blowup::weber
