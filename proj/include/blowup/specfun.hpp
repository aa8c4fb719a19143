#pragma once

#include <complex>

namespace blowup::specfun {

using cplx = std::complex<double>;

/// Principal branch of log Gamma on C \ (-inf, 0].
///
/// Continuous across the real axis for Re z > 0. Throws DomainError on the
/// closed negative real axis (including the poles) and for non-finite input.
cplx log_gamma(cplx z);

/// Limit of log_gamma(x + i0*side) for real x, side = +1 or -1.
/// Used where a parameter family touches the cut from one side.
cplx log_gamma_boundary(double x, int side);

/// Gamma(z). Throws PoleError at non-positive integers and OverflowError
/// when |Gamma(z)| is not representable.
cplx gamma(cplx z);

/// 1 / Gamma(z), entire; exactly zero at the poles of Gamma.
cplx rgamma(cplx z);

/// Digamma via an explicit partial sum and an asymptotic tail.
cplx digamma(cplx z);

/// psi(z) - psi(z + 1/2) = -1/2 sum_k 1 / ((z + k)(z + k + 1/2)).
cplx digamma_half_gap(cplx z);

/// log Gamma(z) - [(z - 1/2) log z - z + log(2 pi)/2], computed by
/// quadrature of Binet's second formula. Requires Re z > 0.
cplx binet_log_gamma(cplx z);

struct GammaDifference {
  cplx exact;       // log Gamma(z + s) - log Gamma(z)
  cplx asymptotic;  // s log z - s(1 - s) / (2z)
};

/// Requires 0 <= s < 1 and z, z + s off the cut.
GammaDifference log_gamma_diff(cplx z, double s);

/// log Gamma(w - d/2) - log Gamma(w + d/2), accurate in relative terms
/// when d is small. Uses Gauss-Legendre quadrature of -psi over the
/// interval, so the difference never forms by cancellation.
cplx log_gamma_central_diff(cplx w, double d);

}  // namespace blowup::specfun
