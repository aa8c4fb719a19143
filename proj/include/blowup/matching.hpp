#pragma once

#include <complex>
#include <vector>

namespace blowup::matching {

using cplx = std::complex<double>;

/// lambda = -kappa / h - i sigma
cplx spectral_lambda(double sigma, double h_inv, double kappa);

/// A(lambda) = e^{-i pi/4} sqrt(2) Gamma(3/4 - i lambda/2) / Gamma(1/4 - i lambda/2).
/// h = +inf is accepted and means h^{-1} = 0.
cplx a_gamma(double sigma, double h, double kappa);

/// Same quantity through the reflection-split form whose exponentially
/// small factors are explicit; stable as h -> 0. Requires kappa = +-1.
cplx a_stable(double sigma, double h, double kappa);

enum class PhaseForm { gamma_ratio, reflected };

struct PhaseValue {
  double f = 0.0;
  double constant = 0.0;
  std::vector<double> branch_terms;
  PhaseForm form = PhaseForm::gamma_ratio;
};

/// Representation switch for f_phase.
inline constexpr double kPhaseSwitchHInv = 4.0;

/// f(sigma, h^{-1}) = Im log A, tracked continuously in sigma (no wrapping).
PhaseValue f_phase(double sigma, double h_inv, double kappa);
PhaseValue f_phase_gamma_form(double sigma, double h_inv, double kappa);
PhaseValue f_phase_reflected_form(double sigma, double h_inv, double kappa);

/// d f / d sigma = 1/2 Im(psi(z) - psi(z + 1/2)), z = 1/4 - sigma/2 + i kappa h^{-1}/2.
double f_phase_dsigma(double sigma, double h_inv, double kappa);

}  // namespace blowup::matching
