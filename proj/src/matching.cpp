#include "blowup/matching.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/specfun.hpp"

namespace blowup::matching {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

int kappa_sign(double kappa) {
  if (kappa == 1.0) return 1;
  if (kappa == -1.0) return -1;
  throw DomainError("matching: kappa must be +1 or -1");
}

void check_sigma(double sigma, double lo, double hi, const char* who) {
  if (!(sigma >= lo && sigma <= hi)) throw DomainError(std::string(who) + ": sigma out of range");
}

double h_inv_of(double h) {
  if (!(h > 0.0)) throw DomainError("matching: h must be positive");
  return std::isinf(h) ? 0.0 : 1.0 / h;
}

// log Gamma(x + i y); y = 0 with x <= 0 is read as the limit y -> 0 from
// the side given by `side`.
cplx log_gamma_side(double x, double y, int side) {
  if (y == 0.0 && x <= 0.0) return specfun::log_gamma_boundary(x, side);
  return specfun::log_gamma(cplx(x, y));
}

// log Gamma(w - d/2) - log Gamma(w + d/2) with w = 1/4 + i y.
cplx gamma_pair_diff(double y, double d, int side) {
  if (std::abs(y) >= 1.0) return specfun::log_gamma_central_diff(cplx(0.25, y), d);
  return log_gamma_side(0.25 - 0.5 * d, y, side) - log_gamma_side(0.25 + 0.5 * d, y, side);
}

// log(1 + u), |u| < 1, on the branch real for real argument.
cplx log1p_small(cplx u) { return 2.0 * std::atanh(u / (2.0 + u)); }

}  // namespace

cplx spectral_lambda(double sigma, double h_inv, double kappa) { return {-kappa * h_inv, -sigma}; }

cplx a_gamma(double sigma, double h, double kappa) {
  if (!std::isfinite(sigma) || !std::isfinite(kappa)) throw DomainError("a_gamma: non-finite argument");
  const double hi = h_inv_of(h);
  const cplx lambda = spectral_lambda(sigma, hi, kappa);
  const cplx a = 0.75 - 0.5 * kI * lambda;
  const cplx b = 0.25 - 0.5 * kI * lambda;
  const cplx pre = std::polar(std::sqrt(2.0), -kPi / 4.0);
  if (a.imag() == 0.0 || b.imag() == 0.0) return pre * specfun::gamma(a) * specfun::rgamma(b);
  return pre * std::exp(specfun::log_gamma(a) - specfun::log_gamma(b));
}

cplx a_stable(double sigma, double h, double kappa) {
  const int k = kappa_sign(kappa);
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("a_stable: requires 0 < sigma < 1");
  const double hi = h_inv_of(h);
  const double y = 0.5 * k * hi;
  const cplx mod = specfun::log_gamma(cplx(0.25 - 0.5 * sigma, y));
  const double q = std::exp(-kPi * hi);
  cplx logA = 0.5 * std::log(2.0) - 2.0 * mod.real() + std::log(2.0 * kPi) - 0.5 * kPi * hi;
  if (k == 1) {
    logA += -0.5 * kI * sigma * kPi - log1p_small(kI * std::polar(q, -sigma * kPi)) + gamma_pair_diff(-0.5 * hi, sigma, -1);
  } else {
    logA += -0.5 * kI * kPi + 0.5 * kI * sigma * kPi - log1p_small(-kI * std::polar(q, sigma * kPi)) +
            gamma_pair_diff(0.5 * hi, sigma, 1);
  }
  if (logA.real() > 709.0) throw OverflowError("a_stable: result overflows");
  return std::exp(logA);
}

PhaseValue f_phase_gamma_form(double sigma, double h_inv, double kappa) {
  const int k = kappa_sign(kappa);
  check_sigma(sigma, 0.0, 1.0, "f_phase");
  if (!(h_inv >= 0.0) || !std::isfinite(h_inv)) throw DomainError("f_phase: h_inv must be finite and >= 0");
  const double y = 0.5 * k * h_inv;
  PhaseValue pv;
  pv.form = PhaseForm::gamma_ratio;
  pv.constant = -0.25 * kPi;
  pv.branch_terms = {log_gamma_side(0.75 - 0.5 * sigma, y, k).imag(),
                     -log_gamma_side(0.25 - 0.5 * sigma, y, k).imag()};
  pv.f = pv.constant + pv.branch_terms[0] + pv.branch_terms[1];
  return pv;
}

PhaseValue f_phase_reflected_form(double sigma, double h_inv, double kappa) {
  const int k = kappa_sign(kappa);
  check_sigma(sigma, 0.0, 1.0, "f_phase");
  if (!(h_inv >= 0.0) || !std::isfinite(h_inv)) throw DomainError("f_phase: h_inv must be finite and >= 0");
  const double q = std::exp(-kPi * h_inv);
  PhaseValue pv;
  pv.form = PhaseForm::reflected;
  if (k == 1) {
    pv.constant = -0.5 * sigma * kPi;
    pv.branch_terms = {-log1p_small(kI * std::polar(q, -sigma * kPi)).imag(),
                       gamma_pair_diff(-0.5 * h_inv, sigma, -1).imag()};
  } else {
    pv.constant = -0.5 * kPi + 0.5 * sigma * kPi;
    pv.branch_terms = {-log1p_small(-kI * std::polar(q, sigma * kPi)).imag(),
                       gamma_pair_diff(0.5 * h_inv, sigma, 1).imag()};
  }
  pv.f = pv.constant + pv.branch_terms[0] + pv.branch_terms[1];
  return pv;
}

PhaseValue f_phase(double sigma, double h_inv, double kappa) {
  return h_inv <= kPhaseSwitchHInv ? f_phase_gamma_form(sigma, h_inv, kappa)
                                   : f_phase_reflected_form(sigma, h_inv, kappa);
}

double f_phase_dsigma(double sigma, double h_inv, double kappa) {
  const int k = kappa_sign(kappa);
  if (!std::isfinite(sigma) || !(h_inv >= 0.0)) throw DomainError("f_phase_dsigma: bad argument");
  const cplx z{0.25 - 0.5 * sigma, 0.5 * k * h_inv};
  return 0.5 * specfun::digamma_half_gap(z).imag();
}

}  // namespace blowup::matching
