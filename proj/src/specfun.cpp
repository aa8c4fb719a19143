#include "blowup/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"
#include "blowup/quadrature.hpp"

namespace blowup::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..8
constexpr std::array<double, 8> kPsiAsym = {
    1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,  -3617.0 / 8160.0};

constexpr double kStirlingMinAbs = 15.0;
constexpr double kPsiMinRe = 20.0;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void check_finite(cplx z, const char* who) {
  if (!finite(z)) throw DomainError(std::string(who) + ": non-finite argument");
}

cplx stirling_series(cplx w) {
  const cplx r = 1.0 / w, r2 = r * r;
  cplx s = kStirling.back();
  for (int k = static_cast<int>(kStirling.size()) - 2; k >= 0; --k) s = s * r2 + kStirling[k];
  return (w - 0.5) * std::log(w) - w + kHalfLog2Pi + s * r;
}

// psi(w) minus log(w); requires |w| large and Re w > 0.
cplx psi_asym_minus_log(cplx w) {
  const cplx r = 1.0 / w, r2 = r * r;
  cplx s = kPsiAsym.back();
  for (int k = static_cast<int>(kPsiAsym.size()) - 2; k >= 0; --k) s = s * r2 + kPsiAsym[k];
  return -0.5 * r - s * r2;
}

cplx log1p_c(cplx u) { return 2.0 * std::atanh(u / (2.0 + u)); }

std::size_t shift_count(cplx z) {
  const double need = std::ceil(kPsiMinRe - z.real());
  return static_cast<std::size_t>(std::max(kPsiMinRe, need));
}

}  // namespace

cplx log_gamma(cplx z) {
  check_finite(z, "log_gamma");
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at non-positive integer");
    throw DomainError("log_gamma: argument on the branch cut (-inf, 0]");
  }
  cplx w = z;
  cplx shift{0.0, 0.0};
  while (w.real() < 0.0 || std::abs(w) < kStirlingMinAbs) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling_series(w) - shift;
}

cplx log_gamma_boundary(double x, int side) {
  if (!std::isfinite(x)) throw DomainError("log_gamma_boundary: non-finite argument");
  if (side != 1 && side != -1) throw DomainError("log_gamma_boundary: side must be +1 or -1");
  if (x > 0.0) return {std::lgamma(x), 0.0};
  if (x == std::floor(x)) throw PoleError("log_gamma_boundary: pole at non-positive integer");
  const double crossings = std::ceil(-x);
  return {std::lgamma(x), -side * kPi * crossings};
}

cplx gamma(cplx z) {
  check_finite(z, "gamma");
  if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    const double x = z.real();
    const double lg = std::lgamma(1.0 - x);
    const double s = std::sin(kPi * x);
    const double logmag = std::log(kPi / std::abs(s)) - lg;
    if (logmag > 709.0) throw OverflowError("gamma: result overflows");
    return {std::copysign(std::exp(logmag), s), 0.0};
  }
  const cplx lg = log_gamma(z);
  if (lg.real() > 709.0) throw OverflowError("gamma: result overflows");
  return std::exp(lg);
}

cplx rgamma(cplx z) {
  check_finite(z, "rgamma");
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    const double x = z.real();
    const double logmag = std::lgamma(1.0 - x) - std::log(kPi);
    if (logmag > 709.0) throw OverflowError("rgamma: result overflows");
    return {std::sin(kPi * x) * std::exp(logmag), 0.0};
  }
  const cplx lg = log_gamma(z);
  if (-lg.real() > 709.0) throw OverflowError("rgamma: result overflows");
  return std::exp(-lg);
}

cplx digamma(cplx z) {
  check_finite(z, "digamma");
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at non-positive integer");
  const std::size_t K = shift_count(z);
  const cplx partial = kernels::digamma_partial_sum(z, K);
  const double Kd = static_cast<double>(K);
  const cplx w = z + Kd;
  // log(w) - log(K+1) is formed as a single logarithm of the ratio.
  const cplx tail = std::log(w / (Kd + 1.0)) + psi_asym_minus_log(w) - psi_asym_minus_log(cplx(Kd + 1.0));
  return -kEulerGamma + partial + tail;
}

cplx digamma_half_gap(cplx z) {
  check_finite(z, "digamma_half_gap");
  if (is_nonpositive_integer(z) || is_nonpositive_integer(z + 0.5)) {
    throw PoleError("digamma_half_gap: pole of psi(z) or psi(z + 1/2)");
  }
  const std::size_t K = shift_count(z);
  const cplx S = kernels::half_gap_partial_sum(z, K);
  const cplx w = z + static_cast<double>(K);
  const cplx tail = log1p_c(0.5 / w) + psi_asym_minus_log(w + 0.5) - psi_asym_minus_log(w);
  return -0.5 * S - tail;
}

cplx binet_log_gamma(cplx z) {
  check_finite(z, "binet_log_gamma");
  if (!(z.real() > 0.0)) throw DomainError("binet_log_gamma: requires Re z > 0");
  const cplx limit0 = 1.0 / (2.0 * kPi * z);
  auto f = [&](double t) {
    if (t < 1e-12 * std::abs(z)) return quad::CVec<1>{limit0};
    return quad::CVec<1>{std::atan(t / z) / std::expm1(2.0 * kPi * t)};
  };
  // exp(-2 pi t) < 1e-18 beyond t = 6.6.
  const double T = 6.6;
  std::vector<double> breaks{0.0};
  const double scale = std::min(1.0, std::abs(z));
  for (double b = scale / 64.0; b < T; b *= 2.0) breaks.push_back(b);
  breaks.push_back(T);
  quad::Tolerance tol;
  tol.abs = 1e-17;
  tol.rel = 1e-13;
  const auto res = quad::adaptive_gk15<1>(f, breaks, tol);
  if (!res.converged) throw ToleranceError("binet_log_gamma: quadrature did not converge");
  return 2.0 * res.value[0];
}

GammaDifference log_gamma_diff(cplx z, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw DomainError("log_gamma_diff: requires 0 <= s < 1");
  check_finite(z, "log_gamma_diff");
  GammaDifference d;
  d.exact = log_gamma(z + s) - log_gamma(z);
  d.asymptotic = s * std::log(z) - 0.5 * s * (1.0 - s) / z;
  return d;
}

cplx log_gamma_central_diff(cplx w, double d) {
  check_finite(w, "log_gamma_central_diff");
  if (!std::isfinite(d)) throw DomainError("log_gamma_central_diff: non-finite width");
  if (d == 0.0) return {0.0, 0.0};
  const auto& gl = quad::gauss_legendre(12);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * digamma(w + 0.5 * d * gl.nodes[i]);
  return -0.5 * d * acc;
}

}  // namespace blowup::specfun
