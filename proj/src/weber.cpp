#include "blowup/weber.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"

namespace blowup::weber {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRayMargin = 0.05;
const cplx kI{0.0, 1.0};

const cplx kRotMinus = std::polar(1.0, -kPi / 4.0);  // e^{-i pi/4}
const cplx kRotPlus = std::polar(1.0, kPi / 4.0);

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double clamp_ray(double theta) {
  const double lim = kPi / 4.0 - kRayMargin;
  return std::clamp(theta, -lim, lim);
}

// Peak of log|e^{-zt - t^2/2} t^{s-1}| along the ray of angle theta,
// sampled on a geometric grid. The value of the integral does not depend
// on theta; the peak sets the cancellation the quadrature has to absorb.
double ray_peak(cplx s, cplx z, double theta, double r_max) {
  const cplx e1 = std::polar(1.0, theta);
  const double c2 = std::cos(2.0 * theta);
  const double zr = -(z * e1).real();
  double peak = -std::numeric_limits<double>::infinity();
  for (double r = 0.05; r <= r_max; r *= 1.15) {
    const double lr = std::log(r);
    const double e = zr * r - 0.5 * c2 * r * r + (s.real() - 1.0) * lr - theta * s.imag() + std::max(0.0, lr);
    peak = std::max(peak, e);
  }
  return peak;
}

// Candidate directions inside the sector |theta| < pi/4 plus the saddle
// direction. Among those whose peak is within one e-fold of the lowest,
// the least rotated wins: steep rays near the sector edge pick up large
// phases in t^{s-1} that the peak alone does not see.
double ray_angle(cplx s, cplx z, double r_max) {
  const double lim = kPi / 4.0 - kRayMargin;
  const cplx t0 = 0.5 * (-z + std::sqrt(z * z + 4.0 * (s - 1.0)));
  std::vector<std::pair<double, double>> cand;  // (theta, peak)
  const double ts = clamp_ray(std::arg(t0));
  cand.emplace_back(ts, ray_peak(s, z, ts, r_max));
  for (int k = -8; k <= 8; ++k) {
    const double th = lim * k / 8.0;
    cand.emplace_back(th, ray_peak(s, z, th, r_max));
  }
  double lowest = cand.front().second;
  for (const auto& c : cand) lowest = std::min(lowest, c.second);
  double best = ts, best_abs = std::numeric_limits<double>::infinity();
  for (const auto& [th, pk] : cand) {
    if (pk <= lowest + 1.0 && std::abs(th) < best_abs) {
      best = th;
      best_abs = std::abs(th);
    }
  }
  return best;
}

cplx checked_exp_product(cplx log_factor, cplx value, const char* who) {
  if (value == cplx{}) return {};
  const double lm = log_factor.real() + std::log(std::abs(value));
  if (lm > 709.0) throw OverflowError(std::string(who) + ": result overflows");
  if (log_factor.real() > 700.0 || log_factor.real() < -700.0) {
    return std::exp(log_factor + std::log(value));
  }
  return std::exp(log_factor) * value;
}

struct RawIntegrals {
  cplx i0, i1;  // moments t^{s-1}, t^{s}
  double error = 0.0;
};

RawIntegrals laplace_moments(cplx s, cplx z, const QuadratureConfig& cfg) {
  quad::PowerExpProblem prob;
  prob.c = s;
  prob.b1 = -z;
  prob.b2 = -0.5;
  prob.theta = ray_angle(s, z, std::min(cfg.t_max, 40.0));
  quad::PowerExpOptions opt;
  opt.r_max = cfg.t_max;
  opt.min_panels = cfg.n_nodes;
  opt.tol.abs = 0.0;
  opt.tol.rel = std::min(cfg.rel_tol, 1e-3) * 0.1;
  const auto res = quad::power_exp_integral(prob, opt);
  if (!std::isfinite(res.error)) {
    throw ToleranceError("parabolic cylinder integral: integrand does not decay within t_max");
  }
  return {res.m0, res.m1, res.error};
}

void certify(double err, cplx value, cplx deriv, const QuadratureConfig& cfg, const char* who) {
  const double scale = std::max(std::abs(value), std::abs(deriv));
  const double target = std::max(cfg.abs_tol, cfg.rel_tol * scale);
  if (!(err <= target)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: error estimate %.3e exceeds target %.3e", who, err, target);
    throw ToleranceError(buf);
  }
}

// Envelope pair for Re nu < 0 straight from the integral, plus E_{nu-1}.
struct DirectEnvelope {
  cplx e_nu, e_num1;
  double err_nu, err_num1;
};

DirectEnvelope direct_envelope(cplx nu, cplx z, const QuadratureConfig& cfg) {
  const cplx s = -nu;
  const RawIntegrals raw = laplace_moments(s, z, cfg);
  const cplx lg = specfun::log_gamma(s);
  const cplx r0 = checked_exp_product(-lg, cplx(1.0), "d_nu");
  // 1/Gamma(s+1) = 1/(s Gamma(s))
  const cplx r1 = r0 / s;
  DirectEnvelope d;
  d.e_nu = raw.i0 * r0;
  d.e_num1 = raw.i1 * r1;
  d.err_nu = raw.error * std::abs(r0);
  d.err_num1 = raw.error * std::abs(r1);
  return d;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("QuadratureConfig: t_max must be positive");
  if (n_nodes < 16) throw DomainError("QuadratureConfig: n_nodes must be at least 16");
  if (!(abs_tol > 0.0 && abs_tol < 1e-2)) throw DomainError("QuadratureConfig: abs_tol out of (0, 1e-2)");
  if (!(rel_tol > 0.0 && rel_tol < 1e-2)) throw DomainError("QuadratureConfig: rel_tol out of (0, 1e-2)");
}

Envelope d_nu_envelope(cplx nu, cplx z, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!finite(nu) || !finite(z)) throw DomainError("d_nu: non-finite argument");
  Envelope out;
  if (nu.real() < 0.0) {
    const auto d = direct_envelope(nu, z, cfg);
    out.value = d.e_nu;
    // E_nu' = nu E_{nu-1} = -I_1 / Gamma(-nu)
    out.derivative = nu * d.e_num1;
    out.error = d.err_nu;
    certify(std::max(d.err_nu, std::abs(nu) * d.err_num1), out.value, out.derivative, cfg, "d_nu");
    return out;
  }
  const int m = static_cast<int>(std::floor(nu.real())) + 1;
  const cplx mu = nu - static_cast<double>(m);
  const auto d = direct_envelope(mu, z, cfg);
  cplx prev = d.e_num1, cur = d.e_nu;
  double eprev = d.err_num1, ecur = d.err_nu;
  const double az = std::abs(z);
  for (int k = 0; k < m; ++k) {
    const cplx order = mu + static_cast<double>(k);
    const cplx next = z * cur - order * prev;
    const double enext = az * ecur + std::abs(order) * eprev;
    prev = cur;
    cur = next;
    eprev = ecur;
    ecur = enext;
  }
  out.value = cur;
  out.derivative = nu * prev;
  out.error = ecur;
  certify(std::max(ecur, std::abs(nu) * eprev), out.value, out.derivative, cfg, "d_nu");
  return out;
}

cplx d_nu_integral(cplx nu, cplx z, const QuadratureConfig& cfg) {
  if (!(nu.real() < 0.0)) throw DomainError("d_nu_integral: requires Re nu < 0");
  const Envelope e = d_nu_envelope(nu, z, cfg);
  return checked_exp_product(-0.25 * z * z, e.value, "d_nu_integral");
}

cplx d_nu(cplx nu, cplx z, const QuadratureConfig& cfg) {
  const Envelope e = d_nu_envelope(nu, z, cfg);
  return checked_exp_product(-0.25 * z * z, e.value, "d_nu");
}

DValue d_nu_with_derivative(cplx nu, cplx z, const QuadratureConfig& cfg) {
  const Envelope e = d_nu_envelope(nu, z, cfg);
  const cplx lf = -0.25 * z * z;
  return {checked_exp_product(lf, e.value, "d_nu"),
          checked_exp_product(lf, e.derivative - 0.5 * z * e.value, "d_nu")};
}

DValue d_at_zero(cplx nu) {
  if (!finite(nu)) throw DomainError("d_at_zero: non-finite order");
  const double sqrt_pi = std::sqrt(kPi);
  const double ln2 = std::log(2.0);
  const cplx d0 = sqrt_pi * std::exp(0.5 * nu * ln2) * specfun::rgamma(0.5 * (1.0 - nu));
  const cplx d1 = -sqrt_pi * std::exp(0.5 * (nu + 1.0) * ln2) * specfun::rgamma(-0.5 * nu);
  return {d0, d1};
}

namespace {

DValue v_right(double x, cplx lambda, const QuadratureConfig& cfg) {
  const cplx nu = kI * lambda - 0.5;
  const cplx z = kRotMinus * x;
  const Envelope e = d_nu_envelope(nu, z, cfg);
  const cplx phase = std::polar(1.0, 0.25 * x * x);
  return {phase * e.value, kRotMinus * phase * (e.derivative - 0.5 * z * e.value)};
}

DValue v_star_right(double x, cplx lambda, const QuadratureConfig& cfg) {
  const cplx nu = -kI * lambda - 0.5;
  const cplx z = kRotPlus * x;
  const Envelope e = d_nu_envelope(nu, z, cfg);
  const cplx phase = std::polar(1.0, -0.25 * x * x);
  return {phase * e.value, kRotPlus * phase * (e.derivative - 0.5 * z * e.value)};
}

}  // namespace

DValue v(double x, cplx lambda, const QuadratureConfig& cfg) {
  if (!std::isfinite(x) || !finite(lambda)) throw DomainError("v: non-finite argument");
  if (x >= 0.0) return v_right(x, lambda, cfg);
  const DValue a = v_right(-x, lambda, cfg);
  const DValue b = v_star_right(-x, lambda, cfg);
  const cplx k1 = -kI * std::exp(-kPi * lambda);
  const cplx k2 = std::sqrt(2.0 * kPi) * specfun::rgamma(-kI * lambda + 0.5) * std::exp(-0.5 * kPi * lambda) * kRotPlus;
  return {k1 * a.value + k2 * b.value, -(k1 * a.derivative + k2 * b.derivative)};
}

DValue v_star(double x, cplx lambda, const QuadratureConfig& cfg) {
  if (!std::isfinite(x) || !finite(lambda)) throw DomainError("v_star: non-finite argument");
  if (x >= 0.0) return v_star_right(x, lambda, cfg);
  const DValue a = v_star_right(-x, lambda, cfg);
  const DValue b = v_right(-x, lambda, cfg);
  const cplx k1 = kI * std::exp(-kPi * lambda);
  const cplx k2 = kRotMinus * std::exp(-0.5 * kPi * lambda) * std::sqrt(2.0 * kPi) * specfun::rgamma(kI * lambda + 0.5);
  return {k1 * a.value + k2 * b.value, -(k1 * a.derivative + k2 * b.derivative)};
}

Envelope v_envelope(double x, cplx lambda, const QuadratureConfig& cfg) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("v_envelope: requires finite x >= 0");
  const cplx nu = kI * lambda - 0.5;
  Envelope e = d_nu_envelope(nu, kRotMinus * x, cfg);
  e.derivative *= kRotMinus;
  return e;
}

DValue v_at_zero(cplx lambda) {
  const DValue d = d_at_zero(kI * lambda - 0.5);
  return {d.value, kRotMinus * d.derivative};
}

DValue v_star_at_zero(cplx lambda) {
  const DValue d = d_at_zero(-kI * lambda - 0.5);
  return {d.value, kRotPlus * d.derivative};
}

DValue w(double x, cplx lambda, double h, const QuadratureConfig& cfg) {
  if (!(h > 0.0)) throw DomainError("w: requires h > 0");
  const double sh = std::sqrt(h);
  const DValue r = v(sh * x, lambda, cfg);
  return {r.value, sh * r.derivative};
}

DValue w_star(double x, cplx lambda, double h, const QuadratureConfig& cfg) {
  if (!(h > 0.0)) throw DomainError("w_star: requires h > 0");
  const double sh = std::sqrt(h);
  const DValue r = v_star(sh * x, lambda, cfg);
  return {r.value, sh * r.derivative};
}

WronskianReport wronskian_check(cplx lambda, double x, const QuadratureConfig& cfg) {
  WronskianReport rep;
  const DValue a = v(x, lambda, cfg);
  const DValue b = v_star(x, lambda, cfg);
  const DValue c = v(-x, lambda, cfg);
  rep.numeric_v_vstar = a.derivative * b.value - a.value * b.derivative;
  rep.closed_v_vstar = kI * std::exp(0.5 * kPi * lambda);
  // g(x) = v(-x), g'(x) = -v'(-x)
  rep.numeric_v_vminus = a.derivative * c.value + a.value * c.derivative;
  rep.closed_v_vminus = -kRotMinus * std::sqrt(2.0 * kPi) * specfun::rgamma(0.5 - kI * lambda);
  return rep;
}

double connection_residual(cplx nu, cplx z, const QuadratureConfig& cfg) {
  const cplx lhs = d_nu(nu, z, cfg);
  const cplx t1 = std::exp(-kI * kPi * nu) * d_nu(nu, -z, cfg);
  const cplx t2 = std::exp(-kI * kPi * (nu + 1.0) * 0.5) * std::sqrt(2.0 * kPi) * specfun::rgamma(-nu) *
                  d_nu(-nu - 1.0, kI * z, cfg);
  return std::abs(lhs - t1 - t2) / std::abs(lhs);
}

namespace {

// 1/2 x^{-2} Gamma(a + 5/2) / |Gamma(b)|, the crude Laplace remainder bound.
double remainder_band(double x, double a, cplx b) {
  if (!(a + 2.5 > 0.0)) return std::numeric_limits<double>::infinity();
  const double lg = std::lgamma(a + 2.5) - specfun::log_gamma(b).real();
  return 0.5 * std::exp(lg) / (x * x);
}

cplx lead_plus(double x, cplx lambda) {
  return std::exp((kI * lambda - 0.5) * std::log(x) + kI * (0.25 * x * x + kPi / 8.0) + 0.25 * kPi * lambda);
}

cplx lead_star_plus(double x, cplx lambda) {
  return std::exp((-kI * lambda - 0.5) * std::log(x) - kI * (0.25 * x * x + kPi / 8.0) + 0.25 * kPi * lambda);
}

}  // namespace

AsymptoticValue v_asym_plus(double x, cplx lambda) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("v_asym_plus: requires x > 0");
  const cplx val = lead_plus(x, lambda);
  return {val, std::abs(val) * remainder_band(x, lambda.imag(), -kI * lambda + 0.5)};
}

AsymptoticValue v_asym_minus(double x, cplx lambda) {
  if (!(x < 0.0) || !std::isfinite(x)) throw DomainError("v_asym_minus: requires x < 0");
  const double y = -x;
  const cplx k1 = -kI * std::exp(-kPi * lambda);
  const cplx k2 = std::sqrt(2.0 * kPi) * specfun::rgamma(-kI * lambda + 0.5) * std::exp(-0.5 * kPi * lambda) * kRotPlus;
  const cplx a = k1 * lead_plus(y, lambda);
  const cplx b = k2 * lead_star_plus(y, lambda);
  const double err = std::abs(a) * remainder_band(y, lambda.imag(), -kI * lambda + 0.5) +
                     std::abs(b) * remainder_band(y, -lambda.imag(), kI * lambda + 0.5);
  return {a + b, err};
}

}  // namespace blowup::weber
