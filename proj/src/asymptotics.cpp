#include "blowup/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/specfun.hpp"

namespace blowup::asym {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

void check_args(const char* who, double alpha, double h_inv, double sigma) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError(std::string(who) + ": alpha_t must be positive");
  if (!(h_inv > 0.0) || !std::isfinite(h_inv)) throw DomainError(std::string(who) + ": h_inv must be positive");
  if (!(sigma < 0.5) || !std::isfinite(sigma)) throw DomainError(std::string(who) + ": requires sigma < 1/2");
}

void certify(const char* who, double error, cplx value, const weber::QuadratureConfig& cfg, bool converged) {
  const double target = cfg.rel_tol * std::abs(value);
  if (!converged || !(error <= target))
    throw ToleranceError(fmt((std::string(who) + ": error %.3e exceeds %.3e").c_str(), error, target));
}

// log of the gamma_2 integrand modulus, in units where the e^{-f/h} scale is explicit
double g2_log_modulus(double theta, double alpha, double h_inv, double sigma) {
  return -h_inv * f_alpha(theta, alpha) + (sigma - 1.5) * std::log(std::sin(theta));
}

}  // namespace

TurningParams TurningParams::at(double x, double h, double sigma) {
  if (!(h > 0.0)) throw DomainError("TurningParams: h must be positive");
  return {0.5 * std::sqrt(h) * x, h, sigma};
}

double f_alpha(double theta, double alpha) { return alpha * alpha / std::tan(theta) + theta; }

double nu_alpha(double theta, double alpha) {
  const double a2 = alpha * alpha;
  const double csc = 1.0 / std::sin(theta);
  return -0.5 * a2 * csc * csc + std::log(csc) - a2 + std::log(2.0 * a2);
}

double f_alpha_dd(double theta, double alpha) {
  const double s = std::sin(theta);
  return 2.0 * alpha * alpha * std::cos(theta) / (s * s * s);
}

double nu_alpha_dd(double theta, double alpha) {
  const double a2 = alpha * alpha;
  const double csc2 = 1.0 / (std::sin(theta) * std::sin(theta));
  const double cot = 1.0 / std::tan(theta);
  return -a2 * (2.0 * csc2 * cot * cot + csc2 * csc2) + csc2;
}

double phi_alpha(double s, double alpha) { return s * s / (8.0 * alpha * alpha) - s + std::log(s); }

double turning_exponent(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("turning_exponent: requires 0 <= x <= 1");
  return x * std::sqrt(1.0 - x * x) + std::asin(x);
}

double g3_saddle(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("g3_saddle: requires alpha >= 1");
  return 2.0 / (1.0 + std::sqrt(1.0 - 1.0 / (alpha * alpha)));
}

double wkb_inner_phi(double x, double h) {
  if (!(h > 0.0)) throw DomainError("wkb_inner_phi: h must be positive");
  const double a = 0.5 * h * std::abs(x);
  if (!(a < 1.0)) throw DomainError("wkb_inner_phi: at or beyond the turning point");
  return std::sqrt(2.0) * std::pow(1.0 - a * a, -0.25) * std::exp(-turning_exponent(a) / h);
}

cplx wkb_outer_phi(double x, double h, double sigma) {
  if (!(h > 0.0) || !(x > 0.0)) throw DomainError("wkb_outer_phi: requires x > 0 and h > 0");
  const cplx ch = 2.0 * std::exp(kI * (kPi / 4.0 - 0.5 / h)) * std::exp(-kPi / (2.0 * h));
  return ch * std::exp(kI * (0.25 * x * x) + cplx(sigma - 0.5, -1.0 / h) * std::log(x));
}

cplx g_direct(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  check_args("g_direct", alpha_t, h_inv, sigma);
  cfg.validate();
  const double h = 1.0 / h_inv;
  quad::PowerExpProblem prob;
  prob.c = cplx(0.5 - sigma, h_inv);
  prob.b1 = -h_inv;
  prob.b2 = cplx(0.0, -h_inv / (8.0 * alpha_t * alpha_t));
  prob.theta = -std::min(0.1, 0.5 * h);
  quad::PowerExpOptions opt;
  opt.tol.abs = 0.0;
  opt.tol.rel = 0.1 * cfg.rel_tol;
  opt.r_max = std::max(cfg.t_max, 100.0 * h + 100.0 * alpha_t * alpha_t);
  opt.min_panels = cfg.n_nodes;
  const quad::PowerExpResult r = quad::power_exp_integral(prob, opt);
  certify("g_direct", r.error, r.m0, cfg, r.converged);
  return r.m0;
}

namespace {

struct Piece {
  cplx value;
  double error = 0.0;
  bool converged = false;
};

Piece g2_piece(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  const double a2 = alpha_t * alpha_t;
  const double top = 0.5 * kPi;

  // Peak of the modulus and the lower cut where it has dropped by e^{-46}.
  const double th0 = alpha_t < 1.0 ? std::asin(alpha_t) : top;
  double peak = std::max(g2_log_modulus(th0, alpha_t, h_inv, sigma), g2_log_modulus(top, alpha_t, h_inv, sigma));
  double lo = std::min(th0, top) * 0.5;
  while (g2_log_modulus(lo, alpha_t, h_inv, sigma) > peak - 46.0) {
    lo *= 0.5;
    if (lo < 1e-12) throw ToleranceError("g2_contour: integrand does not decay towards theta = 0");
  }
  const double scale = peak;

  std::vector<double> breaks;
  const int n = std::max(cfg.n_nodes, 16);
  for (int k = 0; k <= n; ++k) breaks.push_back(lo * std::pow(top / lo, static_cast<double>(k) / n));
  if (alpha_t < 1.0) {
    breaks.push_back(th0);
    std::sort(breaks.begin(), breaks.end());
  }

  const cplx pre = std::pow(2.0 * a2, 0.5 - sigma);
  auto f = [&](double th) {
    const double s = std::sin(th);
    const cplx e = cplx(-h_inv * f_alpha(th, alpha_t) - scale + (sigma - 1.5) * std::log(s),
                        h_inv * nu_alpha(th, alpha_t) - (sigma + 0.5) * th);
    return quad::CVec<1>{pre * std::exp(e)};
  };
  quad::Tolerance tol;
  tol.abs = 0.0;
  tol.rel = 0.1 * cfg.rel_tol;
  tol.max_intervals = 20000;
  const auto r = quad::adaptive_gk15<1>(f, breaks, tol);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double err = r.error + 64.0 * eps * r.magnitude * (1.0 + h_inv * std::abs(nu_alpha(th0, alpha_t)));
  const double sc = std::exp(scale);
  return {sc * r.value[0], sc * err, r.converged};
}

Piece g3_piece(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  const double a2 = alpha_t * alpha_t;
  quad::PowerExpProblem prob;
  prob.c = cplx(0.5 - sigma, h_inv);
  prob.b1 = cplx(0.0, -h_inv);
  prob.b2 = cplx(0.0, h_inv / (8.0 * a2));
  prob.theta = 0.0;
  prob.upper = 2.0 * a2;
  quad::PowerExpOptions opt;
  opt.tol.abs = 0.0;
  opt.tol.rel = 0.1 * cfg.rel_tol;
  opt.min_panels = cfg.n_nodes;
  const quad::PowerExpResult r = quad::power_exp_integral(prob, opt);
  const cplx pre = std::exp(cplx(-0.5 * kPi * h_inv, kPi / 4.0 - 0.5 * kPi * sigma));
  return {pre * r.m0, std::abs(pre) * r.error, r.converged};
}

}  // namespace

cplx g2_contour(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  check_args("g2_contour", alpha_t, h_inv, sigma);
  cfg.validate();
  const Piece p = g2_piece(alpha_t, h_inv, sigma, cfg);
  certify("g2_contour", p.error, p.value, cfg, p.converged);
  return p.value;
}

cplx g3_contour(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  check_args("g3_contour", alpha_t, h_inv, sigma);
  cfg.validate();
  const Piece p = g3_piece(alpha_t, h_inv, sigma, cfg);
  certify("g3_contour", p.error, p.value, cfg, p.converged);
  return p.value;
}

cplx g_split(double alpha_t, double h_inv, double sigma, const weber::QuadratureConfig& cfg) {
  check_args("g_split", alpha_t, h_inv, sigma);
  cfg.validate();
  const Piece a = g2_piece(alpha_t, h_inv, sigma, cfg);
  const Piece b = g3_piece(alpha_t, h_inv, sigma, cfg);
  const cplx sum = a.value + b.value;
  certify("g_split", a.error + b.error, sum, cfg, a.converged && b.converged);
  return sum;
}

cplx g2_curvature(double alpha_t) {
  if (!(alpha_t > 0.0 && alpha_t < 1.0)) throw DomainError("g2_curvature: requires 0 < alpha_t < 1");
  const double th0 = std::asin(alpha_t);
  return cplx(f_alpha_dd(th0, alpha_t), -nu_alpha_dd(th0, alpha_t));
}

cplx g2_stationary(double alpha_t, double h_inv, double sigma) {
  check_args("g2_stationary", alpha_t, h_inv, sigma);
  if (!(alpha_t < 1.0)) throw DomainError("g2_stationary: requires alpha_t < 1");
  const double th0 = std::asin(alpha_t);
  const cplx expo = h_inv * cplx(-f_alpha(th0, alpha_t), nu_alpha(th0, alpha_t));
  const cplx amp = std::pow(2.0 * alpha_t * alpha_t, 0.5 - sigma) * std::pow(std::sin(th0), sigma - 1.5) *
                   std::exp(cplx(0.0, -(sigma + 0.5) * th0));
  const cplx width = std::sqrt(2.0 * kPi / (h_inv * g2_curvature(alpha_t)));
  return amp * std::exp(expo) * width;
}

cplx g2_closed_form(double alpha_t, double h_inv, double sigma) {
  check_args("g2_closed_form", alpha_t, h_inv, sigma);
  if (!(alpha_t < 1.0)) throw DomainError("g2_closed_form: requires alpha_t < 1");
  const double a = alpha_t;
  const double th0 = std::asin(a);
  const double mod = std::pow(2.0, 0.5 - sigma) * std::sqrt(kPi / h_inv) * std::pow(a, 0.5 - sigma) *
                     std::pow(1.0 - a * a, -0.25);
  const cplx expo = h_inv * cplx(-(a * std::sqrt(1.0 - a * a) + th0), -0.5 - a * a + std::log(2.0 * a));
  return mod * std::exp(expo + kI * (-sigma * th0 - kPi / 4.0));
}

cplx g3_stationary(double alpha_t, double h_inv, double sigma) {
  check_args("g3_stationary", alpha_t, h_inv, sigma);
  if (!(alpha_t > 1.0)) throw DomainError("g3_stationary: requires alpha_t > 1");
  const double s0 = g3_saddle(alpha_t);
  const double dd = 1.0 / (4.0 * alpha_t * alpha_t) - 1.0 / (s0 * s0);
  const double width = std::sqrt(2.0 * kPi / (h_inv * -dd));
  // e^{i pi/4} from dz = i ds cancels the e^{-i pi/4} of the stationary phase
  const cplx expo(-0.5 * kPi * h_inv, h_inv * phi_alpha(s0, alpha_t) - 0.5 * kPi * sigma);
  return std::exp(expo) * std::pow(s0, -sigma - 0.5) * width;
}

cplx v_from_g(double x, double h, double sigma, cplx g) {
  if (!(x > 0.0) || !(h > 0.0)) throw DomainError("v_from_g: requires x > 0 and h > 0");
  const cplx s(0.5 - sigma, 1.0 / h);
  const cplx lg = -s * std::log(h * x) - specfun::log_gamma(s) +
                  cplx(-kPi / (4.0 * h), 0.25 * x * x - 0.25 * kPi * sigma + kPi / 8.0);
  return std::exp(lg) * g;
}

cplx turning_asymp_v(double x, const profile::SpectralParams& params) {
  if (params.kappa != 1.0) throw DomainError("turning_asymp_v: requires kappa = 1");
  if (!(params.h > 0.0 && params.h <= 0.3)) throw DomainError("turning_asymp_v: requires 0 < h <= 0.3");
  if (!(x > 0.0)) throw DomainError("turning_asymp_v: requires x > 0");
  const TurningParams tp = TurningParams::at(x, params.h, params.sigma);
  if (tp.alpha_t >= kBandLo && tp.alpha_t <= kBandHi)
    throw DomainError(fmt("turning_asymp_v: alpha_t = %.3e inside the turning band", tp.alpha_t));
  const double h_inv = 1.0 / params.h;
  const cplx g = tp.alpha_t < kBandLo ? g2_stationary(tp.alpha_t, h_inv, params.sigma)
                                      : g3_stationary(tp.alpha_t, h_inv, params.sigma);
  return v_from_g(x, params.h, params.sigma, g);
}

double lemma_inner_v(double x, double h) {
  if (!(h > 0.0) || !(x >= 0.0)) throw DomainError("lemma_inner_v: requires x >= 0 and h > 0");
  const double a = 0.5 * std::sqrt(h) * x;
  if (!(a < 1.0)) throw DomainError("lemma_inner_v: at or beyond the turning point");
  return std::pow(1.0 - a, -0.25) * std::exp(-turning_exponent(a) / h);
}

cplx lemma_outer_v(double x, double h, double sigma) {
  if (!(h > 0.0) || !(x > 0.0)) throw DomainError("lemma_outer_v: requires x > 0 and h > 0");
  return std::exp(kI * (0.25 * x * x) + cplx(sigma - 0.5, -1.0 / h) * std::log(x));
}

}  // namespace blowup::asym
