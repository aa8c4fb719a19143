#include "blowup/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/kernels.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/solver.hpp"

namespace blowup::profile {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr double kImagTol = 1e-8;
constexpr int kPanelNodes = 20;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

cplx matching_quotient(const SpectralParams& params) {
  const weber::DValue at0 = weber::v_at_zero(params.lambda);
  if (std::abs(at0.value) == 0.0) throw MatchError("amplitude: w(0) vanishes");
  return -2.0 * std::sqrt(params.h) * at0.derivative / at0.value;
}

double stencil_step(const ProfileSolution& sol, double z, double step) {
  if (step > 0.0) return step;
  const SpectralParams& pr = sol.params;
  return 0.02 / (1.0 + 0.5 * pr.h * std::abs(z) + std::sqrt(std::abs(pr.kappa)));
}

// Second derivative from five equally spaced values.
cplx second_difference(const cplx (&f)[5], double d) {
  return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * d * d);
}

double outermost(const ProfileSolution& sol) {
  double r = 0.0;
  for (const ProfileSample& s : sol.samples) r = std::max(r, std::abs(s.z));
  return r;
}

// Panel ends on [0, R]: uniform near the kink, geometric further out.
std::vector<double> panel_breaks(double R) {
  std::vector<double> b{0.0};
  double x = 0.25;
  while (x < R) {
    b.push_back(x);
    x = x < 1.0 ? x + 0.25 : x * 1.25;
  }
  b.push_back(R);
  if (b.size() >= 3 && b[b.size() - 1] - b[b.size() - 2] < 1e-3 * R) b.erase(b.end() - 2);
  return b;
}

}  // namespace

double sigma_c_of_p(double p) { return solver::sigma_critical(p); }

SpectralParams SpectralParams::make(double p, double sigma, double h, double kappa) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("SpectralParams: p must exceed 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("SpectralParams: h must be positive");
  if (!(kappa != 0.0) || !std::isfinite(kappa)) throw DomainError("SpectralParams: kappa must be nonzero");
  if (!std::isfinite(sigma)) throw DomainError("SpectralParams: sigma must be finite");
  SpectralParams s;
  s.p = p;
  s.sigma = sigma;
  s.sigma_c = solver::sigma_critical(p);
  s.h = h;
  s.kappa = kappa;
  s.lambda = cplx(-kappa / h, -sigma);
  return s;
}

SpectralParams SpectralParams::from_h(double h) {
  const solver::RootResult r = solver::solve_sigma(h);
  return make(solver::p_from_sigma(r.value), r.value, h, 1.0);
}

SpectralParams SpectralParams::from_p(double p) {
  const solver::RootResult hr = solver::solve_h_for_p(p);
  const solver::RootResult sr = solver::solve_sigma(hr.value);
  return make(p, sr.value, hr.value, 1.0);
}

cplx amplitude(const SpectralParams& params, AmplitudeMode mode) {
  if (!(params.p > 1.0)) throw DomainError("amplitude: p must exceed 1");
  const cplx q = matching_quotient(params);
  double base = 0.0;
  if (mode == AmplitudeMode::strict) {
    if (std::abs(q.imag()) > kImagTol * std::abs(q))
      throw MatchError(fmt("amplitude: -2 w_z(0)/w(0) not real (|Im|/|.| = %.3e)", std::abs(q.imag()) / std::abs(q)));
    if (!(q.real() > 0.0)) throw MatchError("amplitude: -2 w_z(0)/w(0) not positive");
    base = q.real();
  } else {
    base = std::abs(q);
  }
  const cplx w0 = weber::v_at_zero(params.lambda).value;
  return std::pow(base, 1.0 / (params.p - 1.0)) / w0;
}

ProfileSample ProfileSolution::evaluate(double z) const {
  const double sh = std::sqrt(params.h);
  const double az = std::abs(z);
  const double sgn = z < 0.0 ? -1.0 : 1.0;
  const weber::Envelope env = weber::v_envelope(sh * az, params.lambda, cfg);
  ProfileSample s;
  s.z = z;
  s.eta = alpha * env.value;
  s.eta_prime = sgn * alpha * sh * env.derivative;
  const cplx chirp = std::exp(kI * (0.25 * params.h * z * z));
  s.phi = chirp * s.eta;
  s.phi_prime = chirp * (s.eta_prime + kI * (0.5 * params.h * z) * s.eta);
  return s;
}

std::vector<double> symmetric_grid(double z_min, double z_max, int n_per_side) {
  if (!(z_min > 0.0) || !(z_max > z_min) || !std::isfinite(z_max))
    throw GridError("symmetric_grid: need 0 < z_min < z_max");
  if (n_per_side < 2) throw GridError("symmetric_grid: need at least 2 points per side");
  std::vector<double> pos(static_cast<std::size_t>(n_per_side));
  const double ratio = std::log(z_max / z_min) / (n_per_side - 1);
  for (int k = 0; k < n_per_side; ++k) pos[static_cast<std::size_t>(k)] = z_min * std::exp(ratio * k);
  pos.back() = z_max;
  std::vector<double> out;
  out.reserve(pos.size() * 2);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
  out.insert(out.end(), pos.begin(), pos.end());
  return out;
}

ProfileSolution build_profile(const SpectralParams& params, std::span<const double> grid,
                              const weber::QuadratureConfig& cfg, AmplitudeMode mode) {
  cfg.validate();
  std::vector<double> zs(grid.begin(), grid.end());
  std::sort(zs.begin(), zs.end());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double mirror = -zs[zs.size() - 1 - i];
    if (!std::isfinite(zs[i]) || std::abs(zs[i] - mirror) > 1e-12 * std::max(1.0, std::abs(zs[i])))
      throw GridError("build_profile: grid is not symmetric about 0");
  }

  ProfileSolution sol;
  sol.params = params;
  sol.cfg = cfg;
  sol.alpha = amplitude(params, mode);
  const cplx il = kI * params.lambda;
  sol.c0 = sol.alpha * std::pow(cplx(params.h), 0.5 * (il - 0.5)) * std::exp(0.25 * kPi * params.lambda) *
           std::exp(kI * (kPi / 8.0));
  sol.c1 = (il - 0.5) * sol.c0;

  // phi depends on |z| only: evaluate the non-negative half and mirror it.
  const std::size_t n = zs.size();
  const std::size_t half = n / 2;
  sol.samples.resize(n);
  for (std::size_t i = half; i < n; ++i) sol.samples[i] = sol.evaluate(zs[i]);
  for (std::size_t i = 0; i < half; ++i) {
    ProfileSample s = sol.samples[n - 1 - i];
    s.z = zs[i];
    s.phi_prime = -s.phi_prime;
    s.eta_prime = -s.eta_prime;
    sol.samples[i] = s;
  }
  return sol;
}

ProfileSolution build_profile(std::optional<double> p, std::optional<double> h, std::span<const double> grid,
                              const weber::QuadratureConfig& cfg) {
  if (p.has_value() == h.has_value()) throw DomainError("build_profile: give exactly one of p and h");
  const SpectralParams params = p ? SpectralParams::from_p(*p) : SpectralParams::from_h(*h);
  return build_profile(params, grid, cfg);
}

double jump_residual(const ProfileSolution& sol) {
  const ProfileSample s0 = sol.evaluate(0.0);
  const double mod = std::abs(s0.phi);
  return std::abs(2.0 * s0.phi_prime + std::pow(mod, sol.params.p - 1.0) * s0.phi);
}

double ode_residual(const ProfileSolution& sol, double z, double step) {
  const double d = stencil_step(sol, z, step);
  if (z == 0.0 || std::abs(z) <= 2.0 * d) throw GridError(fmt("ode_residual: z = %.3e too close to 0 for step %.3e", z, d));
  cplx f[5];
  for (int k = 0; k < 5; ++k) f[k] = sol.evaluate(z + (k - 2) * d).phi;
  const SpectralParams& pr = sol.params;
  const cplx res = (pr.kappa + kI * pr.h * pr.sigma) * f[2] - second_difference(f, d) - 0.25 * pr.h * pr.h * z * z * f[2];
  return std::abs(res);
}

double ode_residual_eta(const ProfileSolution& sol, double z, double step) {
  const double d = stencil_step(sol, z, step);
  if (z == 0.0 || std::abs(z) <= 2.0 * d) throw GridError(fmt("ode_residual_eta: z = %.3e too close to 0 for step %.3e", z, d));
  cplx f[5];
  for (int k = 0; k < 5; ++k) f[k] = sol.evaluate(z + (k - 2) * d).eta;
  const ProfileSample c = sol.evaluate(z);
  const SpectralParams& pr = sol.params;
  const cplx lam = 0.5 * c.eta + z * c.eta_prime;
  const cplx res = (pr.kappa + kI * pr.h * pr.sigma) * c.eta - kI * pr.h * lam - second_difference(f, d);
  return std::abs(res);
}

Integrals profile_integrals(const ProfileSolution& sol, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("profile_integrals: R must be positive");
  const std::vector<double> b = panel_breaks(R);
  const quad::GaussLegendre& gl = quad::gauss_legendre(kPanelNodes);
  const std::size_t m = (b.size() - 1) * gl.nodes.size();
  std::vector<double> w(m), z(m), er(m), ei(m), dr(m), di(m);
  std::size_t j = 0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double mid = 0.5 * (b[k] + b[k + 1]);
    const double rad = 0.5 * (b[k + 1] - b[k]);
    for (std::size_t q = 0; q < gl.nodes.size(); ++q, ++j) {
      z[j] = mid + rad * gl.nodes[q];
      w[j] = 2.0 * rad * gl.weights[q];  // doubled: integrands are even in z
      const ProfileSample s = sol.evaluate(z[j]);
      er[j] = s.eta.real();
      ei[j] = s.eta.imag();
      dr[j] = s.eta_prime.real();
      di[j] = s.eta_prime.imag();
    }
  }
  const kernels::Moments mo = kernels::profile_moments({w, z, er, ei, dr, di});
  return {mo.mass, mo.grad, mo.virial};
}

PohozhaevReport pohozhaev_report(const ProfileSolution& sol, double R) {
  const SpectralParams& pr = sol.params;
  if (!(pr.sigma < 1.0)) throw DomainError("pohozhaev_report: requires sigma < 1");
  PohozhaevReport r;
  r.R = R;
  r.integrals = profile_integrals(sol, R);
  r.eta0_pow = std::pow(std::abs(sol.evaluate(0.0).eta), pr.p + 1.0);
  r.grad_tail = std::norm(sol.c1) * std::pow(R, 2.0 * pr.sigma - 2.0) / (1.0 - pr.sigma);
  r.c0_sq = std::norm(sol.c0);

  const double M = r.integrals.mass;
  const double G = r.integrals.grad;
  const double V = r.integrals.virial;
  const double Gfull = G + r.grad_tail;
  const double R2s = std::pow(R, 2.0 * pr.sigma);
  r.first = pr.kappa * M + pr.h * V + Gfull - r.eta0_pow;
  r.second = pr.sigma * M - r.c0_sq * R2s;
  r.third = pr.kappa * pr.sigma * M + pr.h * pr.sigma * V + Gfull - 0.5 * r.eta0_pow;
  r.final_truncated = (1.0 - pr.sigma) * G - (0.5 - pr.sigma) * r.eta0_pow;
  r.final_corrected = (1.0 - pr.sigma) * Gfull - (0.5 - pr.sigma) * r.eta0_pow;
  r.mass_limit = pr.sigma * M / R2s;
  r.virial_limit = -pr.h * pr.sigma * V / R2s;
  // sigma = |c0|^2 R^{2 sigma} / M and kappa = virial_limit / |c0|^2 to leading order
  r.sigma_positive = M > 0.0 && r.c0_sq * R2s / M > 0.0 && pr.sigma > 0.0;
  r.kappa_positive = r.c0_sq > 0.0 && r.virial_limit / r.c0_sq > 0.0 && pr.kappa > 0.0;
  return r;
}

EnergyReport energy_report(const ProfileSolution& sol, double R) {
  const SpectralParams& pr = sol.params;
  if (!(pr.sigma < 1.0)) throw DomainError("energy: requires sigma < 1");
  const Integrals in = profile_integrals(sol, R);
  const double eta0 = std::pow(std::abs(sol.evaluate(0.0).eta), pr.p + 1.0);
  EnergyReport e;
  e.R = R;
  e.grad_tail = std::norm(sol.c1) * std::pow(R, 2.0 * pr.sigma - 2.0) / (1.0 - pr.sigma);
  const double G = in.grad + e.grad_tail;
  e.truncated = 0.5 * in.grad - eta0 / (pr.p + 1.0);
  e.direct = 0.5 * G - eta0 / (pr.p + 1.0);
  e.identity_form = (0.5 - 2.0 * (1.0 - pr.sigma) / ((pr.p + 1.0) * (1.0 - 2.0 * pr.sigma))) * G;
  return e;
}

double energy(const ProfileSolution& sol) {
  const double R = outermost(sol);
  if (!(R > 0.0)) throw GridError("energy: profile has no samples away from 0");
  return energy_report(sol, R).direct;
}

double mass_truncated(const ProfileSolution& sol, double R) { return profile_integrals(sol, R).mass; }

double BlowupCurve::lambda(double t) const {
  if (!(t < T_star)) throw DomainError("BlowupCurve: t must precede T*");
  return 1.0 / std::sqrt(2.0 * h * (T_star - t));
}

double BlowupCurve::tau(double t) const {
  if (!(t < T_star)) throw DomainError("BlowupCurve: t must precede T*");
  return kappa / (2.0 * h) * std::log(T_star / (T_star - t)) + tau0;
}

cplx reconstruct_psi(const BlowupCurve& curve, const ProfileSolution& sol, double x, double t) {
  if (!(curve.T_star > 0.0) || !(curve.h > 0.0)) throw DomainError("reconstruct_psi: need T* > 0 and h > 0");
  if (!(t >= 0.0)) throw DomainError("reconstruct_psi: t must be non-negative");
  if (!(t < curve.T_star)) throw DomainError("reconstruct_psi: t must precede T*");
  const double lam = curve.lambda(t);
  const cplx eta = sol.evaluate(lam * x).eta;
  return std::pow(lam, 1.0 / (sol.params.p - 1.0)) * std::exp(kI * curve.tau(t)) * eta;
}

}  // namespace blowup::profile
