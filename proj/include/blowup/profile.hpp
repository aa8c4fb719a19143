#pragma once

// Outgoing self-similar profiles for the point-nonlinearity NLS.
//
// The profile solves (kappa + i h sigma) phi - phi'' - h^2 z^2 phi / 4 = 0
// away from z = 0 with the jump 2 phi'(0+) = -|phi(0)|^{p-1} phi(0), and is
// built as phi(z) = alpha w(|z|). The energy-space form is
// eta(z) = e^{-i h z^2/4} phi(z).

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "blowup/weber.hpp"

namespace blowup::profile {

using cplx = std::complex<double>;

struct SpectralParams {
  double p = 0.0;
  double sigma = 0.0;
  double sigma_c = 0.0;
  double h = 0.0;
  double kappa = 1.0;
  cplx lambda{};  // -kappa/h - i sigma

  /// sigma = sigma(h) from the solver; p follows from sigma_c(p) = sigma.
  static SpectralParams from_h(double h);
  /// h = solve_h_for_p(p), then sigma = sigma(h).
  static SpectralParams from_p(double p);
  /// No solver involved. Used for scaled and perturbed parameter sets.
  static SpectralParams make(double p, double sigma, double h, double kappa);
};

double sigma_c_of_p(double p);

enum class AmplitudeMode {
  strict,   // requires -2 w_z(0)/w(0) real and positive
  relaxed,  // uses its modulus; for negative controls off the root
};

/// alpha = (-2 w_z(0)/w(0))^{1/(p-1)} / w(0).
cplx amplitude(const SpectralParams& params, AmplitudeMode mode = AmplitudeMode::strict);

struct ProfileSample {
  double z = 0.0;
  cplx phi{};
  cplx phi_prime{};
  cplx eta{};
  cplx eta_prime{};
};

struct ProfileSolution {
  SpectralParams params;
  cplx alpha{};
  std::vector<ProfileSample> samples;
  cplx c0{};  // eta(z) ~ c0 |z|^{i lambda - 1/2}
  cplx c1{};  // eta_z(z) ~ sgn(z) c1 |z|^{i lambda - 3/2}
  weber::QuadratureConfig cfg{};

  /// phi and eta at an arbitrary z; phi_prime at z = 0 is the right limit.
  ProfileSample evaluate(double z) const;
};

/// Points +-z_k, z_k geometric in [z_min, z_max], n_per_side each, ascending.
std::vector<double> symmetric_grid(double z_min, double z_max, int n_per_side);

ProfileSolution build_profile(const SpectralParams& params, std::span<const double> grid,
                              const weber::QuadratureConfig& cfg = {},
                              AmplitudeMode mode = AmplitudeMode::strict);

/// Exactly one of p, h must be set.
ProfileSolution build_profile(std::optional<double> p, std::optional<double> h,
                              std::span<const double> grid, const weber::QuadratureConfig& cfg = {});

/// |2 phi'(0+) + |phi(0)|^{p-1} phi(0)|
double jump_residual(const ProfileSolution& sol);

/// Five-point stencil residual of the linear equation at z != 0.
/// step = 0 picks a step adapted to the local wavelength.
double ode_residual(const ProfileSolution& sol, double z, double step = 0.0);
/// Same equation written for eta: (kappa + i h sigma) eta - i h (eta/2 + z eta_z) - eta_zz.
double ode_residual_eta(const ProfileSolution& sol, double z, double step = 0.0);

/// Integrals over [-R, R], evaluated from the profile itself.
struct Integrals {
  double mass = 0.0;    // int |eta|^2
  double grad = 0.0;    // int |eta_z|^2
  double virial = 0.0;  // Im int (eta/2 + z eta_z) conj(eta)
};

Integrals profile_integrals(const ProfileSolution& sol, double R);

struct PohozhaevReport {
  double R = 0.0;
  Integrals integrals;
  double eta0_pow = 0.0;   // |eta(0)|^{p+1}
  double grad_tail = 0.0;  // int_{|z|>R} |eta_z|^2 from the c1 asymptotics
  double c0_sq = 0.0;
  // Residuals, each O(R^{2 sigma - 2}). G includes grad_tail where noted.
  double first = 0.0;   // kappa M + h V + (G + tail) - |eta(0)|^{p+1}
  double second = 0.0;  // sigma M - |c0|^2 R^{2 sigma}
  double third = 0.0;   // kappa sigma M + h sigma V + (G + tail) - |eta(0)|^{p+1}/2
  double final_truncated = 0.0;  // (1 - sigma) G - (1/2 - sigma)|eta(0)|^{p+1}
  double final_corrected = 0.0;  // same with G + grad_tail
  double mass_limit = 0.0;       // R^{-2 sigma} sigma M, tends to |c0|^2
  double virial_limit = 0.0;     // -R^{-2 sigma} h sigma V, tends to kappa |c0|^2
  bool sigma_positive = false;
  bool kappa_positive = false;
};

PohozhaevReport pohozhaev_report(const ProfileSolution& sol, double R);

struct EnergyReport {
  double R = 0.0;
  double direct = 0.0;         // (G + tail)/2 - |eta(0)|^{p+1}/(p+1)
  double identity_form = 0.0;  // (1/2 - 2(1-sigma)/((p+1)(1-2 sigma))) (G + tail)
  double grad_tail = 0.0;
  double truncated = 0.0;      // without the tail
};

EnergyReport energy_report(const ProfileSolution& sol, double R);
/// Energy with R the outermost sample.
double energy(const ProfileSolution& sol);
double mass_truncated(const ProfileSolution& sol, double R);

struct BlowupCurve {
  double T_star = 1.0;
  double h = 0.0;
  double kappa = 1.0;
  double tau0 = 0.0;

  double lambda(double t) const;  // (2 h (T* - t))^{-1/2}
  double tau(double t) const;     // kappa/(2h) log(T*/(T* - t)) + tau0
};

/// psi(x, t) = lambda(t)^{1/(p-1)} e^{i tau(t)} eta(lambda(t) x), 0 <= t < T*.
cplx reconstruct_psi(const BlowupCurve& curve, const ProfileSolution& sol, double x, double t);

}  // namespace blowup::profile
