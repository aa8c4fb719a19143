#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blowup::solver {

struct RootResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr double kDefaultPhaseTol = 1e-12;
inline constexpr double kDefaultSigmaRelTol = 1e-10;

/// Unique sigma in (0, 1) with f(sigma, 1/h) = 0 for kappa = +1.
/// Converges when |f| <= tol and the last Newton correction is below
/// 1e-10 relative to sigma.
RootResult solve_sigma(double h, double tol = kDefaultPhaseTol);

double sigma_seed_small_h(double h);  // 2 e^{-pi/h} / h
double sigma_seed_large_h(double h);  // 1/2 - 1/h

/// Critical exponent sigma_c = 1/2 - 1/(p - 1).
double sigma_critical(double p);
/// Inverse: p with sigma_c(p) = sigma.
double p_from_sigma(double sigma);

/// Seed for solve_h_for_p.
double h_seed_for_p(double p);

/// h with sigma(h) = sigma_c(p), p > 3. Searches in log h on
/// [seed/4, 4 seed]. `tol` applies to |sigma(h) - sigma_c|.
RootResult solve_h_for_p(double p, double tol = 1e-11);

struct SweepRow {
  double h_inv = 0.0;
  double sigma = 0.0;
  double log_sigma = 0.0;
  double asym_log_sigma = 0.0;  // log 2 - pi h^{-1} + log h^{-1}
  double f_residual = 0.0;
  std::string failure;  // empty on success; sigma and friends are NaN otherwise
};

/// Evenly spaced h^{-1}; rows in index order. A row whose solve fails is
/// kept and carries the error message. Uses up to `threads` workers
/// (0 = hardware concurrency capped by BLOWUP_PROFILES_THREADS).
std::vector<SweepRow> sweep_sigma(double h_inv_min, double h_inv_max, int steps, unsigned threads = 0);

}  // namespace blowup::solver
