#include "blowup/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "blowup/errors.hpp"
#include "blowup/matching.hpp"
#include "blowup/parallel.hpp"

namespace blowup::solver {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 400;

struct PhaseEval {
  double f;
  double noise;  // rounding scale of f
};

PhaseEval phase(double sigma, double h_inv) {
  const auto pv = matching::f_phase(sigma, h_inv, 1.0);
  double scale = std::abs(pv.constant);
  for (double t : pv.branch_terms) scale += std::abs(t);
  return {pv.f, 16.0 * kEps * std::max(scale, 1e-300)};
}

}  // namespace

double sigma_seed_small_h(double h) {
  if (!(h > 0.0)) throw DomainError("sigma_seed_small_h: h must be positive");
  return 2.0 * std::exp(-kPi / h) / h;
}

double sigma_seed_large_h(double h) {
  if (!(h > 0.0)) throw DomainError("sigma_seed_large_h: h must be positive");
  return 0.5 - 1.0 / h;
}

double sigma_critical(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("sigma_critical: p must exceed 1");
  return 0.5 - 1.0 / (p - 1.0);
}

double p_from_sigma(double sigma) {
  if (!(sigma < 0.5) || !std::isfinite(sigma)) throw DomainError("p_from_sigma: sigma must be below 1/2");
  return 1.0 + 2.0 / (1.0 - 2.0 * sigma);
}

RootResult solve_sigma(double h, double tol) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("solve_sigma: h must be positive and finite");
  if (!(tol > 0.0)) throw DomainError("solve_sigma: tol must be positive");
  const double h_inv = 1.0 / h;
  double lo = 0.0, hi = 1.0;
  const double flo = phase(lo, h_inv).f, fhi = phase(hi, h_inv).f;
  if (!(flo < 0.0 && fhi > 0.0)) throw BracketError("solve_sigma: f(0) < 0 < f(1) violated");

  double x = h < 1.0 ? sigma_seed_small_h(h) : sigma_seed_large_h(h);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  RootResult r;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= kMaxIter; ++it) {
    const PhaseEval pe = phase(x, h_inv);
    if (pe.f < 0.0) lo = x;
    else hi = x;
    const double d = matching::f_phase_dsigma(x, h_inv, 1.0);
    const double resolution = d > 0.0 ? 4.0 * pe.noise / d : 0.0;
    r.iterations = it;
    const bool small_f = std::abs(pe.f) <= tol;
    const bool small_step = last_step <= std::max(kDefaultSigmaRelTol * x, resolution) ||
                            (hi - lo) <= std::max(kDefaultSigmaRelTol * x, resolution);
    if ((small_f && small_step) || pe.f == 0.0) {
      r.value = x;
      r.residual = std::abs(pe.f);
      r.converged = true;
      break;
    }
    double next = d > 0.0 ? x - pe.f / d : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      // Geometric midpoint while the bracket spans decades near zero.
      next = (lo > 0.0 && hi / lo > 16.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    }
    last_step = std::abs(next - x);
    x = next;
  }
  if (!r.converged) throw ConvergenceError("solve_sigma: iteration cap reached");
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  if (!(r.bracket_lo < r.value)) r.bracket_lo = std::nextafter(r.value, 0.0);
  if (!(r.value < r.bracket_hi)) r.bracket_hi = std::nextafter(r.value, 1.0);
  return r;
}

double h_seed_for_p(double p) {
  if (!(p > 3.0) || !std::isfinite(p)) throw DomainError("h_seed_for_p: requires p > 3");
  if (p - 3.0 < 4.0) return kPi / std::log(8.0 / (p - 3.0));
  return 1.0 / (0.5 - sigma_critical(p));
}

RootResult solve_h_for_p(double p, double tol) {
  if (!(p > 3.0) || !std::isfinite(p)) throw DomainError("solve_h_for_p: requires p > 3");
  if (!(tol > 0.0)) throw DomainError("solve_h_for_p: tol must be positive");
  const double target = sigma_critical(p);
  const double seed = h_seed_for_p(p);
  auto g = [&](double u) { return solve_sigma(std::exp(u)).value - target; };
  double a = std::log(seed / 4.0), b = std::log(4.0 * seed);
  double ga = g(a), gb = g(b);
  if (!(ga < 0.0 && gb > 0.0)) throw BracketError("solve_h_for_p: initial bracket does not straddle sigma_c");
  RootResult r;
  int side = 0;
  double c = a, gc = ga;
  for (int it = 1; it <= kMaxIter; ++it) {
    // Illinois variant of regula falsi, with bisection if the step stalls.
    c = (a * gb - b * ga) / (gb - ga);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    gc = g(c);
    r.iterations = it;
    if (std::abs(gc) <= tol || (b - a) <= 1e-15 * std::max(1.0, std::abs(c))) {
      r.converged = true;
      break;
    }
    if (gc < 0.0) {
      a = c;
      ga = gc;
      if (side == -1) gb *= 0.5;
      side = -1;
    } else {
      b = c;
      gb = gc;
      if (side == 1) ga *= 0.5;
      side = 1;
    }
    if (it % 8 == 0) {
      const double m = 0.5 * (a + b);
      const double gm = g(m);
      if (gm < 0.0) a = m, ga = gm;
      else b = m, gb = gm;
    }
  }
  if (!r.converged) throw ConvergenceError("solve_h_for_p: iteration cap reached");
  r.value = std::exp(c);
  r.residual = std::abs(gc);
  r.bracket_lo = std::min(std::exp(a), std::nextafter(r.value, 0.0));
  r.bracket_hi = std::max(std::exp(b), std::nextafter(r.value, INFINITY));
  return r;
}

std::vector<SweepRow> sweep_sigma(double h_inv_min, double h_inv_max, int steps, unsigned threads) {
  if (!(h_inv_min > 0.0) || !(h_inv_max > h_inv_min) || !std::isfinite(h_inv_max)) {
    throw DomainError("sweep_sigma: requires 0 < h_inv_min < h_inv_max");
  }
  if (steps < 2) throw DomainError("sweep_sigma: steps must be at least 2");
  std::vector<SweepRow> rows(static_cast<std::size_t>(steps));
  parallel_for(rows.size(), worker_count(threads), [&](std::size_t i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    const double hi = (i + 1 == rows.size()) ? h_inv_max : h_inv_min + t * (h_inv_max - h_inv_min);
    SweepRow& row = rows[i];
    row.h_inv = hi;
    row.asym_log_sigma = std::log(2.0) - kPi * hi + std::log(hi);
    try {
      const RootResult r = solve_sigma(1.0 / hi);
      row.sigma = r.value;
      row.log_sigma = std::log(r.value);
      row.f_residual = r.residual;
    } catch (const NumericError& e) {
      row.sigma = row.log_sigma = row.f_residual = std::numeric_limits<double>::quiet_NaN();
      row.failure = e.what();
    }
  });
  return rows;
}

}  // namespace blowup::solver
