#pragma once

// Adaptive Gauss-Kronrod and fixed Gauss-Legendre rules for the
// complex-valued integrals used throughout the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace blowup::quad {

using cplx = std::complex<double>;

template <std::size_t N>
using CVec = std::array<cplx, N>;

struct Tolerance {
  double abs = 1e-14;
  double rel = 1e-12;
  int max_intervals = 6000;
};

template <std::size_t N>
struct Result {
  CVec<N> value{};
  double error = 0.0;      // Kronrod estimate, summed over intervals
  double magnitude = 0.0;  // integral of max_i |f_i| (scale for rounding)
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a = 0.0, b = 0.0;
  CVec<N> value{};
  double error = 0.0;
  double magnitude = 0.0;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Panel<N> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Panel<N> p;
  p.a = a;
  p.b = b;
  CVec<N> kron{}, gauss{};
  double mag = 0.0;
  auto accumulate = [&](const CVec<N>& v, double wk, double wg) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      kron[i] += wk * v[i];
      gauss[i] += wg * v[i];
      m = std::max(m, std::abs(v[i]));
    }
    mag += wk * m;
  };
  accumulate(f(c), kWgk[7], kWg[3]);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double wg = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    accumulate(f(c - dx), kWgk[j], wg);
    accumulate(f(c + dx), kWgk[j], wg);
  }
  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    p.value[i] = h * kron[i];
    err = std::max(err, std::abs(h * (kron[i] - gauss[i])));
  }
  p.magnitude = std::abs(h) * mag;
  // Kronrod difference overestimates smooth panels; this scaling follows QUADPACK.
  const double scaled = err > 0.0 ? p.magnitude * std::min(1.0, std::pow(200.0 * err / std::max(p.magnitude, 1e-300), 1.5)) : 0.0;
  p.error = std::max(scaled, 50.0 * std::numeric_limits<double>::epsilon() * p.magnitude);
  return p;
}

}  // namespace detail

/// Adaptive 15-point Gauss-Kronrod over the panels defined by `breaks`
/// (sorted, at least two entries). The integrand maps double -> CVec<N>.
template <std::size_t N, class F>
Result<N> adaptive_gk15(F&& f, std::span<const double> breaks, const Tolerance& tol) {
  using Panel = detail::Panel<N>;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::priority_queue<Panel> open;
  std::vector<Panel> settled;
  Result<N> out;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (breaks[k + 1] <= breaks[k]) continue;
    open.push(detail::gk15<N>(f, breaks[k], breaks[k + 1]));
    out.evaluations += 15;
  }
  auto totals = [&](CVec<N>& value, double& error, double& mag) {
    value = CVec<N>{};
    error = 0.0;
    mag = 0.0;
    auto add = [&](const Panel& p) {
      for (std::size_t i = 0; i < N; ++i) value[i] += p.value[i];
      error += p.error;
      mag += p.magnitude;
    };
    for (const auto& p : settled) add(p);
    auto copy = open;
    while (!copy.empty()) {
      add(copy.top());
      copy.pop();
    }
  };
  CVec<N> value{};
  double error = 0.0, mag = 0.0;
  int intervals = static_cast<int>(open.size());
  totals(value, error, mag);
  auto target = [&](const CVec<N>& v) {
    double vmax = 0.0;
    for (const auto& x : v) vmax = std::max(vmax, std::abs(x));
    return std::max(tol.abs, tol.rel * vmax);
  };
  // Running sums are refreshed periodically to avoid drift.
  int since_refresh = 0;
  while (!open.empty() && error > target(value) && intervals < tol.max_intervals) {
    Panel worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.error <= 100.0 * eps * worst.magnitude || mid <= worst.a || mid >= worst.b) {
      settled.push_back(worst);
      continue;
    }
    Panel left = detail::gk15<N>(f, worst.a, mid);
    Panel right = detail::gk15<N>(f, mid, worst.b);
    out.evaluations += 30;
    ++intervals;
    for (std::size_t i = 0; i < N; ++i) value[i] += left.value[i] + right.value[i] - worst.value[i];
    error += left.error + right.error - worst.error;
    mag += left.magnitude + right.magnitude - worst.magnitude;
    open.push(left);
    open.push(right);
    if (++since_refresh == 64) {
      totals(value, error, mag);
      since_refresh = 0;
    }
  }
  totals(value, error, mag);
  out.value = value;
  out.error = error;
  out.magnitude = mag;
  out.converged = error <= target(value);
  return out;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached for the lifetime of the process; n >= 1.
const GaussLegendre& gauss_legendre(int n);

/// Integral of t^(c-1) exp(b1 t + b2 t^2) along the ray t = r e^{i theta},
/// 0 <= r <= upper, together with the first moment (t^c instead of t^(c-1)).
struct PowerExpProblem {
  cplx c{1.0, 0.0};
  cplx b1{0.0, 0.0};
  cplx b2{0.0, 0.0};
  double theta = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

struct PowerExpOptions {
  Tolerance tol{};
  double r_max = 80.0;
  int min_panels = 16;
};

struct PowerExpResult {
  cplx m0{};
  cplx m1{};
  double error = 0.0;      // quadrature estimate plus rounding floor
  double magnitude = 0.0;  // scale of the integrand (cancellation monitor)
  int evaluations = 0;
  bool converged = false;
};

/// Requires Re c > 0. A Taylor series handles the head near t = 0, adaptive
/// Gauss-Kronrod the rest. If upper is infinite the ray must be a direction
/// of decay and the integral is truncated once the integrand is negligible.
PowerExpResult power_exp_integral(const PowerExpProblem& prob, const PowerExpOptions& opt);

}  // namespace blowup::quad
