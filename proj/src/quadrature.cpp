#include "blowup/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "blowup/errors.hpp"

namespace blowup::quad {

namespace {

GaussLegendre build_rule(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p1 = x, p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Real part of the log-integrand (with the first-moment factor folded in).
double log_modulus(const PowerExpProblem& p, double r) {
  const cplx e1 = std::polar(1.0, p.theta), e2 = std::polar(1.0, 2.0 * p.theta);
  const double lr = std::log(r);
  return (p.b1 * e1).real() * r + (p.b2 * e2).real() * r * r + (p.c.real() - 1.0) * lr -
         p.theta * p.c.imag() + std::max(0.0, lr);
}

double phase_rate(const PowerExpProblem& p, double r) {
  const cplx e1 = std::polar(1.0, p.theta), e2 = std::polar(1.0, 2.0 * p.theta);
  return std::abs((p.b1 * e1).imag() + 2.0 * (p.b2 * e2).imag() * r + p.c.imag() / r);
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

PowerExpResult power_exp_integral(const PowerExpProblem& p, const PowerExpOptions& opt) {
  if (!(p.c.real() > 0.0)) throw DomainError("power_exp_integral: Re c must be positive");
  if (!(p.upper > 0.0)) throw DomainError("power_exp_integral: upper must be positive");
  PowerExpResult out;
  const cplx dir = std::polar(1.0, p.theta);
  const double nb1 = std::abs(p.b1), nb2 = std::abs(p.b2);

  // Head radius: |b1| a + |b2| a^2 <= 1 keeps the Taylor terms factorially small.
  double a = nb2 > 0.0 ? (-nb1 + std::sqrt(nb1 * nb1 + 4.0 * nb2)) / (2.0 * nb2)
                       : (nb1 > 0.0 ? 1.0 / nb1 : 1.0);
  a = std::min({a, 1.0, p.upper});
  const cplx T = a * dir;
  const cplx logT{std::log(a), p.theta};
  const cplx Tc = std::exp(p.c * logT);
  cplx s0{}, s1{};
  double head_mag = 0.0;
  {
    cplx dm1{}, d = 1.0;
    const cplx u1 = p.b1 * T, u2 = 2.0 * p.b2 * T * T;
    double small = 0.0;
    for (int n = 0; n < 200; ++n) {
      const cplx t0 = d / (static_cast<double>(n) + p.c);
      const cplx t1 = d / (static_cast<double>(n) + 1.0 + p.c);
      s0 += t0;
      s1 += t1;
      head_mag += std::abs(t0) + std::abs(t1);
      const double sz = std::abs(d);
      small = (sz <= 1e-18 * std::max(std::abs(s0), 1e-300)) ? small + 1 : 0;
      if (small >= 3) break;
      const cplx next = (u1 * d + u2 * dm1) / static_cast<double>(n + 1);
      dm1 = d;
      d = next;
    }
  }
  out.m0 = Tc * s0;
  out.m1 = Tc * T * s1;
  head_mag *= std::abs(Tc) * std::max(1.0, a);
  out.evaluations = 0;

  if (a >= p.upper) {
    out.magnitude = head_mag;
    out.error = 16.0 * kEps * head_mag;
    out.converged = true;
    return out;
  }

  // Truncation radius along the ray.
  double R = p.upper;
  if (!std::isfinite(R) || R > opt.r_max) {
    double emax = log_modulus(p, a), prev = emax;
    double r = a;
    bool found = false;
    while (r < opt.r_max) {
      r = std::min(opt.r_max, std::max(r * 1.05, r + 0.01));
      const double e = log_modulus(p, r);
      emax = std::max(emax, e);
      if (e < emax - 46.0 && e < prev) {
        found = true;
        break;
      }
      prev = e;
    }
    if (!found && !(std::isfinite(p.upper) && p.upper <= opt.r_max)) {
      out.converged = false;
      out.magnitude = head_mag;
      out.error = std::numeric_limits<double>::infinity();
      return out;
    }
    R = std::min(r, p.upper);
  }

  std::vector<double> breaks{a};
  while (breaks.back() < R && breaks.size() < 20000) {
    const double r = breaks.back();
    double step = 0.5 * r;
    const double w = phase_rate(p, r);
    if (w > 0.0) step = std::min(step, std::numbers::pi / w);
    step = std::max(step, 1e-6 * R);
    breaks.push_back(std::min(R, r + step));
  }
  breaks.back() = R;
  while (static_cast<int>(breaks.size()) - 1 < opt.min_panels) {
    std::vector<double> finer{breaks.front()};
    for (std::size_t k = 1; k < breaks.size(); ++k) {
      finer.push_back(0.5 * (breaks[k - 1] + breaks[k]));
      finer.push_back(breaks[k]);
    }
    breaks.swap(finer);
  }

  const cplx cm1 = p.c - 1.0;
  // Phase size at the peak of |f| amplifies rounding in exp().
  double peak = 0.0, peak_phase = 0.0;
  auto f = [&](double r) {
    const cplx t = r * dir;
    const cplx w = p.b1 * t + p.b2 * t * t + cm1 * cplx(std::log(r), p.theta);
    const cplx v = std::exp(w) * dir;
    const double av = std::abs(v) * std::max(1.0, r);
    if (av > peak) {
      peak = av;
      peak_phase = std::abs(w.imag());
    }
    return CVec<2>{v, v * t};
  };
  auto res = adaptive_gk15<2>(f, breaks, opt.tol);
  out.m0 += res.value[0];
  out.m1 += res.value[1];
  out.evaluations = res.evaluations;
  out.magnitude = head_mag + res.magnitude * (1.0 + peak_phase);
  out.error = res.error + 16.0 * kEps * out.magnitude;
  const double target = std::max(opt.tol.abs, opt.tol.rel * std::max(std::abs(out.m0), std::abs(out.m1)));
  out.converged = res.error <= std::max(target, 100.0 * kEps * out.magnitude);
  return out;
}

}  // namespace blowup::quad
