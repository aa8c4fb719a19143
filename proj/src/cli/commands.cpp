#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "blowup/asymptotics.hpp"
#include "blowup/cli.hpp"
#include "blowup/errors.hpp"
#include "blowup/matching.hpp"
#include "blowup/parallel.hpp"
#include "blowup/profile.hpp"
#include "blowup/solver.hpp"
#include "blowup/specfun.hpp"
#include "blowup/weber.hpp"

namespace blowup::cli {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

int emit(const Table& t, const std::string& path, std::ostream& out, std::ostream& err) {
  return write_output(path, t.text(), out, err) ? kOk : kIoError;
}

// Wraps a command body: usage problems and numeric failures become exit codes.
int guarded(const char* name, std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << name << ": invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << name << ": " << e.what() << "\n";
    return kSolverFailure;
  }
}

// ---- verification groups ----------------------------------------------

struct Check {
  bool pass = false;
  double metric = 0.0;  // mostly observed / allowed
  std::string detail;
};

Check ratio_check(double observed, double allowed, std::string detail) {
  Check c;
  c.metric = observed / allowed;
  c.pass = std::isfinite(c.metric) && c.metric <= 1.0;
  c.detail = std::move(detail) + " observed=" + format_double(observed) + " allowed=" + format_double(allowed);
  return c;
}

Check worst(std::initializer_list<Check> cs) {
  Check w = *cs.begin();
  for (const Check& c : cs) {
    if (!c.pass && w.pass) w = c;
    else if (c.pass == w.pass && c.metric > w.metric) w = c;
  }
  return w;
}

Check group_specfun(const VerifyOptions&) {
  const cplx pts[] = {{0.3, 0.7}, {2.5, -1.2}, {-3.7, 0.4}, {0.25, 8.0}, {11.2, 3.3}, {0.6, -0.05}};
  double refl = 0.0, dup = 0.0;
  for (cplx z : pts) {
    const cplx r = std::exp(specfun::log_gamma(z) + specfun::log_gamma(1.0 - z)) * std::sin(kPi * z) / kPi;
    refl = std::max(refl, std::abs(r - 1.0));
    const cplx d = std::exp(specfun::log_gamma(z) + specfun::log_gamma(z + 0.5) - specfun::log_gamma(2.0 * z) -
                            (1.0 - 2.0 * z) * std::log(2.0) - 0.5 * std::log(kPi));
    dup = std::max(dup, std::abs(d - 1.0));
  }
  return worst({ratio_check(refl, 1e-10, "reflection"), ratio_check(dup, 1e-10, "duplication")});
}

Check group_weber(const VerifyOptions&) {
  const cplx lams[] = {{-2.0, -0.1}, {-0.5, -0.3}, {-3.0, -0.05}};
  double wr = 0.0;
  for (cplx lam : lams) {
    for (double x : {0.25, 1.0, 2.5}) {
      const weber::WronskianReport r = weber::wronskian_check(lam, x);
      wr = std::max(wr, std::abs(r.numeric_v_vstar - r.closed_v_vstar) / std::abs(r.closed_v_vstar));
      wr = std::max(wr, std::abs(r.numeric_v_vminus - r.closed_v_vminus) / std::abs(r.closed_v_vminus));
    }
  }
  double conn = 0.0;
  conn = std::max(conn, weber::connection_residual({-0.3, 0.7}, {1.0, -2.0}));
  conn = std::max(conn, weber::connection_residual({0.4, -1.5}, {0.8, 0.3}));
  return worst({ratio_check(wr, 1e-8, "wronskian"), ratio_check(conn, 1e-10, "connection")});
}

Check group_matching(const VerifyOptions&) {
  double rep = 0.0;
  for (auto [s, h] : {std::pair{0.2, 1.0}, {0.05, 0.4}, {0.45, 20.0}}) {
    const cplx a = matching::a_gamma(s, h, 1.0), b = matching::a_stable(s, h, 1.0);
    rep = std::max(rep, std::abs(a - b) / std::abs(b));
  }
  double ph = 0.0;
  for (double hi : {1.0, 3.0, 5.0}) {
    const double d = matching::f_phase_gamma_form(0.1, hi, 1.0).f - matching::f_phase_reflected_form(0.1, hi, 1.0).f;
    ph = std::max(ph, std::abs(std::remainder(d, 2.0 * kPi)));
  }
  return worst({ratio_check(rep, 1e-8, "a_gamma vs a_stable"), ratio_check(ph, 1e-8, "phase forms")});
}

Check group_solver(const VerifyOptions&) {
  double small = 0.0;
  for (double hi : {3.0, 4.0, 5.0}) {
    const double s = solver::solve_sigma(1.0 / hi).value;
    small = std::max(small, std::abs(std::log(s) - (std::log(2.0) - kPi * hi + std::log(hi))));
  }
  const double h = 100.0;
  const double large = std::abs(solver::solve_sigma(h).value - (0.5 - 1.0 / h)) * h * h;
  return worst({ratio_check(small, 0.15, "small h asymptote"), ratio_check(large, 5.0, "large h expansion")});
}

profile::ProfileSolution jump_profile(double p, const VerifyOptions& o) {
  const std::vector<double> grid = profile::symmetric_grid(1e-3, 1.0, 4);
  profile::SpectralParams par = profile::SpectralParams::from_p(p);
  if (o.tamper_sigma != 0.0) {
    par = profile::SpectralParams::make(par.p, par.sigma + o.tamper_sigma, par.h, par.kappa);
    return profile::build_profile(par, grid, {}, profile::AmplitudeMode::relaxed);
  }
  return profile::build_profile(par, grid);
}

Check group_jump(const VerifyOptions& o) {
  return ratio_check(profile::jump_residual(jump_profile(5.0, o)), 1e-8, "p=5 jump residual");
}

Check group_profiles(const VerifyOptions& o) {
  double jump = 0.0, ode = 0.0;
  for (double p : {4.0, 7.0}) {
    const profile::ProfileSolution sol = jump_profile(p, o);
    jump = std::max(jump, profile::jump_residual(sol));
    for (double z : {0.2, 1.0, 5.0}) {
      const double phi = std::abs(sol.evaluate(z).phi);
      ode = std::max(ode, profile::ode_residual(sol, z) / (1.0 + phi));
    }
  }
  return worst({ratio_check(jump, 1e-8, "p=4,7 jump residual"), ratio_check(ode, 1e-5, "ode residual")});
}

Check group_pohozhaev(const VerifyOptions&) {
  const std::vector<double> grid = profile::symmetric_grid(1e-3, 1.0, 4);
  const profile::ProfileSolution sol = profile::build_profile(profile::SpectralParams::from_p(5.0), grid);
  const double s = sol.params.sigma;
  const profile::PohozhaevReport a = profile::pohozhaev_report(sol, 100.0);
  const profile::PohozhaevReport b = profile::pohozhaev_report(sol, 200.0);
  const double expected = std::pow(2.0, 2.0 * s - 2.0);
  const double dev = std::abs(b.final_truncated / a.final_truncated / expected - 1.0);
  const profile::EnergyReport e = profile::energy_report(sol, 200.0);
  return worst({ratio_check(dev, 0.3, "final identity decay"),
                ratio_check(std::abs(e.direct), 10.0 * e.grad_tail, "zero energy"),
                Check{a.sigma_positive && a.kappa_positive, a.sigma_positive && a.kappa_positive ? 0.0 : 2.0,
                      "sign flags"}});
}

Check group_asymptotics(const VerifyOptions&) {
  weber::QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  double split = 0.0;
  for (double a : {0.5, 1.5}) {
    const double s = solver::solve_sigma(0.2).value;
    const cplx d = asym::g_direct(a, 5.0, s, cfg);
    split = std::max(split, std::abs(asym::g_split(a, 5.0, s, cfg) - d) / std::abs(d));
  }
  double e[2];
  for (int k = 0; k < 2; ++k) {
    const double hi = k ? 20.0 : 10.0;
    const double s = solver::solve_sigma(1.0 / hi).value;
    const cplx ref = asym::g_split(0.5, hi, s, cfg);
    e[k] = std::abs(asym::g2_stationary(0.5, hi, s) - ref) / std::abs(ref);
  }
  const double ratio = e[1] / e[0];
  const Check order{ratio >= 0.35 && ratio <= 0.7, ratio,
                    "error ratio h_inv 10 -> 20 in [0.35, 0.7] observed=" + format_double(ratio)};
  return worst({ratio_check(split, 1e-8, "contour split"), order});
}

Check group_kappa_minus(const VerifyOptions& o) {
  const int ns = 200, nh = 50;
  std::atomic<int> bad{0};
  parallel_for(nh, worker_count(o.threads), [&](std::size_t j) {
    const double hi = 0.1 + 9.9 * static_cast<double>(j) / (nh - 1);
    std::vector<double> f(ns);
    for (int i = 0; i < ns; ++i) f[i] = matching::f_phase((i + 0.5) / ns, hi, -1.0).f;
    for (int n = -1; n <= 1; ++n) {
      for (int i = 1; i < ns; ++i) {
        const double a = f[i - 1] - 2.0 * kPi * n, b = f[i] - 2.0 * kPi * n;
        if ((a < 0.0) != (b < 0.0) || a == 0.0) ++bad;
      }
    }
  });
  return ratio_check(bad.load(), 0.5, "kappa=-1 sign changes on 200x50 grid");
}

using GroupFn = Check (*)(const VerifyOptions&);

const std::vector<std::pair<std::string, GroupFn>>& all_groups() {
  static const std::vector<std::pair<std::string, GroupFn>> g = {
      {"specfun", group_specfun},       {"weber", group_weber},
      {"matching", group_matching},     {"solver", group_solver},
      {"jump", group_jump},             {"pohozhaev", group_pohozhaev},
      {"asymptotics", group_asymptotics}, {"profiles", group_profiles},
      {"kappa_minus", group_kappa_minus},
  };
  return g;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json-lines" || s == "jsonl") return Format::json_lines;
  throw UsageError("unknown format '" + s + "'");
}

}  // namespace

std::vector<std::string> verify_groups(const std::string& level) {
  if (level == "fast") return {"specfun", "weber", "matching", "solver", "jump", "pohozhaev", "asymptotics"};
  if (level == "full") {
    std::vector<std::string> out;
    for (const auto& [name, fn] : all_groups()) out.push_back(name);
    return out;
  }
  throw UsageError("level must be fast or full");
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("sweep", err, [&] {
    require(finite_positive(o.h_inv_min), "--h-inv-min must be positive");
    require(std::isfinite(o.h_inv_max) && o.h_inv_max > o.h_inv_min, "--h-inv-max must exceed --h-inv-min");
    require(o.steps >= 2, "--steps must be at least 2");
    const std::vector<solver::SweepRow> rows = solver::sweep_sigma(o.h_inv_min, o.h_inv_max, o.steps, o.threads);
    Table t(o.format, {"h_inv", "sigma", "log_sigma", "asym_log_sigma", "f_residual"});
    int code = kOk;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const solver::SweepRow& r = rows[i];
      t.add({r.h_inv, r.sigma, r.log_sigma, r.asym_log_sigma, r.f_residual});
      if (!r.failure.empty()) {
        err << "sweep: row " << i << " (h_inv=" << format_double(r.h_inv) << "): " << r.failure << "\n";
        code = kSolverFailure;
      }
    }
    const int io = emit(t, o.out, out, err);
    return io != kOk ? io : code;
  });
}

int cmd_solve_sigma(const SolveSigmaOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("solve-sigma", err, [&] {
    require(finite_positive(o.h), "--h must be positive");
    require(finite_positive(o.tol), "--tol must be positive");
    const solver::RootResult r = solver::solve_sigma(o.h, o.tol);
    Table t(o.format, {"h", "h_inv", "sigma", "f_residual", "iterations"});
    t.add({o.h, 1.0 / o.h, r.value, r.residual, static_cast<long long>(r.iterations)});
    return emit(t, o.out, out, err);
  });
}

int cmd_solve_h(const SolveHOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("solve-h", err, [&] {
    require(std::isfinite(o.p) && o.p > 3.0, "--p must exceed 3");
    require(finite_positive(o.tol), "--tol must be positive");
    const solver::RootResult r = solver::solve_h_for_p(o.p, o.tol);
    const double sigma = solver::solve_sigma(r.value).value;
    Table t(o.format, {"p", "h", "sigma", "sigma_c", "residual", "iterations"});
    t.add({o.p, r.value, sigma, solver::sigma_critical(o.p), r.residual, static_cast<long long>(r.iterations)});
    return emit(t, o.out, out, err);
  });
}

int cmd_profile(const ProfileOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("profile", err, [&] {
    require(o.p.has_value() != o.h.has_value(), "give exactly one of --p and --h");
    if (o.p) require(std::isfinite(*o.p) && *o.p > 3.0, "--p must exceed 3");
    if (o.h) require(finite_positive(*o.h), "--h must be positive");
    require(finite_positive(o.z_min) && std::isfinite(o.z_max) && o.z_max > o.z_min, "need 0 < z-min < z-max");
    require(o.samples >= 2, "--samples must be at least 2");
    require(o.tol > 0.0 && o.tol < 1e-2, "--tol must lie in (0, 1e-2)");

    weber::QuadratureConfig cfg;
    cfg.rel_tol = o.tol;
    const std::vector<double> grid = profile::symmetric_grid(o.z_min, o.z_max, o.samples);
    const profile::ProfileSolution sol = profile::build_profile(o.p, o.h, grid, cfg);

    Table t(o.format, {"z", "phi_re", "phi_im", "eta_re", "eta_im", "abs_eta"});
    for (const profile::ProfileSample& s : sol.samples)
      t.add({s.z, s.phi.real(), s.phi.imag(), s.eta.real(), s.eta.imag(), std::abs(s.eta)});
    if (const int io = emit(t, o.out, out, err); io != kOk) return io;

    std::string side = o.sidecar;
    if (side.empty() && o.out != "-") side = o.out + ".jsonl";
    if (side.empty()) return kOk;

    const profile::EnergyReport e = profile::energy_report(sol, o.z_max);
    const profile::SpectralParams& pr = sol.params;
    Table meta(Format::json_lines, {"p", "h", "sigma", "sigma_c", "kappa", "alpha_re", "alpha_im", "c0_re", "c0_im",
                                    "c1_re", "c1_im", "jump_residual", "energy", "energy_tail", "R"});
    meta.add({pr.p, pr.h, pr.sigma, pr.sigma_c, pr.kappa, sol.alpha.real(), sol.alpha.imag(), sol.c0.real(),
              sol.c0.imag(), sol.c1.real(), sol.c1.imag(), profile::jump_residual(sol), e.direct, e.grad_tail, e.R});
    return write_output(side, meta.text(), out, err) ? kOk : kIoError;
  });
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("verify", err, [&] {
    std::vector<std::string> names = verify_groups(o.level);
    if (!o.groups.empty()) {
      for (const std::string& g : o.groups) {
        const bool known = std::any_of(all_groups().begin(), all_groups().end(),
                                       [&](const auto& e) { return e.first == g; });
        require(known, "unknown group '" + g + "'");
      }
      names = o.groups;
    }
    require(std::isfinite(o.tamper_sigma), "--tamper-sigma must be finite");

    Table t(o.format, {"group", "pass", "metric", "detail"});
    std::string first_failure;
    for (const std::string& name : names) {
      const auto it = std::find_if(all_groups().begin(), all_groups().end(),
                                   [&](const auto& e) { return e.first == name; });
      Check c;
      try {
        c = it->second(o);
      } catch (const NumericError& e) {
        c = Check{false, std::numeric_limits<double>::infinity(), std::string("exception: ") + e.what()};
      }
      t.add({name, c.pass, c.metric, c.detail});
      if (!c.pass && first_failure.empty()) first_failure = name;
    }
    if (const int io = emit(t, o.out, out, err); io != kOk) return io;
    if (!first_failure.empty()) {
      err << "verify: group '" << first_failure << "' failed\n";
      return kVerifyFailure;
    }
    return kOk;
  });
}

int cmd_asymptotics(const AsymptoticsOptions& o, std::ostream& out, std::ostream& err) {
  return guarded("asymptotics", err, [&] {
    require(finite_positive(o.alpha), "--alpha must be positive");
    require(o.alpha < asym::kBandLo || o.alpha > asym::kBandHi, "--alpha inside the turning band [0.85, 1.15]");
    require(finite_positive(o.h_inv_min) && std::isfinite(o.h_inv_max) && o.h_inv_max >= o.h_inv_min,
            "need 0 < h-inv-min <= h-inv-max");
    require(o.steps >= 1, "--steps must be at least 1");
    require(o.tol > 0.0 && o.tol < 1e-2, "--tol must lie in (0, 1e-2)");
    weber::QuadratureConfig cfg;
    cfg.rel_tol = o.tol;
    Table t(o.format, {"alpha", "h_inv", "sigma", "g_ref_re", "g_ref_im", "g_stat_re", "g_stat_im", "rel_error",
                       "rel_error_times_h_inv"});
    for (int k = 0; k < o.steps; ++k) {
      const double hi = o.steps == 1 ? o.h_inv_min
                                     : o.h_inv_min + (o.h_inv_max - o.h_inv_min) * k / (o.steps - 1.0);
      const double s = solver::solve_sigma(1.0 / hi).value;
      const cplx ref = asym::g_split(o.alpha, hi, s, cfg);
      const cplx st = o.alpha < 1.0 ? asym::g2_stationary(o.alpha, hi, s) : asym::g3_stationary(o.alpha, hi, s);
      const double rel = std::abs(st - ref) / std::abs(ref);
      t.add({o.alpha, hi, s, ref.real(), ref.imag(), st.real(), st.imag(), rel, rel * hi});
    }
    return emit(t, o.out, out, err);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outgoing self-similar blow-up profiles for the point-nonlinearity NLS"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  std::string format = "csv";

  SweepOptions sw;
  auto* c_sweep = app.add_subcommand("sweep", "sigma(h) over evenly spaced h^{-1}");
  c_sweep->add_option("--h-inv-min", sw.h_inv_min, "smallest h^{-1}");
  c_sweep->add_option("--h-inv-max", sw.h_inv_max, "largest h^{-1}");
  c_sweep->add_option("--steps", sw.steps, "number of rows");
  c_sweep->add_option("--threads", sw.threads, "worker threads (0 = auto)");
  c_sweep->add_option("--out", sw.out, "output path or -");
  c_sweep->add_option("--format", format, "csv or json-lines");

  SolveSigmaOptions ss;
  auto* c_ss = app.add_subcommand("solve-sigma", "sigma(h) for one h");
  c_ss->add_option("--h", ss.h, "h > 0")->required();
  c_ss->add_option("--tol", ss.tol, "phase tolerance");
  c_ss->add_option("--out", ss.out, "output path or -");
  c_ss->add_option("--format", format, "csv or json-lines");

  SolveHOptions sh;
  auto* c_sh = app.add_subcommand("solve-h", "h with sigma(h) = 1/2 - 1/(p-1)");
  c_sh->add_option("--p", sh.p, "p > 3")->required();
  c_sh->add_option("--tol", sh.tol, "tolerance on sigma");
  c_sh->add_option("--out", sh.out, "output path or -");
  c_sh->add_option("--format", format, "csv or json-lines");

  ProfileOptions pf;
  double pf_p = 0.0, pf_h = 0.0;
  auto* c_pf = app.add_subcommand("profile", "dump phi and eta on a symmetric grid");
  auto* o_p = c_pf->add_option("--p", pf_p, "nonlinearity power (h solved for)");
  auto* o_h = c_pf->add_option("--h", pf_h, "h (sigma and p follow)");
  c_pf->add_option("--z-max", pf.z_max, "outermost |z|");
  c_pf->add_option("--z-min", pf.z_min, "innermost |z|");
  c_pf->add_option("--samples", pf.samples, "points per side");
  c_pf->add_option("--tol", pf.tol, "relative quadrature tolerance");
  c_pf->add_option("--out", pf.out, "output path or -");
  c_pf->add_option("--sidecar", pf.sidecar, "JSON-lines summary path (default <out>.jsonl)");
  c_pf->add_option("--format", format, "csv or json-lines");

  VerifyOptions vf;
  auto* c_vf = app.add_subcommand("verify", "run invariant groups");
  c_vf->add_option("--level", vf.level, "fast or full");
  c_vf->add_option("--group", vf.groups, "restrict to named groups");
  c_vf->add_option("--tamper-sigma", vf.tamper_sigma, "perturb sigma in the jump groups");
  c_vf->add_option("--threads", vf.threads, "worker threads (0 = auto)");
  c_vf->add_option("--out", vf.out, "output path or -");
  c_vf->add_option("--format", format, "csv or json-lines");

  AsymptoticsOptions as;
  auto* c_as = app.add_subcommand("asymptotics", "stationary-phase g against contour quadrature");
  c_as->add_option("--alpha", as.alpha, "alpha_t outside [0.85, 1.15]");
  c_as->add_option("--h-inv-min", as.h_inv_min, "smallest h^{-1}");
  c_as->add_option("--h-inv-max", as.h_inv_max, "largest h^{-1}");
  c_as->add_option("--steps", as.steps, "number of rows");
  c_as->add_option("--tol", as.tol, "relative quadrature tolerance");
  c_as->add_option("--out", as.out, "output path or -");
  c_as->add_option("--format", format, "csv or json-lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Format fmt;
  try {
    fmt = parse_format(format);
  } catch (const UsageError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }

  if (*c_sweep) {
    sw.format = fmt;
    return cmd_sweep(sw, out, err);
  }
  if (*c_ss) {
    ss.format = fmt;
    return cmd_solve_sigma(ss, out, err);
  }
  if (*c_sh) {
    sh.format = fmt;
    return cmd_solve_h(sh, out, err);
  }
  if (*c_pf) {
    pf.format = fmt;
    if (*o_p) pf.p = pf_p;
    if (*o_h) pf.h = pf_h;
    return cmd_profile(pf, out, err);
  }
  if (*c_vf) {
    vf.format = fmt;
    return cmd_verify(vf, out, err);
  }
  as.format = fmt;
  return cmd_asymptotics(as, out, err);
}

}  // namespace blowup::cli
