// gnd: schedules, regularity audits and Monte-Carlo benchmarks for Gaussian
// noise descent.
//
// Exit codes: 0 success, 1 invalid parameters, 2 I/O failure, 3 diverged
// experiment.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "gnd/config.hpp"
#include "gnd/error.hpp"
#include "gnd/experiments.hpp"
#include "gnd/presets.hpp"
#include "gnd/sampling.hpp"
#include "gnd/theory.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kParameter = 1, kIo = 2, kDiverged = 3 };

/// Collects key/value pairs and prints them as `key=value` lines or CSV.
class KeyValueOut {
 public:
  explicit KeyValueOut(bool csv) : csv_(csv) {
    if (csv_) std::cout << "key,value\n";
  }

  void put(const std::string& key, double v) {
    if (csv_) {
      std::cout << key << ',' << gnd::format_double(v) << '\n';
    } else {
      std::ostringstream os;
      os.precision(6);
      os << v;
      std::cout << key << '=' << os.str() << '\n';
    }
  }
  void put(const std::string& key, std::size_t v) { std::cout << key << (csv_ ? ',' : '=') << v << '\n'; }
  void put(const std::string& key, const std::string& v) {
    std::cout << key << (csv_ ? ',' : '=') << v << '\n';
  }
  void put(const std::string& key, bool v) { put(key, std::string(v ? "true" : "false")); }

 private:
  bool csv_;
};

struct ScheduleArgs {
  double alpha = 1.0, L = 1.0, r = 0.0, fgap = 0.0;
  std::optional<double> eps, zeta, beta, y0sq;
  std::size_t d = 1;
  bool csv = false;
};

int cmd_schedule(const ScheduleArgs& a) {
  KeyValueOut out(a.csv);
  const gnd::Schedule s = gnd::schedule_theorem1(a.alpha, a.L, a.r, a.fgap);
  out.put("eta", s.eta);
  out.put("lambda", s.lambda);
  out.put("s", s.s);
  out.put("b", s.b);
  out.put("eta_lambda", s.eta_lambda);
  out.put("nc_gate", gnd::nearly_convex_gate(a.alpha, a.L, a.d));
  if (a.beta) {
    const auto check = gnd::check_eta_constraint(s.eta, s.s, a.alpha, a.L, *a.beta, a.d);
    out.put("eta_constraint", std::string(check == gnd::EtaConstraint::satisfied ? "satisfied"
                                          : check == gnd::EtaConstraint::violated
                                              ? "violated"
                                              : "not_checkable"));
  }
  if (a.zeta && a.y0sq && (s.b > 0.0 || a.eps))
    out.put("T_bound", gnd::iterations_bound_thm1(s, *a.y0sq, *a.zeta, a.eps.value_or(0.0)));
  if (a.eps && a.fgap > 0.0) {
    if (!a.zeta || !a.y0sq)
      throw gnd::ParameterError("double-loop schedule needs --zeta and --y0sq");
    const auto dl = gnd::schedule_theorem2(a.alpha, a.L, a.r, *a.eps, *a.zeta, a.fgap, *a.y0sq,
                                           a.beta.value_or(0.0));
    out.put("b0", dl.b0);
    out.put("b_eps", dl.b_eps);
    out.put("gamma", dl.gamma);
    out.put("N", dl.N);
    out.put("T1", dl.T1);
    out.put("T2", dl.T2);
    out.put("zeta_prime", dl.zeta_prime);
  }
  return kOk;
}

struct CheckArgs {
  gnd::ObjectiveSpec spec{"j2", {}};
  double grid_lo = 1e-6, grid_hi = 10.0;
  std::size_t points = 100000;
  std::optional<double> alpha, L;
  bool csv = false;
};

int cmd_check(const CheckArgs& a) {
  const gnd::Objective obj = gnd::make_objective(a.spec);
  gnd::PointSet grid(obj.dim());
  if (obj.dim() == 1) {
    grid = gnd::PointSet::symmetric_log_1d(a.grid_lo, a.grid_hi, std::max<std::size_t>(2, a.points / 2));
  } else {
    gnd::RngStream rng(0, 0);
    gnd::Point p(obj.dim());
    for (std::size_t i = 0; i < a.points; ++i) {
      for (double& v : p) v = rng.uniform(-a.grid_hi, a.grid_hi);
      grid.push_back(p);
    }
  }
  std::optional<gnd::Certificate> pair;
  if (a.alpha) pair = gnd::Certificate{*a.alpha, a.L.value_or(*a.alpha)};
  const auto rep = gnd::regularity_constants_grid(obj, grid, pair);

  KeyValueOut out(a.csv);
  out.put("function", obj.name());
  out.put("points", rep.points);
  out.put("mu_r_hat", rep.mu_r_hat);
  out.put("mu_p_hat", rep.mu_p_hat);
  out.put("mu_q_hat", rep.mu_q_hat);
  out.put("L_hat", rep.L_hat);
  out.put("alpha", rep.alpha);
  out.put("L", rep.L);
  out.put("beta_hat_quadratic_candidate", rep.beta_hat);
  out.put("gate", rep.gate);
  out.put("nc_gate", rep.nc_gate);
  if (obj.name() == "j2") {
    for (const auto& row : gnd::j2_condition_table(a.spec.params.at("eps"), a.spec.params.at("R"))) {
      out.put("table." + row.condition, row.holds);
      for (std::size_t i = 0; i < row.parameters.size(); ++i)
        out.put("table." + row.condition + ".param" + std::to_string(i), row.parameters[i]);
    }
  }
  return kOk;
}

int cmd_moments(const std::vector<std::size_t>& dims, std::size_t draws, std::uint64_t seed) {
  std::cout << "d,exact_m1,exact_m2,exact_m3,exact_m4,mc_m1,mc_m2,mc_m3,mc_m4\n";
  for (std::size_t d : dims) {
    const auto exact = gnd::gaussian_moments_exact(d);
    gnd::RngStream rng(seed, d);
    std::vector<double> xi(d);
    double m[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < draws; ++i) {
      gnd::sample_scaled_gaussian(rng, xi);
      double sq = 0.0;
      for (double v : xi) sq += v * v;
      const double n = std::sqrt(sq);
      m[0] += n;
      m[1] += sq;
      m[2] += sq * n;
      m[3] += sq * sq;
    }
    std::cout << d << ',' << gnd::format_double(exact.m1) << ',' << gnd::format_double(exact.m2)
              << ',' << gnd::format_double(exact.m3) << ',' << gnd::format_double(exact.m4);
    for (double v : m) std::cout << ',' << gnd::format_double(v / static_cast<double>(draws));
    std::cout << '\n';
  }
  return kOk;
}

int execute(const gnd::ExperimentConfig& cfg, const fs::path& out_dir, const std::string& name,
            bool quiet) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw gnd::IoError("cannot create output directory '" + out_dir.string() + "'");
  gnd::write_text_file(out_dir / (name + ".config"), gnd::render_config(cfg));

  gnd::ProgressFn progress;
  if (!quiet)
    progress = [&](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r%s: %zu/%zu trials", name.c_str(), done, total);
      if (done == total) std::fputc('\n', stderr);
    };
  const gnd::StatsSeries stats = gnd::run_monte_carlo(cfg, progress);
  gnd::write_csv(stats, out_dir / (name + ".csv"));
  gnd::write_svg(stats, out_dir / (name + ".svg"), name);
  if (!quiet)
    std::fprintf(stderr, "%s: final mse=%s ncp=%s\n", name.c_str(),
                 gnd::format_double(stats.mse.back()).c_str(),
                 gnd::format_double(stats.ncp.back()).c_str());
  return kOk;
}

struct BenchArgs {
  std::string name;
  std::string algo = "gnd";
  std::optional<std::size_t> trials, T, N, T1, T2;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<double> threshold, eta, s, flb, flb0, gamma, r;
  std::string out = ".";
  bool quiet = false;
};

int cmd_bench(const BenchArgs& a) {
  gnd::ExperimentConfig cfg = gnd::bench_preset(a.name, a.algo, a.T);
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.seed = *a.seed;
  if (a.workers) cfg.workers = *a.workers;
  if (a.threshold) cfg.threshold = *a.threshold;
  if (a.r) cfg.r = *a.r;
  std::visit(
      [&](auto& c) {
        using C = std::decay_t<decltype(c)>;
        if (a.eta) c.eta = *a.eta;
        if constexpr (std::is_same_v<C, gnd::GndConfig>) {
          if (a.s) c.s = *a.s;
          if (a.flb) c.f_lb = *a.flb;
        } else if constexpr (std::is_same_v<C, gnd::DlGndConfig>) {
          if (a.s) c.s = *a.s;
          if (a.flb0) c.f_lb0 = *a.flb0;
          if (a.gamma) c.gamma = *a.gamma;
          if (a.T1) c.T1 = *a.T1;
          if (a.T2) c.T2 = *a.T2;
          if (a.N) c.N = *a.N;
        }
      },
      cfg.algorithm);
  return execute(cfg, a.out, a.name + "-" + a.algo, a.quiet);
}

struct StArgs {
  double ell = 25.0;
  std::vector<std::size_t> M{100, 500, 2000};
  std::size_t trials = 1000;
  double r = 1.0;
  double x0 = 20.0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool csv = false;
};

int cmd_stbound(const StArgs& a) {
  const gnd::Objective obj = gnd::make_quadratic(1.0, 1, {0.0});
  const gnd::Schedule sched = gnd::schedule_theorem1(1.0, 1.0, a.r, 0.0);
  const gnd::GndConfig cfg{sched.eta, sched.s, 0.0, 0, true};
  const auto results = gnd::lemma_st_empirical(obj, cfg, a.r, a.ell, a.M, a.trials, {a.x0},
                                               a.seed, a.workers);
  std::cout << "M,empirical_p,std_error,analytic_bound,B_hat\n";
  for (const auto& res : results)
    std::cout << res.M << ',' << gnd::format_double(res.empirical_p) << ','
              << gnd::format_double(res.std_error_p) << ','
              << gnd::format_double(res.analytic_bound) << ',' << gnd::format_double(res.B_hat)
              << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian noise descent toolkit"};
  app.require_subcommand(1);

  ScheduleArgs sa;
  auto* schedule = app.add_subcommand("schedule", "Print step size, noise factor and bounds");
  schedule->add_option("--alpha", sa.alpha, "Nearly convex alpha")->default_val(1.0);
  schedule->add_option("--L", sa.L, "Calmness modulus L")->default_val(1.0);
  schedule->add_option("--r", sa.r, "Oracle noise scale r")->default_val(0.0);
  schedule->add_option("--fgap", sa.fgap, "f* - f_lb (f* - f_lb^0 for the double loop)")
      ->default_val(0.0);
  schedule->add_option("--eps", sa.eps, "Target accuracy epsilon");
  schedule->add_option("--zeta", sa.zeta, "Failure probability zeta");
  schedule->add_option("--beta", sa.beta, "beta(f, x*, alpha) estimate");
  schedule->add_option("--y0sq", sa.y0sq, "||y0 - x*||^2");
  schedule->add_option("--d", sa.d, "Dimension")->default_val(1);
  schedule->add_flag("--csv", sa.csv, "Emit key,value CSV");

  CheckArgs ca;
  std::optional<double> c_n, c_k, c_eps, c_R, c_a, c_b, c_c, c_dim;
  auto* check = app.add_subcommand("check", "Grid audit of regularity constants");
  check->add_option("--function", ca.spec.function, "j1, j2, rastrigin or quadratic")
      ->default_val("j2");
  check->add_option("--n", c_n);
  check->add_option("--k", c_k);
  check->add_option("--eps", c_eps);
  check->add_option("--R", c_R);
  check->add_option("--a", c_a);
  check->add_option("--b", c_b);
  check->add_option("--c", c_c);
  check->add_option("--dim,--d", c_dim);
  check->add_option("--alpha", ca.alpha, "alpha for the beta estimate (default: certificate)");
  check->add_option("--L", ca.L, "L for the gate (default: certificate)");
  check->add_option("--grid-lo", ca.grid_lo)->default_val(1e-6);
  check->add_option("--grid-hi", ca.grid_hi)->default_val(10.0);
  check->add_option("--points", ca.points)->default_val(100000);
  check->add_flag("--csv", ca.csv);

  std::vector<std::size_t> m_dims{1, 2, 10, 100};
  std::size_t m_draws = 1000000;
  std::uint64_t m_seed = 0;
  auto* moments = app.add_subcommand("moments", "Exact vs Monte-Carlo moments of ||xi||");
  moments->add_option("--d", m_dims, "Dimensions");
  moments->add_option("--draws", m_draws)->default_val(1000000);
  moments->add_option("--seed", m_seed)->default_val(0);

  std::string run_path;
  std::string run_out = ".";
  std::optional<unsigned> run_workers;
  bool run_quiet = false;
  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("config", run_path)->required();
  run->add_option("--out", run_out)->default_val(".");
  run->add_option("--workers", run_workers);
  run->add_flag("--quiet", run_quiet);

  BenchArgs ba;
  auto* bench = app.add_subcommand(
      "bench",
      "Regenerate a named benchmark (j1-7-1, j1-112-2, rast2d-c05, rast2d-c01, rast10d-c05, "
      "rast10d-c03). Defaults: 2000 trials; T = 300 / 1000 / 5000 / 20000 for j1-7-1 / "
      "j1-112-2 / 2-D / 10-D Rastrigin");
  bench->add_option("name", ba.name)->required();
  bench->add_option("--algo", ba.algo)->default_val("gnd")->check(CLI::IsMember({"gnd", "dlgnd", "gd"}));
  bench->add_option("--trials", ba.trials);
  bench->add_option("--T", ba.T);
  bench->add_option("--seed", ba.seed);
  bench->add_option("--workers", ba.workers);
  bench->add_option("--threshold", ba.threshold);
  bench->add_option("--out", ba.out)->default_val(".");
  bench->add_option("--eta", ba.eta);
  bench->add_option("--s", ba.s);
  bench->add_option("--flb", ba.flb);
  bench->add_option("--flb0", ba.flb0);
  bench->add_option("--gamma", ba.gamma);
  bench->add_option("--N", ba.N);
  bench->add_option("--T1", ba.T1);
  bench->add_option("--T2", ba.T2);
  bench->add_option("--r", ba.r);
  bench->add_flag("--quiet", ba.quiet);

  StArgs st;
  auto* stbound = app.add_subcommand("stbound", "Stopping-time bound: empirical vs analytic");
  stbound->add_option("--ell", st.ell)->default_val(25.0);
  stbound->add_option("--M", st.M);
  stbound->add_option("--trials", st.trials)->default_val(1000);
  stbound->add_option("--r", st.r)->default_val(1.0);
  stbound->add_option("--x0", st.x0)->default_val(20.0);
  stbound->add_option("--seed", st.seed)->default_val(0);
  stbound->add_option("--workers", st.workers)->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  }

  try {
    if (*schedule) return cmd_schedule(sa);
    if (*check) {
      auto set = [&](const char* key, const std::optional<double>& v) {
        if (v) ca.spec.params[key] = *v;
      };
      set("n", c_n);
      set("k", c_k);
      set("eps", c_eps);
      set("R", c_R);
      set("a", c_a);
      set("b", c_b);
      set("c", c_c);
      set("dim", c_dim);
      return cmd_check(ca);
    }
    if (*moments) return cmd_moments(m_dims, m_draws, m_seed);
    if (*run) {
      gnd::ExperimentConfig cfg = gnd::load_config(run_path);
      if (run_workers) cfg.workers = *run_workers;
      return execute(cfg, run_out, fs::path(run_path).stem().string(), run_quiet);
    }
    if (*bench) return cmd_bench(ba);
    if (*stbound) return cmd_stbound(st);
  } catch (const gnd::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const gnd::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const gnd::ExperimentError& e) {
    std::cerr << "error: diverged: " << e.what() << '\n';
    return kDiverged;
  } catch (const gnd::DivergedError& e) {
    std::cerr << "error: diverged: " << e.what() << '\n';
    return kDiverged;
  }
  return kParameter;
}
