#include "gnd/solver.hpp"

#include <cmath>
#include <string>

#include "gnd/error.hpp"

namespace gnd {

void GndConfig::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ParameterError("eta must be > 0");
  if (!(s >= 0.0) || !std::isfinite(s)) throw ParameterError("s must be >= 0");
  if (!std::isfinite(f_lb)) throw ParameterError("f_lb must be finite");
}

void DlGndConfig::validate() const {
  inner(f_lb0, T1).validate();
  if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
  if (N < 1 || T1 < 1 || T2 < 1) throw ParameterError("N, T1 and T2 must be >= 1");
}

Trajectory::Trajectory(std::size_t dim, std::size_t T, bool record_y) : dim_(dim) {
  states_.reserve((T + 1) * dim);
  values_.reserve(T + 1);
  half_values_.reserve(T);
  sigmas_.reserve(T);
  if (record_y) y_states_.reserve((T + 1) * dim);
}

double sigma_of(double eta, double s, double f_half, double f_lb) {
  const double gap = f_half - f_lb;
  return gap > 0.0 ? std::sqrt(eta * s * gap) : 0.0;
}

namespace {

double checked_value(const Objective& f, std::span<const double> x, std::size_t t) {
  const double v = f.value(x);
  if (!std::isfinite(v) || std::abs(v) > kDivergenceLimit)
    throw DivergedError(t, "objective value " + std::to_string(v) + " out of range");
  return v;
}

void check_gradient(std::span<const double> g, std::size_t t) {
  double sq = 0.0;
  for (double v : g) sq += v * v;
  if (!std::isfinite(sq) || std::sqrt(sq) > kDivergenceLimit)
    throw DivergedError(t, "gradient norm out of range");
}

}  // namespace

Trajectory gnd_run(const SgOracle& oracle, std::span<const double> x0, const GndConfig& cfg,
                   RngStream& rng) {
  cfg.validate();
  const Objective& f = oracle.objective();
  const std::size_t d = f.dim();
  if (x0.size() != d) throw ParameterError("x0 dimension does not match the objective");

  Trajectory traj(d, cfg.T, cfg.record_y);
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> grad(d), step(d), xi(d);

  traj.states_.insert(traj.states_.end(), x.begin(), x.end());
  traj.values_.push_back(checked_value(f, x, 0));

  auto record_y = [&](std::size_t t) {
    check_gradient(grad, t);
    for (std::size_t i = 0; i < d; ++i) traj.y_states_.push_back(x[i] - cfg.eta * grad[i]);
  };

  for (std::size_t t = 0; t < cfg.T; ++t) {
    f.gradient(x, grad);
    check_gradient(grad, t);
    if (cfg.record_y) record_y(t);

    oracle.perturb(grad, rng, step);
    for (std::size_t i = 0; i < d; ++i) x[i] -= cfg.eta * step[i];
    const double f_half = checked_value(f, x, t);
    const double sigma = sigma_of(cfg.eta, cfg.s, f_half, cfg.f_lb);

    sample_scaled_gaussian(rng, xi);
    for (std::size_t i = 0; i < d; ++i) x[i] -= sigma * xi[i];
    const double f_next = checked_value(f, x, t + 1);

    traj.half_values_.push_back(f_half);
    traj.sigmas_.push_back(sigma);
    traj.states_.insert(traj.states_.end(), x.begin(), x.end());
    traj.values_.push_back(f_next);
    if (f_next < traj.values_[traj.t_star_]) traj.t_star_ = t + 1;
  }
  if (cfg.record_y) {
    f.gradient(x, grad);
    record_y(cfg.T);
  }
  return traj;
}

Trajectory gd_run(const SgOracle& oracle, std::span<const double> x0, double eta, std::size_t T,
                  RngStream& rng) {
  return gnd_run(oracle, x0, GndConfig{eta, 0.0, 0.0, T, false}, rng);
}

double lower_bound_update(double f_lb, double gamma, double f_min) {
  return (1.0 - gamma) * f_lb + gamma * f_min;
}

DlGndTrace dlgnd_run(const SgOracle& oracle, std::span<const double> x0, const DlGndConfig& cfg,
                     RngStream& rng) {
  cfg.validate();
  DlGndTrace trace;
  trace.lb_history.reserve(cfg.N + 1);
  trace.min_points.reserve(cfg.N + 1);
  trace.min_values.reserve(cfg.N + 1);

  auto stage = [&](std::span<const double> start, double f_lb, std::size_t T, std::size_t loop) {
    try {
      Trajectory run = gnd_run(oracle, start, cfg.inner(f_lb, T), rng);
      trace.lb_history.push_back(f_lb);
      trace.min_points.emplace_back(run.best().begin(), run.best().end());
      trace.min_values.push_back(run.best_value());
      if (cfg.keep_inner) trace.inner.push_back(std::move(run));
    } catch (const DivergedError& e) {
      throw DivergedError(e.iteration(),
                          std::string(e.what()) + " (outer loop " + std::to_string(loop) + ")",
                          loop);
    }
  };

  stage(x0, cfg.f_lb0, cfg.T1, 0);
  for (std::size_t nu = 0; nu < cfg.N; ++nu) {
    const double next_lb = lower_bound_update(trace.lb_history[nu], cfg.gamma, trace.min_values[nu]);
    const Point start = trace.min_points[nu];
    stage(start, next_lb, cfg.T2, nu + 1);
  }
  return trace;
}

}  // namespace gnd
