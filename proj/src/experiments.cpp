#include "gnd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "gnd/error.hpp"
#include "gnd/theory.hpp"

namespace gnd {

std::string algorithm_name(const AlgorithmConfig& algo) {
  struct Visitor {
    std::string operator()(const GndConfig&) const { return "gnd"; }
    std::string operator()(const DlGndConfig&) const { return "dlgnd"; }
    std::string operator()(const GdConfig&) const { return "gd"; }
  };
  return std::visit(Visitor{}, algo);
}

std::size_t algorithm_iterations(const AlgorithmConfig& algo) {
  struct Visitor {
    std::size_t operator()(const GndConfig& c) const { return c.T; }
    std::size_t operator()(const DlGndConfig& c) const { return c.total_iterations(); }
    std::size_t operator()(const GdConfig& c) const { return c.T; }
  };
  return std::visit(Visitor{}, algo);
}

void ExperimentConfig::validate(const Objective& obj) const {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (!(threshold > 0.0)) throw ParameterError("threshold must be > 0");
  if (workers < 1) throw ParameterError("workers must be >= 1");
  if (!(r >= 0.0)) throw ParameterError("sg_noise_r must be >= 0");
  if (init_box.low.size() != obj.dim() || init_box.high.size() != obj.dim())
    throw ParameterError("init box must have " + std::to_string(obj.dim()) + " coordinates");
  for (std::size_t i = 0; i < obj.dim(); ++i)
    if (!(init_box.low[i] < init_box.high[i])) throw ParameterError("init box is degenerate");
  std::visit(
      [](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, GdConfig>)
          GndConfig{c.eta, 0.0, 0.0, c.T, false}.validate();
        else
          c.validate();
      },
      algorithm);
}

namespace {

Point initial_point(const ExperimentConfig& cfg, RngStream& rng) {
  Point x(cfg.init_box.low.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = rng.uniform(cfg.init_box.low[i], cfg.init_box.high[i]);
  return x;
}

/// Visits every recorded state of one trial in order.
template <class Visit>
void for_each_state(const ExperimentConfig& cfg, const SgOracle& oracle, std::size_t trial,
                    Visit&& visit) {
  RngStream rng(cfg.seed, trial);
  const Point x0 = initial_point(cfg, rng);
  if (const auto* gnd = std::get_if<GndConfig>(&cfg.algorithm)) {
    const Trajectory tr = gnd_run(oracle, x0, *gnd, rng);
    for (std::size_t t = 0; t <= tr.iterations(); ++t) visit(tr.x(t));
  } else if (const auto* gd = std::get_if<GdConfig>(&cfg.algorithm)) {
    const Trajectory tr = gd_run(oracle, x0, gd->eta, gd->T, rng);
    for (std::size_t t = 0; t <= tr.iterations(); ++t) visit(tr.x(t));
  } else {
    DlGndConfig dl = std::get<DlGndConfig>(cfg.algorithm);
    dl.keep_inner = true;
    const DlGndTrace trace = dlgnd_run(oracle, x0, dl, rng);
    for (std::size_t k = 0; k < trace.inner.size(); ++k) {
      const Trajectory& tr = trace.inner[k];
      for (std::size_t t = (k == 0 ? 0 : 1); t <= tr.iterations(); ++t) visit(tr.x(t));
    }
  }
}

}  // namespace

std::vector<Point> run_trial(const ExperimentConfig& cfg, const Objective& obj,
                             std::size_t trial) {
  cfg.validate(obj);
  const SgOracle oracle(obj, cfg.r);
  std::vector<Point> states;
  for_each_state(cfg, oracle, trial,
                 [&](std::span<const double> x) { states.emplace_back(x.begin(), x.end()); });
  return states;
}

void run_batched(std::size_t trials, unsigned workers,
                 const std::function<void(std::size_t trial, std::size_t slot)>& job,
                 const std::function<void(std::size_t first, std::size_t count)>& fold,
                 std::size_t batch_size) {
  for (std::size_t first = 0; first < trials; first += batch_size) {
    const std::size_t count = std::min(batch_size, trials - first);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_trial = trials;

    auto worker = [&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(first + i, i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (first + i < error_trial) {
            error_trial = first + i;
            error = std::current_exception();
          }
        }
      }
    };
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(workers, 1u), count));
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(n_threads);
      for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    fold(first, count);
  }
}

StatsSeries run_monte_carlo(const ExperimentConfig& cfg, const ProgressFn& progress) {
  const Objective obj = make_objective(cfg.objective);
  cfg.validate(obj);
  const SgOracle oracle(obj, cfg.r);
  const std::size_t states = algorithm_iterations(cfg.algorithm) + 1;

  constexpr std::size_t kBatch = 128;
  std::vector<double> slots(kBatch * states);
  std::vector<double> sum(states, 0.0);
  std::vector<std::size_t> far(states, 0);

  auto job = [&](std::size_t trial, std::size_t slot) {
    double* out = &slots[slot * states];
    std::size_t t = 0;
    try {
      for_each_state(cfg, oracle, trial,
                     [&](std::span<const double> x) { out[t++] = obj.dist_sq(x); });
    } catch (const DivergedError& e) {
      throw ExperimentError(trial, e);
    }
  };
  auto fold = [&](std::size_t first, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const double* d2 = &slots[i * states];
      for (std::size_t t = 0; t < states; ++t) {
        sum[t] += d2[t];
        if (std::sqrt(d2[t]) > cfg.threshold) ++far[t];
      }
    }
    if (progress) progress(first + count, cfg.trials);
  };
  run_batched(cfg.trials, cfg.workers, job, fold, kBatch);

  StatsSeries out;
  out.trials = cfg.trials;
  out.mse.resize(states);
  out.ncp.resize(states);
  const double n = static_cast<double>(cfg.trials);
  for (std::size_t t = 0; t < states; ++t) {
    out.mse[t] = sum[t] / n;
    out.ncp[t] = static_cast<double>(far[t]) / n;
  }
  return out;
}

namespace {

/// Runs `trials` GND trajectories from x0 and hands ||y_t - x*||^2 series
/// to `per_trial` in trial order.
Schedule y_ensemble(const Objective& obj, GndConfig& cfg, double r, std::size_t trials,
                    const Point& x0, std::uint64_t seed, unsigned workers,
                    const std::function<void(std::span<const double>)>& per_trial) {
  if (!obj.certificate()) throw ParameterError("objective carries no (alpha, L) certificate");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  const Certificate cert = *obj.certificate();
  const double f_gap = obj.min_value() - cfg.f_lb;
  const Schedule sched = make_schedule(cert.alpha, cert.L, cfg.eta, cfg.s, r, f_gap);
  cfg.record_y = true;

  const SgOracle oracle(obj, r);
  const std::size_t states = cfg.T + 1;
  constexpr std::size_t kBatch = 128;
  std::vector<double> slots(kBatch * states);
  auto job = [&](std::size_t trial, std::size_t slot) {
    RngStream rng(seed, trial);
    const Trajectory tr = gnd_run(oracle, x0, cfg, rng);
    for (std::size_t t = 0; t < states; ++t) slots[slot * states + t] = obj.dist_sq(tr.y(t));
  };
  auto fold = [&](std::size_t, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
      per_trial(std::span<const double>(&slots[i * states], states));
  };
  run_batched(trials, workers, job, fold, kBatch);
  return sched;
}

}  // namespace

ContractionReport contraction_check(const Objective& obj, GndConfig cfg, double r,
                                    std::size_t trials, const Point& x0, std::uint64_t seed,
                                    unsigned workers) {
  const std::size_t states = cfg.T + 1;
  std::vector<double> sum(states, 0.0), sum_sq(states, 0.0);
  const Schedule sched =
      y_ensemble(obj, cfg, r, trials, x0, seed, workers, [&](std::span<const double> d2) {
        for (std::size_t t = 0; t < states; ++t) {
          sum[t] += d2[t];
          sum_sq[t] += d2[t] * d2[t];
        }
      });

  ContractionReport rep;
  rep.b = sched.b;
  rep.eta_lambda = sched.eta_lambda;
  const double n = static_cast<double>(trials);
  const double theta = 1.0 - sched.eta_lambda / 100.0;
  const Point y0 = [&] {
    Point g = obj.gradient(x0);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = x0[i] - cfg.eta * g[i];
    return g;
  }();
  const double y0_sq = obj.dist_sq(y0);
  for (std::size_t t = 0; t < states; ++t) {
    const double mean = sum[t] / n;
    const double var = trials > 1 ? std::max(0.0, (sum_sq[t] - n * mean * mean) / (n - 1.0)) : 0.0;
    const double se = std::sqrt(var / n);
    const double bound =
        1.1 * (std::pow(theta, static_cast<double>(t)) * y0_sq + 100.0 * sched.b) + 3.0 * se;
    rep.mean.push_back(mean);
    rep.std_error.push_back(se);
    rep.bound.push_back(bound);
    rep.margin.push_back(bound - mean);
    if (mean > bound && !rep.first_violation) {
      rep.holds = false;
      rep.first_violation = t;
    }
  }
  return rep;
}

std::vector<StoppingTimeResult> lemma_st_empirical(const Objective& obj, GndConfig cfg, double r,
                                                   double ell, const std::vector<std::size_t>& Ms,
                                                   std::size_t trials, const Point& x0,
                                                   std::uint64_t seed, unsigned workers) {
  if (Ms.empty()) throw ParameterError("at least one horizon M is required");
  if (!(ell > 0.0)) throw ParameterError("ell must be > 0");
  cfg.T = *std::max_element(Ms.begin(), Ms.end());

  // Index of the first t with X_t < ell, or T + 1 when never hit.
  std::vector<std::size_t> first_hit;
  first_hit.reserve(trials);
  if (!obj.certificate()) throw ParameterError("objective carries no (alpha, L) certificate");
  const Certificate cert = *obj.certificate();
  const Schedule sched =
      make_schedule(cert.alpha, cert.L, cfg.eta, cfg.s, r, obj.min_value() - cfg.f_lb);
  const double b = sched.b;
  double B_sum = 0.0;
  if (!(b > 0.0)) throw ParameterError("stopping-time check needs b > 0 (r > 0 or f_lb < f*)");

  y_ensemble(obj, cfg, r, trials, x0, seed, workers, [&](std::span<const double> d2) {
    const double x0_val = d2[0] - 100.0 * b;
    if (x0_val >= ell) B_sum += x0_val;
    std::size_t hit = d2.size();
    for (std::size_t t = 0; t < d2.size(); ++t) {
      if (d2[t] - 100.0 * b < ell) {
        hit = t;
        break;
      }
    }
    first_hit.push_back(hit);
  });

  const double n = static_cast<double>(trials);
  const double B_hat = B_sum / n;
  const double theta = 1.0 - sched.eta_lambda / 100.0;
  std::vector<StoppingTimeResult> out;
  for (std::size_t M : Ms) {
    const auto hits =
        std::count_if(first_hit.begin(), first_hit.end(), [M](std::size_t h) { return h <= M; });
    const double p = static_cast<double>(hits) / n;
    out.push_back({M, p, std::sqrt(p * (1.0 - p) / n),
                   lemma_st_bound(theta, 100.0 * b, ell, M, B_hat), B_hat});
  }
  return out;
}

}  // namespace gnd
