#pragma once

// Monte-Carlo ensembles over seeded trajectories.
//
// Trial i owns RngStream(seed, i). It first draws its initial point
// (d uniforms, coordinate order) and then hands the same stream to the
// solver. Trials run on a worker pool in fixed-size batches; per-trial
// distance series land in slots indexed by trial and are folded
// sequentially in trial order, so results do not depend on the worker count.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gnd/objectives.hpp"
#include "gnd/solver.hpp"

namespace gnd {

struct GdConfig {
  double eta = 0.1;
  std::size_t T = 0;
};

using AlgorithmConfig = std::variant<GndConfig, DlGndConfig, GdConfig>;

std::string algorithm_name(const AlgorithmConfig& algo);
/// Number of recorded iterations: T for GND/GD, T1 + N*T2 for DL-GND.
std::size_t algorithm_iterations(const AlgorithmConfig& algo);

struct Box {
  Point low;
  Point high;
};

struct ExperimentConfig {
  ObjectiveSpec objective;
  AlgorithmConfig algorithm = GndConfig{};
  double r = 0.0;
  std::size_t trials = 2000;
  Box init_box;
  std::uint64_t seed = 0;
  double threshold = 1e-3;
  unsigned workers = 1;

  /// Throws ParameterError; also checks the box against the objective dimension.
  void validate(const Objective& obj) const;
};

struct StatsSeries {
  std::vector<double> mse;
  std::vector<double> ncp;
  std::size_t trials = 0;
  std::size_t diverged = 0;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Iterate sequence of one trial. For DL-GND the inner runs are concatenated:
/// the first stage contributes x_0..x_T1 and each outer loop its states
/// 1..T2, giving T1 + N*T2 + 1 states.
std::vector<Point> run_trial(const ExperimentConfig& cfg, const Objective& obj,
                             std::size_t trial);

/// Throws ExperimentError if any trial diverges.
StatsSeries run_monte_carlo(const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// Runs `trials` independent jobs on `workers` threads in batches and hands
/// each finished batch to `fold` in trial order.
void run_batched(std::size_t trials, unsigned workers,
                 const std::function<void(std::size_t trial, std::size_t slot)>& job,
                 const std::function<void(std::size_t first, std::size_t count)>& fold,
                 std::size_t batch_size);

struct ContractionReport {
  std::vector<double> mean;    ///< empirical E||y_t - x*||^2
  std::vector<double> std_error; ///< standard error of the mean
  std::vector<double> bound;   ///< 1.1 ((1 - eta lambda/100)^t ||y0-x*||^2 + 100 b) + 3 SE
  std::vector<double> margin;  ///< bound - mean
  double b = 0.0;
  double eta_lambda = 0.0;
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// Ensemble check of E||y_t - x*||^2 <= (1 - eta lambda/100)^t ||y0-x*||^2 + 100 b,
/// softened by the factor 1.1 and 3 standard errors. cfg.record_y is forced
/// on; lambda and b are computed from cfg.eta, the objective's certificate,
/// r and f* - cfg.f_lb.
ContractionReport contraction_check(const Objective& obj, GndConfig cfg, double r,
                                    std::size_t trials, const Point& x0, std::uint64_t seed,
                                    unsigned workers = 1);

struct StoppingTimeResult {
  std::size_t M;
  double empirical_p;     ///< fraction of trials with X_t < ell for some t <= M
  double std_error_p;     ///< binomial standard error
  double analytic_bound;  ///< lemma_st_bound(1 - eta lambda/100, 100 b, ell, M, B_hat)
  double B_hat;           ///< empirical E[X_0 1{X_0 >= ell}]
};

/// Process X_t = ||y_t - x*||^2 - 100 b. One ensemble of max(Ms) iterations
/// serves every horizon in Ms. Requires b > 0 (r > 0 or f_lb < f*).
std::vector<StoppingTimeResult> lemma_st_empirical(const Objective& obj, GndConfig cfg, double r,
                                                   double ell, const std::vector<std::size_t>& Ms,
                                                   std::size_t trials, const Point& x0,
                                                   std::uint64_t seed, unsigned workers = 1);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Header `t,mse,ncp`, one row per iteration.
std::string stats_to_csv(const StatsSeries& series);
void write_csv(const StatsSeries& series, const std::filesystem::path& path);
/// Two stacked log-y line charts (MSE, N-CP) against iteration.
std::string stats_to_svg(const StatsSeries& series, const std::string& title);
void write_svg(const StatsSeries& series, const std::filesystem::path& path,
               const std::string& title = "");
/// Writes text to path, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gnd
