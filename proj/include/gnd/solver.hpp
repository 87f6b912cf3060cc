#pragma once

// Gaussian noise descent (GND), its double-loop variant (DL-GND) and the
// plain (stochastic) gradient descent baseline.
//
// One GND iteration:
//   x_{t+1/2} = x_t - eta * SG(x_t)
//   sigma_t   = sqrt(eta * s * max(f(x_{t+1/2}) - f_lb, 0))
//   x_{t+1}   = x_{t+1/2} - sigma_t * xi_t,   xi_t ~ N(0, I_d / d)
// Subtracting or adding sigma_t * xi_t defines the same process since xi_t
// is symmetric; the update subtracts.
//
// Draw order per iteration: d normals for the oracle noise (only when
// r > 0), then d normals for xi_t. xi_t is drawn even when sigma_t = 0, so
// gd_run and gnd_run with s = 0 consume identical streams.
//
// Cost: two value evaluations (x_{t+1/2} and x_{t+1}) and one gradient
// evaluation per iteration, plus one value at x_0. With record_y the
// gradient at x_T is also evaluated.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gnd/objectives.hpp"
#include "gnd/sampling.hpp"

namespace gnd {

struct GndConfig {
  double eta = 0.1;
  double s = 0.0;
  double f_lb = 0.0;
  std::size_t T = 0;
  bool record_y = false;

  void validate() const;
};

struct DlGndConfig {
  double eta = 0.1;
  double s = 0.0;
  double f_lb0 = 0.0;
  double gamma = 0.5;
  std::size_t N = 1;
  std::size_t T1 = 1;
  std::size_t T2 = 1;
  bool record_y = false;
  /// Keep every inner trajectory in the trace.
  bool keep_inner = false;

  void validate() const;
  GndConfig inner(double f_lb, std::size_t T) const { return {eta, s, f_lb, T, record_y}; }
  std::size_t total_iterations() const { return T1 + N * T2; }
};

/// |f| or ||grad f|| beyond this aborts a run.
inline constexpr double kDivergenceLimit = 1e12;

class Trajectory {
 public:
  Trajectory(std::size_t dim, std::size_t T, bool record_y);

  std::size_t dim() const noexcept { return dim_; }
  /// Number of iterations T; there are T + 1 states.
  std::size_t iterations() const noexcept { return values_.size() - 1; }

  std::span<const double> x(std::size_t t) const { return {&states_[t * dim_], dim_}; }
  std::span<const double> y(std::size_t t) const { return {&y_states_[t * dim_], dim_}; }
  bool has_y() const noexcept { return !y_states_.empty(); }

  const std::vector<double>& values() const noexcept { return values_; }
  /// f(x_{t+1/2}), t = 0..T-1; these never enter t_star.
  const std::vector<double>& half_values() const noexcept { return half_values_; }
  const std::vector<double>& sigmas() const noexcept { return sigmas_; }

  /// First index attaining the minimum of f(x_0..x_T).
  std::size_t t_star() const noexcept { return t_star_; }
  std::span<const double> best() const { return x(t_star_); }
  double best_value() const { return values_[t_star_]; }

 private:
  friend Trajectory gnd_run(const SgOracle&, std::span<const double>, const GndConfig&,
                            RngStream&);

  std::size_t dim_;
  std::vector<double> states_;
  std::vector<double> y_states_;
  std::vector<double> values_;
  std::vector<double> half_values_;
  std::vector<double> sigmas_;
  std::size_t t_star_ = 0;
};

double sigma_of(double eta, double s, double f_half, double f_lb);

/// Runs GND on oracle.objective() from x0. Throws DivergedError.
Trajectory gnd_run(const SgOracle& oracle, std::span<const double> x0, const GndConfig& cfg,
                   RngStream& rng);

/// Gradient descent, or SGD when oracle.r() > 0. Identical to gnd_run with s = 0.
Trajectory gd_run(const SgOracle& oracle, std::span<const double> x0, double eta, std::size_t T,
                  RngStream& rng);

struct DlGndTrace {
  std::vector<double> lb_history;   ///< f_lb^0 .. f_lb^N
  std::vector<Point> min_points;    ///< x_min^0 .. x_min^N
  std::vector<double> min_values;   ///< f(x_min^nu)
  std::vector<Trajectory> inner;    ///< stage-1 run then one per outer loop, if kept
};

double lower_bound_update(double f_lb, double gamma, double f_min);

/// Throws DivergedError carrying the outer-loop index (0 for the first stage,
/// nu + 1 for outer loop nu).
DlGndTrace dlgnd_run(const SgOracle& oracle, std::span<const double> x0, const DlGndConfig& cfg,
                     RngStream& rng);

}  // namespace gnd
