#pragma once

// Parameter schedules and regularity diagnostics for (alpha, L)-nearly
// convex objectives.
//
// All grid-based quantities are minima or maxima over a finite point set.
// Grid infima are upper bounds on the true infimum over R^d, and the grid
// beta estimate is an upper bound on beta(f, x*, alpha) restricted to the
// quadratic candidate (alpha/2)||x - x*||^2.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnd/objectives.hpp"

namespace gnd {

struct Schedule {
  double eta;
  double s;
  double lambda;      ///< 2 alpha - eta L^2
  double b;           ///< eta r^2 / lambda + (5 eta lambda + 14) / (42 L) * (f* - f_lb)
  double eta_lambda;  ///< eta * lambda
};

/// Schedule for an arbitrary step size eta < 2 alpha / L^2 and noise factor s.
Schedule make_schedule(double alpha, double L, double eta, double s, double r, double f_gap);

/// eta = 2 alpha / (5 L^2), s = lambda / (3 L).
Schedule schedule_theorem1(double alpha, double L, double r, double f_gap);

/// Iterations sufficient for the single-loop guarantee. With b == 0 this is
/// 100/(eta lambda) ln(||y0-x*||^2 / (zeta eps)); with b > 0 it is
/// 200/(eta lambda) ln(||y0-x*||^2 / (100 b zeta)) and eps is ignored.
/// Non-positive bounds give 0.
std::size_t iterations_bound_thm1(const Schedule& sched, double y0_dist_sq, double zeta,
                                  double eps);

struct DoubleLoopSchedule {
  Schedule inner;  ///< eta, s, lambda, with b = b^0
  double b0;
  double b_eps;
  double gamma;
  std::size_t N;
  std::size_t T1;
  std::size_t T2;
  double zeta_prime;  ///< zeta / (N + 1)
};

/// N is fixed first from its own (zeta-free) bound, then zeta' = zeta/(N+1)
/// feeds the T1 and T2 bounds. Each count is at least 1.
DoubleLoopSchedule schedule_theorem2(double alpha, double L, double r, double eps, double zeta,
                                     double f_gap0, double y0_dist_sq, double beta);

enum class EtaConstraint { satisfied, violated, not_checkable };

/// Sufficient condition for linear convergence with a general step size:
///   beta sqrt(2d) (sqrt(2 / (pi eta s (alpha - beta))) + 1) (1 + eta s L)
///     <= 2 alpha - eta L^2 - s L / 2.
/// For beta == 0 the left side is 0. s == 0 with beta > 0 is not checkable.
EtaConstraint check_eta_constraint(double eta, double s, double alpha, double L, double beta,
                                   std::size_t d);

/// (1/4) sqrt(alpha^5 / (d L^3)), the admissible beta threshold.
double nearly_convex_gate(double alpha, double L, std::size_t d);

/// A finite set of points in R^dim, stored contiguously.
class PointSet {
 public:
  explicit PointSet(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }
  std::span<const double> operator[](std::size_t i) const { return {&coords_[i * dim_], dim_}; }
  void push_back(std::span<const double> p);

  /// lo, lo+step, ..., hi on the line, skipping points within 1e-15 of `skip`.
  static PointSet uniform_1d(double lo, double hi, double step, double skip = 0.0);
  /// +/- logspace(lo, hi, count) for each sign: 2 * count points.
  static PointSet symmetric_log_1d(double lo, double hi, std::size_t count);

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// max over grid of 2 |f(x) - f* - (alpha/2) ||x-x*||^2| / ||x-x*||^2.
double estimate_beta_quadratic(const Objective& obj, double alpha, const PointSet& grid);

struct RegularityReport {
  double mu_r_hat;
  double mu_p_hat;
  double mu_q_hat;
  double L_hat;       ///< max ||grad f|| / ||x - x*|| over the grid
  double alpha;       ///< alpha used for beta_hat
  double L;           ///< L used for the gate
  double beta_hat;    ///< beta upper bound via the quadratic candidate
  double gate;        ///< nearly_convex_gate(alpha, L, d)
  bool nc_gate;       ///< beta_hat <= gate
  std::size_t points;
};

/// Grid regularity audit. (alpha, L) default to the objective's certificate;
/// uncertified objectives use alpha = mu_q_hat and L = max(L_hat, alpha).
RegularityReport regularity_constants_grid(const Objective& obj, const PointSet& grid,
                                           std::optional<Certificate> pair = std::nullopt);

struct ConditionRow {
  std::string condition;           ///< SC, RSI, PL, QG, NC
  bool holds;
  std::vector<double> parameters;  ///< empty when the condition fails; NC carries (alpha, L)
};

/// Closed-form regularity table for J2(eps, R).
std::vector<ConditionRow> j2_condition_table(double eps, double R);

struct BarrierResult {
  double lhs;        ///< min over the sphere of f(x) - f(x_hat)
  double rhs;        ///< nearly_convex_gate(alpha, L, d) * ||x_hat - x*||^2
  bool holds;        ///< lhs < rhs
  bool conclusive;   ///< false only for a grid-based d = 2 failure
};

/// Checks the barrier bound on the ball B(x_hat, radius), d in {1, 2}.
/// The d = 2 sphere is sampled at 10^4 angles.
BarrierResult barrier_check(const Objective& obj, std::span<const double> x_hat, double radius,
                            double alpha, double L);

/// 1 - ((b + theta ell)/(b + ell))^M * B / ell. Negative values are vacuous.
double lemma_st_bound(double theta, double b, double ell, std::size_t M, double B);

}  // namespace gnd
