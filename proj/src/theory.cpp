#include "gnd/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gnd/error.hpp"

namespace gnd {

namespace {

void require_pair(double alpha, double L) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0");
  if (!(L >= alpha) || !std::isfinite(L)) throw ParameterError("L must satisfy L >= alpha");
}

std::size_t ceil_count(double bound) {
  if (!(bound > 0.0)) return 0;
  if (bound > 1e15) throw ParameterError("iteration bound overflows");
  return static_cast<std::size_t>(std::ceil(bound));
}

}  // namespace

Schedule make_schedule(double alpha, double L, double eta, double s, double r, double f_gap) {
  require_pair(alpha, L);
  if (!(r >= 0.0)) throw ParameterError("r must be >= 0");
  if (!(f_gap >= 0.0)) throw ParameterError("f* - f_lb must be >= 0");
  const double lambda = 2.0 * alpha - eta * L * L;
  if (!(eta > 0.0) || !(lambda > 0.0))
    throw ParameterError("eta must lie in (0, 2 alpha / L^2)");
  const double eta_lambda = eta * lambda;
  const double b = eta * r * r / lambda + (5.0 * eta_lambda + 14.0) / (42.0 * L) * f_gap;
  return {eta, s, lambda, b, eta_lambda};
}

Schedule schedule_theorem1(double alpha, double L, double r, double f_gap) {
  require_pair(alpha, L);
  const double eta = 2.0 * alpha / (5.0 * L * L);
  const double lambda = 2.0 * alpha - eta * L * L;
  return make_schedule(alpha, L, eta, lambda / (3.0 * L), r, f_gap);
}

std::size_t iterations_bound_thm1(const Schedule& sched, double y0_dist_sq, double zeta,
                                  double eps) {
  if (!(zeta > 0.0 && zeta < 1.0)) throw ParameterError("zeta must lie in (0, 1)");
  if (!(y0_dist_sq > 0.0)) throw ParameterError("||y0 - x*||^2 must be > 0");
  if (sched.b > 0.0)
    return ceil_count(200.0 / sched.eta_lambda * std::log(y0_dist_sq / (100.0 * sched.b * zeta)));
  if (!(eps > 0.0)) throw ParameterError("eps must be > 0");
  return ceil_count(100.0 / sched.eta_lambda * std::log(y0_dist_sq / (zeta * eps)));
}

DoubleLoopSchedule schedule_theorem2(double alpha, double L, double r, double eps, double zeta,
                                     double f_gap0, double y0_dist_sq, double beta) {
  require_pair(alpha, L);
  if (!(eps > 0.0)) throw ParameterError("eps must be > 0");
  if (!(zeta > 0.0 && zeta < 1.0)) throw ParameterError("zeta must lie in (0, 1)");
  if (!(f_gap0 > 0.0)) throw ParameterError("f* - f_lb^0 must be > 0");
  if (!(y0_dist_sq > 0.0)) throw ParameterError("||y0 - x*||^2 must be > 0");
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  if (!(beta < alpha)) throw ParameterError("nearly convex gate violated: beta >= alpha");

  const Schedule sched = schedule_theorem1(alpha, L, r, f_gap0);
  const Schedule at_eps = schedule_theorem1(alpha, L, r, eps);
  const double b0 = sched.b;
  const double b_eps = at_eps.b;
  const double contraction = (1.0 - sched.eta * L) * (1.0 - sched.eta * L);
  const double gamma = contraction * eps / (contraction * eps + 100.0 * L * b_eps);

  const double n_bound = std::log((1.0 - gamma) + gamma * f_gap0 / eps) / gamma;
  const std::size_t N = std::max<std::size_t>(1, ceil_count(n_bound));
  const double zeta_prime = zeta / static_cast<double>(N + 1);

  const double scale = 200.0 / sched.eta_lambda;
  const double t1_bound = scale * std::log(y0_dist_sq / (100.0 * b0 * zeta_prime));
  const double growth = (1.0 + sched.eta * L) * (1.0 + sched.eta * L);
  const double t2_bound =
      scale * std::log(2.0 * growth * L * b0 / (contraction * (alpha - beta) * b_eps * zeta_prime));

  return {sched,
          b0,
          b_eps,
          gamma,
          N,
          std::max<std::size_t>(1, ceil_count(t1_bound)),
          std::max<std::size_t>(1, ceil_count(t2_bound)),
          zeta_prime};
}

EtaConstraint check_eta_constraint(double eta, double s, double alpha, double L, double beta,
                                   std::size_t d) {
  require_pair(alpha, L);
  if (!(eta > 0.0 && eta < 2.0 * alpha / (L * L)))
    throw ParameterError("eta must lie in (0, 2 alpha / L^2)");
  if (!(s >= 0.0)) throw ParameterError("s must be >= 0");
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  if (d < 1) throw ParameterError("d must be >= 1");

  const double rhs = 2.0 * alpha - eta * L * L - s * L / 2.0;
  double lhs = 0.0;
  if (beta > 0.0) {
    if (s == 0.0 || beta >= alpha) return EtaConstraint::not_checkable;
    lhs = beta * std::sqrt(2.0 * static_cast<double>(d)) *
          (std::sqrt(2.0 / (std::numbers::pi * eta * s * (alpha - beta))) + 1.0) *
          (1.0 + eta * s * L);
  }
  if (beta == 0.0 && s == 0.0) return rhs > 0.0 ? EtaConstraint::satisfied : EtaConstraint::violated;
  return lhs <= rhs ? EtaConstraint::satisfied : EtaConstraint::violated;
}

double nearly_convex_gate(double alpha, double L, std::size_t d) {
  require_pair(alpha, L);
  if (d < 1) throw ParameterError("d must be >= 1");
  return 0.25 * std::sqrt(std::pow(alpha, 5) / (static_cast<double>(d) * L * L * L));
}

void PointSet::push_back(std::span<const double> p) {
  if (p.size() != dim_) throw ParameterError("point dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

PointSet PointSet::uniform_1d(double lo, double hi, double step, double skip) {
  if (!(step > 0.0) || !(hi >= lo)) throw ParameterError("invalid uniform grid");
  PointSet out(1);
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5));
  for (std::size_t i = 0; i <= count; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (std::abs(x - skip) > 1e-15) out.coords_.push_back(x);
  }
  return out;
}

PointSet PointSet::symmetric_log_1d(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw ParameterError("invalid log grid");
  PointSet out(1);
  out.coords_.reserve(2 * count);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = std::pow(10.0, a + (b - a) * static_cast<double>(i) / (count - 1.0));
    out.coords_.push_back(x);
    out.coords_.push_back(-x);
  }
  return out;
}

namespace {

void require_grid(const Objective& obj, const PointSet& grid) {
  if (grid.empty()) throw ParameterError("grid must be non-empty");
  if (grid.dim() != obj.dim()) throw ParameterError("grid dimension mismatch");
}

}  // namespace

double estimate_beta_quadratic(const Objective& obj, double alpha, const PointSet& grid) {
  require_grid(obj, grid);
  double beta = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid[i];
    const double r2 = obj.dist_sq(x);
    if (r2 == 0.0) throw ParameterError("grid must exclude the minimizer");
    const double dev = obj.value(x) - obj.min_value() - 0.5 * alpha * r2;
    beta = std::max(beta, 2.0 * std::abs(dev) / r2);
  }
  return beta;
}

RegularityReport regularity_constants_grid(const Objective& obj, const PointSet& grid,
                                           std::optional<Certificate> pair) {
  require_grid(obj, grid);
  constexpr double inf = std::numeric_limits<double>::infinity();
  double mu_r = inf, mu_p = inf, mu_q = inf, L_hat = 0.0;
  const Point& xs = obj.minimizer();
  Point g(obj.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid[i];
    const double r2 = obj.dist_sq(x);
    if (r2 == 0.0) throw ParameterError("grid must exclude the minimizer");
    obj.gradient(x, g);
    double inner = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      inner += g[j] * (x[j] - xs[j]);
      g2 += g[j] * g[j];
    }
    const double gap = obj.value(x) - obj.min_value();
    mu_r = std::min(mu_r, inner / r2);
    mu_q = std::min(mu_q, 2.0 * gap / r2);
    if (gap > 1e-14) mu_p = std::min(mu_p, g2 / (2.0 * gap));
    L_hat = std::max(L_hat, std::sqrt(g2 / r2));
  }

  if (!pair) pair = obj.certificate();
  if (!pair) pair = Certificate{mu_q, std::max(L_hat, mu_q)};

  RegularityReport rep{};
  rep.mu_r_hat = mu_r;
  rep.mu_p_hat = mu_p;
  rep.mu_q_hat = mu_q;
  rep.L_hat = L_hat;
  rep.alpha = pair->alpha;
  rep.L = pair->L;
  rep.points = grid.size();
  if (pair->alpha > 0.0 && pair->L >= pair->alpha) {
    rep.beta_hat = estimate_beta_quadratic(obj, pair->alpha, grid);
    rep.gate = nearly_convex_gate(pair->alpha, pair->L, obj.dim());
    rep.nc_gate = rep.beta_hat <= rep.gate;
  } else {
    rep.beta_hat = std::numeric_limits<double>::infinity();
    rep.gate = 0.0;
    rep.nc_gate = false;
  }
  return rep;
}

std::vector<ConditionRow> j2_condition_table(double eps, double R) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  if (!(R > 0.0)) throw ParameterError("R must be > 0");
  const double sc = eps * std::sqrt(1.0 + 5.0 * R * R + 4.0 * R * R * R * R);
  const double spread = eps * std::sqrt(1.0 + R * R);

  std::vector<ConditionRow> rows;
  rows.push_back({"SC", sc < 1.0, sc < 1.0 ? std::vector<double>{1.0 - sc} : std::vector<double>{}});
  const bool rsi = spread < 1.0;
  rows.push_back({"RSI", rsi, rsi ? std::vector<double>{1.0 - spread} : std::vector<double>{}});
  rows.push_back({"PL", rsi,
                  rsi ? std::vector<double>{(1.0 - spread) * (1.0 - spread) / (1.0 + eps)}
                      : std::vector<double>{}});
  rows.push_back({"QG", true, {1.0 - eps}});
  if (rsi)
    rows.push_back({"NC", true, {1.0 - spread, 1.0 + spread}});
  else if (4.0 * eps * std::pow(1.0 + spread, 1.5) <= 1.0)
    rows.push_back({"NC", true, {1.0, 1.0 + spread}});
  else
    rows.push_back({"NC", false, {}});
  return rows;
}

BarrierResult barrier_check(const Objective& obj, std::span<const double> x_hat, double radius,
                            double alpha, double L) {
  const std::size_t d = obj.dim();
  if (d != 1 && d != 2) throw ParameterError("barrier_check supports d = 1 or d = 2 only");
  if (x_hat.size() != d) throw ParameterError("x_hat dimension mismatch");
  if (!(radius > 0.0)) throw ParameterError("radius must be > 0");
  const double dist2 = obj.dist_sq(x_hat);
  if (!(radius * radius < dist2)) throw ParameterError("ball must exclude the minimizer");

  const double f_hat = obj.value(x_hat);
  double lhs = std::numeric_limits<double>::infinity();
  if (d == 1) {
    for (double sign : {-1.0, 1.0}) {
      const double x = x_hat[0] + sign * radius;
      lhs = std::min(lhs, obj.value(std::span<const double>(&x, 1)) - f_hat);
    }
  } else {
    constexpr std::size_t kAngles = 10000;
    double p[2];
    for (std::size_t i = 0; i < kAngles; ++i) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / kAngles;
      p[0] = x_hat[0] + radius * std::cos(theta);
      p[1] = x_hat[1] + radius * std::sin(theta);
      lhs = std::min(lhs, obj.value(p) - f_hat);
    }
  }
  const double rhs = nearly_convex_gate(alpha, L, d) * dist2;
  const bool holds = lhs < rhs;
  return {lhs, rhs, holds, holds || d == 1};
}

double lemma_st_bound(double theta, double b, double ell, std::size_t M, double B) {
  if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("theta must lie in (0, 1)");
  if (!(b > 0.0) || !(ell > 0.0)) throw ParameterError("b and ell must be > 0");
  if (!(B >= 0.0)) throw ParameterError("B must be >= 0");
  const double ratio = (b + theta * ell) / (b + ell);
  return 1.0 - std::pow(ratio, static_cast<double>(M)) * B / ell;
}

}  // namespace gnd
