#include "gnd/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "gnd/error.hpp"

namespace gnd {

DivergedError::DivergedError(std::size_t iteration, const std::string& what,
                             std::optional<std::size_t> outer_loop)
    : std::runtime_error(what), iteration_(iteration), outer_loop_(outer_loop) {}

ExperimentError::ExperimentError(std::size_t trial, const DivergedError& cause)
    : std::runtime_error("trial " + std::to_string(trial) + " diverged at iteration " +
                         std::to_string(cause.iteration()) + ": " + cause.what()),
      trial_(trial),
      iteration_(cause.iteration()) {}

Objective::Objective(std::string name, std::size_t dim, Point minimizer, double min_value,
                     std::optional<Certificate> certificate,
                     std::shared_ptr<const ObjectiveImpl> impl)
    : name_(std::move(name)),
      dim_(dim),
      minimizer_(std::move(minimizer)),
      min_value_(min_value),
      certificate_(certificate),
      impl_(std::move(impl)) {}

Point Objective::gradient(std::span<const double> x) const {
  Point g(dim_);
  impl_->gradient(x, g);
  return g;
}

double Objective::dist_sq(std::span<const double> x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double diff = x[i] - minimizer_[i];
    acc += diff * diff;
  }
  return acc;
}

namespace {

class Quadratic final : public ObjectiveImpl {
 public:
  Quadratic(double alpha, Point center) : alpha_(alpha), center_(std::move(center)) {}

  double value(std::span<const double> x) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < center_.size(); ++i) {
      const double diff = x[i] - center_[i];
      acc += diff * diff;
    }
    return 0.5 * alpha_ * acc;
  }

  void gradient(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t i = 0; i < center_.size(); ++i) out[i] = alpha_ * (x[i] - center_[i]);
  }

 private:
  double alpha_;
  Point center_;
};

class J1 final : public ObjectiveImpl {
 public:
  J1(int n, int k) : coeffs_(fourier_sin_coefficients(n)), weight_(1.0 + 1.0 / k) {}

  double value(std::span<const double> x) const override {
    const double t = x[0];
    return 0.5 * t * t - weight_ * j1_weighted_integral(coeffs_, t);
  }

  void gradient(std::span<const double> x, std::span<double> out) const override {
    const double t = x[0];
    const double s = std::sin(t);
    out[0] = t * (1.0 - weight_ * std::pow(s * s, coeffs_.n));
  }

 private:
  FourierSinCoefficients coeffs_;
  double weight_;
};

class J2 final : public ObjectiveImpl {
 public:
  J2(double eps, double R) : eps_(eps), R_(R) {}

  double value(std::span<const double> x) const override {
    const double t = x[0];
    if (t == 0.0) return 0.0;
    return 0.5 * (1.0 + eps_ * std::sin(2.0 * R_ * std::log(std::abs(t)))) * t * t;
  }

  void gradient(std::span<const double> x, std::span<double> out) const override {
    const double t = x[0];
    if (t == 0.0) {
      out[0] = 0.0;
      return;
    }
    const double phase = 2.0 * R_ * std::log(std::abs(t));
    out[0] = (1.0 + eps_ * std::sin(phase) + eps_ * R_ * std::cos(phase)) * t;
  }

 private:
  double eps_;
  double R_;
};

class Rastrigin final : public ObjectiveImpl {
 public:
  Rastrigin(double a, double b, double c, std::size_t dim) : a_(a), b_(b), c_(c), dim_(dim) {}

  double value(std::span<const double> x) const override {
    double cos_sum = 0.0;
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      cos_sum += std::cos(b_ * x[i]);
      sq_sum += x[i] * x[i];
    }
    return a_ * (static_cast<double>(dim_) - cos_sum) + c_ * sq_sum;
  }

  void gradient(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t i = 0; i < dim_; ++i)
      out[i] = a_ * b_ * std::sin(b_ * x[i]) + 2.0 * c_ * x[i];
  }

 private:
  double a_, b_, c_;
  std::size_t dim_;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ParameterError(std::string(what) + " must be a positive finite number");
}

}  // namespace

FourierSinCoefficients fourier_sin_coefficients(int n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  FourierSinCoefficients out{n, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  double c0 = 1.0;
  for (int i = 1; i <= n; ++i) c0 *= (2.0 * i - 1.0) / (2.0 * i);
  out.c[0] = c0;
  for (int j = 0; j < n; ++j)
    out.c[j + 1] = out.c[j] * static_cast<double>(n - j) / static_cast<double>(n + j + 1);
  return out;
}

double j1_weighted_integral(const FourierSinCoefficients& coeffs, double x) {
  // int_0^x t cos(2jt) dt = x sin(2jx)/(2j) + (cos(2jx) - 1)/(4j^2); the
  // harmonics are advanced by rotation instead of n separate sin/cos calls.
  const double c2 = std::cos(2.0 * x);
  const double s2 = std::sin(2.0 * x);
  double cj = 1.0;
  double sj = 0.0;
  double series = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= coeffs.n; ++j) {
    const double next_c = cj * c2 - sj * s2;
    const double next_s = sj * c2 + cj * s2;
    cj = next_c;
    sj = next_s;
    sign = -sign;
    const double jd = static_cast<double>(j);
    series += sign * coeffs.c[j] * (x * sj / (2.0 * jd) + (cj - 1.0) / (4.0 * jd * jd));
  }
  return 0.5 * coeffs.c[0] * x * x + 2.0 * series;
}

int compute_nk(int k) {
  if (k < 1) throw ParameterError("k must be >= 1");
  const double threshold = 2.0 * k / (25.0 * (k + 1.0));
  double ratio = 1.0;
  int n = 0;
  while (ratio > threshold) {
    ++n;
    ratio *= (2.0 * n - 1.0) / (2.0 * n);
  }
  return n;
}

Objective make_quadratic(double alpha, std::size_t dim, Point x_star) {
  require_positive(alpha, "alpha");
  if (dim < 1) throw ParameterError("dim must be >= 1");
  if (x_star.empty()) x_star.assign(dim, 0.0);
  if (x_star.size() != dim) throw ParameterError("x_star must have dim coordinates");
  auto impl = std::make_shared<Quadratic>(alpha, x_star);
  return Objective("quadratic", dim, std::move(x_star), 0.0, Certificate{alpha, alpha},
                   std::move(impl));
}

Objective make_j1(int n, int k) {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (k < 1) throw ParameterError("k must be >= 1");
  std::optional<Certificate> cert;
  if (n >= compute_nk(k)) cert = Certificate{21.0 / 25.0, 1.0};
  return Objective("j1", 1, Point{0.0}, 0.0, cert, std::make_shared<J1>(n, k));
}

Objective make_j2(double eps, double R) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  require_positive(R, "R");
  const double spread = eps * std::sqrt(1.0 + R * R);
  std::optional<Certificate> cert;
  if (spread < 1.0)
    cert = Certificate{1.0 - spread, 1.0 + spread};
  else if (4.0 * eps * std::pow(1.0 + spread, 1.5) <= 1.0)
    cert = Certificate{1.0, 1.0 + spread};
  return Objective("j2", 1, Point{0.0}, 0.0, cert, std::make_shared<J2>(eps, R));
}

Objective make_rastrigin(double a, double b, double c, std::size_t dim) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(c, "c");
  if (dim < 1) throw ParameterError("dim must be >= 1");
  return Objective("rastrigin", dim, Point(dim, 0.0), 0.0, std::nullopt,
                   std::make_shared<Rastrigin>(a, b, c, dim));
}

std::vector<StationaryPoint> j1_stationary_points(int n, int k, int j_max) {
  if (n < 1 || k < 1) throw ParameterError("n and k must be >= 1");
  if (j_max < 0) throw ParameterError("j_max must be >= 0");
  const Objective f = make_j1(n, k);
  const double offset = std::asin(std::pow(k / (k + 1.0), 1.0 / (2.0 * n)));

  std::vector<StationaryPoint> out;
  for (int j = 0; j <= j_max; ++j) {
    const double base = j * std::numbers::pi;
    // Left of j*pi + offset the weight sin^{2n} is below k/(k+1) and the
    // gradient is positive, so x_j^+ is a maximum and x_j^- a minimum.
    if (j > 0) out.push_back({base - offset, true});
    out.push_back({base + offset, false});
  }
  for (const auto& p : out) {
    const double g = f.gradient(std::span<const double>(&p.x, 1))[0];
    if (!(std::abs(g) <= 1e-9))
      throw std::logic_error("stationary point check failed at x = " + std::to_string(p.x));
  }
  return out;
}

namespace {

double param_or(const ObjectiveSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

double param_required(const ObjectiveSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw ParameterError("objective '" + spec.function + "' requires key '" + key + "'");
  return it->second;
}

int as_int(double v, const std::string& key) {
  if (v != std::floor(v) || v < 1 || v > 1e9)
    throw ParameterError("key '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

Objective make_objective(const ObjectiveSpec& spec) {
  if (spec.function == "quadratic") {
    const int dim = as_int(param_or(spec, "dim", 1.0), "dim");
    return make_quadratic(param_or(spec, "alpha", 1.0), static_cast<std::size_t>(dim),
                          Point(static_cast<std::size_t>(dim), 0.0));
  }
  if (spec.function == "j1")
    return make_j1(as_int(param_required(spec, "n"), "n"), as_int(param_required(spec, "k"), "k"));
  if (spec.function == "j2") return make_j2(param_required(spec, "eps"), param_required(spec, "R"));
  if (spec.function == "rastrigin") {
    const int dim = as_int(param_or(spec, "dim", 2.0), "dim");
    return make_rastrigin(param_or(spec, "a", 1.0), param_or(spec, "b", 1.0),
                          param_required(spec, "c"), static_cast<std::size_t>(dim));
  }
  throw ParameterError("unknown function '" + spec.function +
                       "' (expected j1, j2, rastrigin or quadratic)");
}

}  // namespace gnd
