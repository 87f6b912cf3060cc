#pragma once

// Test-function suite: the quadratic baseline, the two nearly convex
// univariate families J1 / J2, and the Rastrigin family. Every objective
// carries exact values, exact gradients and its known global minimizer.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gnd {

using Point = std::vector<double>;

/// (alpha, L) pair for which an objective is proven nearly convex.
struct Certificate {
  double alpha;
  double L;
};

/// Evaluation backend of an Objective. Implementations are immutable.
class ObjectiveImpl {
 public:
  virtual ~ObjectiveImpl() = default;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;
};

/// Immutable, cheaply copyable handle to a test function. Safe to share
/// between threads.
class Objective {
 public:
  Objective(std::string name, std::size_t dim, Point minimizer, double min_value,
            std::optional<Certificate> certificate,
            std::shared_ptr<const ObjectiveImpl> impl);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const Point& minimizer() const noexcept { return minimizer_; }
  double min_value() const noexcept { return min_value_; }
  const std::optional<Certificate>& certificate() const noexcept { return certificate_; }

  double value(std::span<const double> x) const { return impl_->value(x); }
  void gradient(std::span<const double> x, std::span<double> out) const {
    impl_->gradient(x, out);
  }
  Point gradient(std::span<const double> x) const;

  /// Squared Euclidean distance from x to the minimizer.
  double dist_sq(std::span<const double> x) const;

 private:
  std::string name_;
  std::size_t dim_;
  Point minimizer_;
  double min_value_;
  std::optional<Certificate> certificate_;
  std::shared_ptr<const ObjectiveImpl> impl_;
};

/// Coefficients c_j = C(2n, n-j) / 4^n, j = 0..n, of the cosine expansion
/// sin^{2n} t = c_0 + 2 sum_j (-1)^j c_j cos(2jt).
struct FourierSinCoefficients {
  int n;
  std::vector<double> c;
};

/// c_0 is the running product prod_{i<=n} (2i-1)/(2i); the rest follow from
/// c_{j+1} = c_j (n-j)/(n+j+1). No factorials are formed.
FourierSinCoefficients fourier_sin_coefficients(int n);

/// Least n with (2n-1)!!/(2n)!! <= 2k / (25(k+1)).
int compute_nk(int k);

Objective make_quadratic(double alpha, std::size_t dim, Point x_star);
Objective make_j1(int n, int k);
Objective make_j2(double eps, double R);
Objective make_rastrigin(double a, double b, double c, std::size_t dim);

/// Value of the integral int_0^x t sin^{2n} t dt in closed Fourier form.
double j1_weighted_integral(const FourierSinCoefficients& coeffs, double x);

struct StationaryPoint {
  double x;
  bool local_min;  ///< false for local maxima
};

/// Positive stationary points j*pi +/- arcsin((k/(k+1))^{1/(2n)}), j <= j_max,
/// ordered by abscissa. Each is checked to have |gradient| <= 1e-9.
std::vector<StationaryPoint> j1_stationary_points(int n, int k, int j_max);

/// Name + numeric parameters, as they appear in the [objective] config section.
struct ObjectiveSpec {
  std::string function;
  std::map<std::string, double> params;
};

/// Builds one of "quadratic", "j1", "j2", "rastrigin" from a spec. Missing
/// keys fall back to the suite defaults (a = b = 1, alpha = 1, dim = 1).
Objective make_objective(const ObjectiveSpec& spec);

}  // namespace gnd
