#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gnd/error.hpp"
#include "gnd/objectives.hpp"
#include "gnd/theory.hpp"
#include "support/oracles.hpp"

using namespace gnd;
using std::numbers::pi;

namespace {

std::vector<Objective> suite() {
  return {make_quadratic(1.0, 2, {}),
          make_quadratic(2.5, 3, {1.0, -2.0, 0.5}),
          make_j1(1, 1),
          make_j1(7, 1),
          make_j1(112, 2),
          make_j1(199, 1),
          make_j2(0.1, 1.0),
          make_j2(2.0 / 27.0, std::sqrt(18161.0) / 8.0),
          make_rastrigin(1, 1, 0.05, 2),
          make_rastrigin(1, 1, 0.03, 10),
          make_rastrigin(2, 0.5, 0.1, 3)};
}

}  // namespace

TEST_CASE("quadratic values and gradients") {
  const auto q = make_quadratic(1.0, 2, {0.0, 0.0});
  const Point x{1.0, 1.0};
  CHECK(q.value(x) == 1.0);
  CHECK(q.gradient(x) == Point{1.0, 1.0});

  const auto q2 = make_quadratic(2.0, 1, {0.0});
  CHECK(q2.value(Point{0.0}) == 0.0);
  CHECK(q2.gradient(Point{0.0})[0] == 0.0);

  const auto q3 = make_quadratic(1.0, 3, {1.0, 1.0, 1.0});
  CHECK(q3.value(Point{0.0, 0.0, 0.0}) == doctest::Approx(1.5).epsilon(1e-15));
  REQUIRE(q3.certificate());
  CHECK(q3.certificate()->alpha == 1.0);
  CHECK(q3.certificate()->L == 1.0);

  CHECK_THROWS_AS(make_quadratic(0.0, 1, {}), ParameterError);
  CHECK_THROWS_AS(make_quadratic(1.0, 0, {}), ParameterError);
  CHECK_THROWS_AS(make_quadratic(1.0, 2, {1.0}), ParameterError);
}

TEST_CASE("J1 closed cases") {
  // int_0^pi t sin^2 t dt = pi^2 / 4, so J = pi^2/2 - 2 pi^2/4 = 0.
  CHECK(std::fabs(make_j1(1, 1).value(Point{pi})) < 1e-13);
  CHECK(make_j1(7, 1).gradient(Point{pi / 2})[0] == doctest::Approx(-pi / 2).epsilon(1e-14));
  const double x = 3.7;
  CHECK(std::fabs(make_j1(112, 2).value(Point{x}) - oracle::j1_value_quadrature(112, 2, x)) <
        1e-8);
}

TEST_CASE("compute_nk matches the published table") {
  CHECK(compute_nk(1) == 199);
  CHECK(compute_nk(2) == 112);
  CHECK(compute_nk(3) == 89);
  CHECK(compute_nk(4) == 78);
}

TEST_CASE("J1 certificate attached exactly from n_k on") {
  CHECK_FALSE(make_j1(7, 1).certificate());
  CHECK_FALSE(make_j1(198, 1).certificate());
  const auto c = make_j1(199, 1).certificate();
  REQUIRE(c);
  CHECK(c->alpha == 21.0 / 25.0);
  CHECK(c->L == 1.0);
  CHECK(make_j1(112, 2).certificate());
  CHECK_FALSE(make_j1(111, 2).certificate());
}

TEST_CASE("Fourier coefficients") {
  for (int n : {1, 2, 7, 50, 112, 199, 400}) {
    const auto fc = fourier_sin_coefficients(n);
    REQUIRE(fc.c.size() == static_cast<std::size_t>(n + 1));
    double total = fc.c[0];
    for (int j = 1; j <= n; ++j) total += 2.0 * fc.c[j];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fc.c[0] <= 1.0);
    for (int j = 0; j < n; ++j) CHECK(fc.c[j] > fc.c[j + 1]);
    CHECK(fc.c[n] > 0.0);
    for (int j = 0; j <= n; ++j) {
      const double ref = oracle::binomial_coefficient_over_4n(n, j);
      if (ref > 1e-280) CHECK(std::fabs(fc.c[j] - ref) / ref <= 1e-12);
    }
  }
}

TEST_CASE("J1 Fourier value agrees with adaptive quadrature") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n : {1, 7, 112}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = u(gen);
      worst = std::max(worst, std::fabs(make_j1(n, 1).value(Point{x}) -
                                        oracle::j1_value_quadrature(n, 1, x)));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("J1 sandwich for certified n") {
  for (auto [n, k] : {std::pair{199, 1}, std::pair{112, 2}, std::pair{89, 3}}) {
    const auto f = make_j1(n, k);
    for (double x = -10.0; x <= 10.0; x += 1e-2) {
      const double gap = f.value(Point{x}) - 0.5 * x * x;
      CHECK(gap <= 1e-12);
      CHECK(gap >= -4.0 / 25.0 * x * x - 1e-12);
    }
  }
}

TEST_CASE("J2 values") {
  const auto f = make_j2(0.5, 3.0);
  CHECK(f.value(Point{1.0}) == 0.5);
  CHECK(f.gradient(Point{1.0})[0] == 2.5);
  const auto g = make_j2(2.0 / 27.0, std::sqrt(18161.0) / 8.0);
  CHECK(g.value(Point{0.0}) == 0.0);
  CHECK(g.gradient(Point{0.0})[0] == 0.0);
  for (double x : {-3.0, -1e-4, 2e-7, 0.3, 7.0})
    CHECK(g.value(Point{x}) ==
          doctest::Approx(oracle::j2_value_direct(2.0 / 27.0, std::sqrt(18161.0) / 8.0, x))
              .epsilon(1e-14));
  CHECK_THROWS_AS(make_j2(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(make_j2(0.1, 0.0), ParameterError);
}

TEST_CASE("J2 certificates follow both cases") {
  const auto c1 = make_j2(0.1, 1.0).certificate();
  REQUIRE(c1);
  CHECK(c1->alpha == doctest::Approx(1.0 - 0.1 * std::sqrt(2.0)));
  CHECK(c1->L == doctest::Approx(1.0 + 0.1 * std::sqrt(2.0)));
  const auto c2 = make_j2(2.0 / 27.0, std::sqrt(18161.0) / 8.0).certificate();
  REQUIRE(c2);
  CHECK(c2->alpha == 1.0);
  CHECK(c2->L == doctest::Approx(9.0 / 4.0));
  CHECK_FALSE(make_j2(0.5, 10.0).certificate());
}

TEST_CASE("Rastrigin values") {
  const auto f = make_rastrigin(1, 1, 0.05, 2);
  CHECK(f.value(Point{0.0, 0.0}) == 0.0);
  CHECK(f.gradient(Point{0.0, 0.0}) == Point{0.0, 0.0});
  CHECK(f.value(Point{pi, 0.0}) == doctest::Approx(2.0 + 0.05 * pi * pi).epsilon(1e-15));
  const auto g = make_rastrigin(1, 1, 0.01, 2).gradient(Point{pi, pi});
  CHECK(g[0] == doctest::Approx(0.02 * pi).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(0.02 * pi).epsilon(1e-12));
  CHECK_FALSE(f.certificate());
  const Point x{0.3, -4.1, 2.2};
  CHECK(make_rastrigin(2, 0.5, 0.1, 3).value(x) ==
        doctest::Approx(oracle::rastrigin_value_direct(2, 0.5, 0.1, x)).epsilon(1e-14));
}

TEST_CASE("minimizer invariants") {
  for (const auto& f : suite()) {
    CAPTURE(f.name());
    CHECK(f.value(f.minimizer()) == f.min_value());
    for (double g : f.gradient(f.minimizer())) CHECK(std::fabs(g) <= 1e-12);
  }
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 gen(11);
  for (const auto& f : suite()) {
    CAPTURE(f.name());
    const double box = f.name() == "rastrigin" ? 20.0 : 10.0;
    std::uniform_real_distribution<double> u(-box, box);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      Point x(f.dim());
      for (double& v : x) v = u(gen);
      const Point g = f.gradient(x);
      const auto fd = oracle::fd_gradient([&](std::span<const double> p) { return f.value(p); }, x);
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        num += (g[j] - fd[j]) * (g[j] - fd[j]);
        den += g[j] * g[j];
      }
      worst = std::max(worst, std::sqrt(num) / std::max(1.0, std::sqrt(den)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("J1 and J2 are even") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(1e-6, 10.0);
  for (const auto& f : {make_j1(7, 1), make_j1(112, 2), make_j2(0.1, 1.0), make_j2(0.3, 2.0)}) {
    for (int i = 0; i < 200; ++i) {
      const double x = u(gen);
      CHECK(f.value(Point{x}) == f.value(Point{-x}));
      CHECK(f.gradient(Point{-x})[0] == -f.gradient(Point{x})[0]);
    }
  }
}

TEST_CASE("certified objectives obey the quadratic sandwich and calmness") {
  for (const auto& f : suite()) {
    if (!f.certificate() || f.dim() != 1) continue;
    CAPTURE(f.name());
    const auto [alpha, L] = *f.certificate();
    const auto grid = PointSet::uniform_1d(-10.0, 10.0, 1e-3, f.minimizer()[0]);
    const double beta = estimate_beta_quadratic(f, alpha, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto x = grid[i];
      const double d2 = f.dist_sq(x);
      const double gap = f.value(x) - f.min_value();
      CHECK(gap >= 0.5 * (alpha - beta) * d2 - 1e-12);
      CHECK(gap <= 0.5 * L * d2 + 1e-12);
      CHECK(std::fabs(f.gradient(x)[0]) <= L * std::sqrt(d2) * (1 + 1e-12));
    }
  }
}

TEST_CASE("J1 stationary points") {
  const auto pts = j1_stationary_points(7, 1, 0);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].x == doctest::Approx(std::asin(std::pow(0.5, 1.0 / 14.0))).epsilon(1e-15));
  CHECK_FALSE(pts[0].local_min);

  const auto p1 = j1_stationary_points(1, 1, 0);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].x == doctest::Approx(pi / 4).epsilon(1e-15));

  const auto many = j1_stationary_points(199, 1, 3);
  REQUIRE(many.size() == 7);
  const auto f = make_j1(199, 1);
  for (std::size_t i = 0; i < many.size(); ++i) {
    CHECK(std::fabs(f.gradient(Point{many[i].x})[0]) <= 1e-9);
    if (i) CHECK(many[i].x > many[i - 1].x);
    // Classify with the sign change of the derivative.
    const double h = 1e-7;
    const bool rises = f.gradient(Point{many[i].x + h})[0] > 0;
    CHECK(rises == many[i].local_min);
  }
  CHECK_THROWS_AS(j1_stationary_points(7, 1, -1), ParameterError);
}

TEST_CASE("make_objective by name") {
  CHECK(make_objective({"j1", {{"n", 7}, {"k", 1}}}).name() == "j1");
  CHECK(make_objective({"rastrigin", {{"c", 0.05}}}).dim() == 2);
  CHECK(make_objective({"quadratic", {{"dim", 3}}}).dim() == 3);
  CHECK_THROWS_AS(make_objective({"j1", {{"n", 7}}}), ParameterError);
  CHECK_THROWS_AS(make_objective({"himmelblau", {}}), ParameterError);
  CHECK_THROWS_AS(make_objective({"j1", {{"n", 7.5}, {"k", 1}}}), ParameterError);
}
