#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnd/sampling.hpp"
#include "support/oracles.hpp"

using namespace gnd;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal quantile inverts the normal CDF") {
  for (double p : {1e-300, 1e-100, 1e-20, 1e-8, 1e-3, 0.02425, 0.075, 0.3, 0.425, 0.5, 0.575, 0.7,
                   0.925, 0.97575, 0.999, 1 - 1e-8, 1 - 1e-15}) {
    CAPTURE(p);
    const double z = normal_quantile(p);
    const double back = p < 0.5 ? oracle::normal_cdf(z) : 1.0 - oracle::normal_cdf(z);
    const double target = p < 0.5 ? p : 1.0 - p;
    // d(ln Phi)/dz ~ |z| in the tail, so quantile error is amplified by about z^2.
    CHECK(std::fabs(back - target) / target <= 1e-14 * (1.0 + z * z));
  }
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
  for (double p = 0.001; p < 0.5; p += 0.0137)
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-12));
}

TEST_CASE("uniform draws lie strictly inside (0, 1)") {
  RngStream rng(9, 3);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(std::fabs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n) + 1e-9);
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  std::vector<double> xa(5), xb(5), xc(5), xd(5);
  sample_scaled_gaussian(a, xa);
  sample_scaled_gaussian(b, xb);
  sample_scaled_gaussian(c, xc);
  sample_scaled_gaussian(d, xd);
  CHECK(xa == xb);
  CHECK(xa != xc);
  CHECK(xa != xd);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("sample_scaled_gaussian consumes exactly d normals") {
  RngStream a(5, 2), b(5, 2);
  std::vector<double> xi(7);
  sample_scaled_gaussian(a, xi);
  for (int i = 0; i < 7; ++i) {
    const double z = b.normal();
    CHECK(xi[i] == z * (1.0 / std::sqrt(7.0)));
  }
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("exact moments") {
  const auto m1 = gaussian_moments_exact(1);
  CHECK(m1.m2 == 1.0);
  CHECK(m1.m4 == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(m1.m1 == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-13));
  const auto m2 = gaussian_moments_exact(2);
  CHECK(m2.m1 == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-13));
  CHECK(m2.m3 == doctest::Approx(1.329340388179137).epsilon(1e-13));
  // Large d: m1 -> 1 from below.
  const auto big = gaussian_moments_exact(10000);
  CHECK(big.m1 < 1.0);
  CHECK(big.m1 > 0.9999);
}

TEST_CASE("Monte-Carlo moments within three standard errors") {
  for (std::size_t d : {1u, 2u, 10u, 100u}) {
    CAPTURE(d);
    const auto exact = gaussian_moments_exact(d);
    RngStream rng(1234, d);
    std::vector<double> xi(d);
    const int n = d == 100 ? 100000 : 1000000;
    double s[4] = {0, 0, 0, 0}, s2[4] = {0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
      sample_scaled_gaussian(rng, xi);
      double sq = 0.0;
      for (double v : xi) sq += v * v;
      const double r = std::sqrt(sq);
      const double p[4] = {r, sq, sq * r, sq * sq};
      for (int k = 0; k < 4; ++k) {
        s[k] += p[k];
        s2[k] += p[k] * p[k];
      }
    }
    const double ex[4] = {exact.m1, exact.m2, exact.m3, exact.m4};
    for (int k = 0; k < 4; ++k) {
      const double mean = s[k] / n;
      const double se = std::sqrt((s2[k] / n - mean * mean) / n);
      CHECK(std::fabs(mean - ex[k]) <= 3.0 * se);
    }
  }
}

TEST_CASE("oracle with r = 0 is the exact gradient and draws nothing") {
  const auto f = make_rastrigin(1, 1, 0.05, 3);
  const SgOracle oracle(f, 0.0);
  RngStream a(1, 1), b(1, 1);
  const Point x{1.5, -2.0, 0.25};
  Point g(3);
  oracle.draw(x, a, g);
  CHECK(g == f.gradient(x));
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("oracle noise is unbiased with variance r^2") {
  const auto f = make_quadratic(1.0, 2, {});
  const SgOracle oracle(f, 1.0);
  RngStream rng(77, 0);
  const Point x{0.7, -0.2};
  const Point grad = f.gradient(x);
  Point g(2);
  const int n = 1000000;
  double sq = 0.0, m0 = 0.0, m1 = 0.0;
  for (int i = 0; i < n; ++i) {
    oracle.draw(x, rng, g);
    const double d0 = g[0] - grad[0], d1 = g[1] - grad[1];
    sq += d0 * d0 + d1 * d1;
    m0 += g[0];
    m1 += g[1];
  }
  CHECK(sq / n >= 0.995);
  CHECK(sq / n <= 1.005);
  CHECK(std::fabs(m0 / n - grad[0]) <= 3e-3);
  CHECK(std::fabs(m1 / n - grad[1]) <= 3e-3);
}
