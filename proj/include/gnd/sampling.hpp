#pragma once

// Reproducible random streams and the Gaussian draws used by the solvers.
//
// Every stream is a Philox4x32-10 counter-based generator keyed by the
// 64-bit master seed; the stream index occupies the upper 64 bits of the
// 128-bit counter, so streams with different indices never share a block.
// Normals come from the inverse normal CDF (Wichura's AS 241, PPND16)
// applied to one 53-bit uniform each. Golden trajectories depend on both
// choices.

#include <array>
#include <cstdint>
#include <span>

#include "gnd/objectives.hpp"

namespace gnd {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Standard normal quantile, relative accuracy about 1e-16 on (0, 1).
double normal_quantile(double p);

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return index_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal, one uniform per draw.
  double normal() { return normal_quantile(uniform()); }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 64-bit words are taken in pairs from buffer_
};

/// Fills out with xi ~ N(0, I_d / d), consuming exactly d normals.
void sample_scaled_gaussian(RngStream& rng, std::span<double> out);

/// Stochastic gradient oracle SG(x) = grad f(x) + r xi, xi ~ N(0, I_d / d),
/// so that E||SG(x) - grad f(x)||^2 = r^2.
class SgOracle {
 public:
  SgOracle(Objective objective, double r);

  const Objective& objective() const noexcept { return objective_; }
  double r() const noexcept { return r_; }

  /// Writes SG(x) into out. With r == 0 this is exactly the gradient and
  /// no draws are consumed.
  void draw(std::span<const double> x, RngStream& rng, std::span<double> out) const;

  /// Same, reusing an already evaluated exact gradient.
  void perturb(std::span<const double> grad, RngStream& rng, std::span<double> out) const;

 private:
  Objective objective_;
  double r_;
};

/// Exact E||xi||^p, p = 1..4, for xi ~ N(0, I_d / d).
struct GaussianMoments {
  double m1, m2, m3, m4;
};

GaussianMoments gaussian_moments_exact(std::size_t d);

}  // namespace gnd
