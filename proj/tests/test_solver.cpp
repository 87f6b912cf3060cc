#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "gnd/error.hpp"
#include "gnd/solver.hpp"

using namespace gnd;

namespace {

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string dump(const Trajectory& tr) {
  std::ostringstream os;
  os << "t x value sigma\n";
  for (std::size_t t = 0; t <= tr.iterations(); ++t) {
    os << t << ' ' << hexfloat(tr.x(t)[0]) << ' ' << hexfloat(tr.values()[t]) << ' '
       << (t < tr.iterations() ? hexfloat(tr.sigmas()[t]) : "-") << '\n';
  }
  os << "t_star " << tr.t_star() << '\n';
  return os.str();
}

bool bitwise_equal(const Trajectory& a, const Trajectory& b) {
  if (a.iterations() != b.iterations() || a.values() != b.values() || a.sigmas() != b.sigmas() ||
      a.t_star() != b.t_star())
    return false;
  for (std::size_t t = 0; t <= a.iterations(); ++t)
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (a.x(t)[i] != b.x(t)[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("sigma_of") {
  CHECK(sigma_of(1.5, 4.0, 2.0, 0.0) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
  CHECK(sigma_of(0.3, 2.0, 1.7, 1.7) == 0.0);
  CHECK(sigma_of(0.4, 0.5, -1.0, 0.0) == 0.0);
}

TEST_CASE("GND with s = 0 on a quadratic is gradient descent") {
  const SgOracle oracle(make_quadratic(1.0, 1, {}), 0.0);
  RngStream rng(0, 0);
  const auto tr = gnd_run(oracle, Point{1.0}, {0.4, 0.0, 0.0, 3, false}, rng);
  CHECK(tr.x(0)[0] == 1.0);
  CHECK(tr.x(1)[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(tr.x(2)[0] == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(tr.x(3)[0] == doctest::Approx(0.216).epsilon(1e-15));
  CHECK(tr.t_star() == 3);

  RngStream rng2(0, 0);
  const auto one = gd_run(oracle, Point{1.0}, 0.4, 1, rng2);
  CHECK(one.x(1)[0] == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("T = 0 gives only the starting point") {
  const SgOracle oracle(make_j1(7, 1), 0.0);
  RngStream rng(0, 0);
  const auto tr = gnd_run(oracle, Point{3.0}, {0.4, 0.5, 0.0, 0, true}, rng);
  CHECK(tr.iterations() == 0);
  CHECK(tr.x(0)[0] == 3.0);
  CHECK(tr.t_star() == 0);
  CHECK(tr.sigmas().empty());
}

TEST_CASE("gd_run equals gnd_run with s = 0 bitwise") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const std::vector<Objective> objs{make_j1(7, 1), make_rastrigin(1, 1, 0.05, 2),
                                    make_j2(0.1, 1.0), make_quadratic(0.5, 3, {})};
  for (int i = 0; i < 10; ++i) {
    const Objective& f = objs[i % objs.size()];
    const double r = i % 3 == 0 ? 0.0 : 0.5;
    const SgOracle oracle(f, r);
    Point x0(f.dim());
    for (double& v : x0) v = u(gen);
    const double eta = 0.05 + 0.03 * i;
    RngStream a(i, 4), b(i, 4);
    const auto gd = gd_run(oracle, x0, eta, 40, a);
    const auto gnd = gnd_run(oracle, x0, {eta, 0.0, 0.0, 40, false}, b);
    CHECK(bitwise_equal(gd, gnd));
  }
}

TEST_CASE("trajectory invariants") {
  const SgOracle oracle(make_rastrigin(1, 1, 0.01, 2), 0.3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 0);
    const Point x0{rng.uniform(-20, 20), rng.uniform(-20, 20)};
    const GndConfig cfg{1.5, 4.0, 0.0, 200, true};
    const auto tr = gnd_run(oracle, x0, cfg, rng);
    const auto& vals = tr.values();
    for (std::size_t t = 0; t <= tr.iterations(); ++t) {
      CHECK(vals[t] == oracle.objective().value(tr.x(t)));
      CHECK(vals[tr.t_star()] <= vals[t]);
      if (t < tr.t_star()) CHECK(vals[t] > vals[tr.t_star()]);
    }
    for (std::size_t t = 0; t < tr.iterations(); ++t) {
      CHECK(tr.sigmas()[t] >= 0.0);
      const double gap = tr.half_values()[t] - cfg.f_lb;
      if (gap <= 0)
        CHECK(tr.sigmas()[t] == 0.0);
      else
        CHECK(tr.sigmas()[t] > 0.0);
    }
    REQUIRE(tr.has_y());
    const Point g = oracle.objective().gradient(tr.x(7));
    for (std::size_t i = 0; i < 2; ++i) CHECK(tr.y(7)[i] == tr.x(7)[i] - cfg.eta * g[i]);
  }
}

TEST_CASE("identical seeds give identical trajectories") {
  const SgOracle oracle(make_j1(112, 2), 0.2);
  RngStream a(99, 5), b(99, 5);
  const auto ta = gnd_run(oracle, Point{6.0}, {0.1, 0.2, 0.0, 300, false}, a);
  const auto tb = gnd_run(oracle, Point{6.0}, {0.1, 0.2, 0.0, 300, false}, b);
  CHECK(bitwise_equal(ta, tb));
}

TEST_CASE("golden trajectory for J1(7,1)") {
  const SgOracle oracle(make_j1(7, 1), 0.0);
  RngStream rng(1, 0);
  const auto tr = gnd_run(oracle, Point{8.0}, {0.4, 0.5, 0.0, 50, false}, rng);
  const std::string text = dump(tr);
  const std::string path = std::string(GND_TEST_DATA_DIR) + "/golden_j1_7_1.txt";
  if (std::getenv("GND_REGENERATE_GOLDEN")) {
    std::ofstream(path) << text;
    MESSAGE("regenerated " << path);
  }
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
  std::ostringstream golden;
  golden << in.rdbuf();
  CHECK(golden.str() == text);
}

TEST_CASE("gradient descent on J1(7,1) stays trapped away from the minimizer") {
  // x_1^- is a local minimum with curvature ~8.5 > 2/eta, so GD does not
  // settle on it; it keeps oscillating in a band around it instead.
  const auto f = make_j1(7, 1);
  const SgOracle oracle(f, 0.0);
  const auto pts = j1_stationary_points(7, 1, 1);
  REQUIRE(pts.size() == 3);
  REQUIRE(pts[1].local_min);
  for (double dx : {0.0, 1e-3, -1e-2}) {
    RngStream rng(1, 0);
    const auto tr = gd_run(oracle, Point{pts[1].x + dx}, 0.4, 100, rng);
    for (std::size_t t = 0; t <= 100; ++t) {
      CHECK(tr.x(t)[0] > 1.3);
      CHECK(tr.x(t)[0] < 2.3);
    }
  }
}

TEST_CASE("divergence is reported with the iteration") {
  const SgOracle oracle(make_quadratic(1.0, 1, {}), 0.0);
  RngStream rng(0, 0);
  try {
    gd_run(oracle, Point{1.0}, 3.0, 200, rng);
    FAIL("expected divergence");
  } catch (const DivergedError& e) {
    CHECK(e.iteration() > 0);
    CHECK(e.iteration() < 200);
  }
}

TEST_CASE("configs are validated") {
  CHECK_THROWS_AS((GndConfig{0.0, 0.0, 0.0, 1, false}.validate()), ParameterError);
  CHECK_THROWS_AS((GndConfig{0.1, -1.0, 0.0, 1, false}.validate()), ParameterError);
  DlGndConfig dl;
  dl.gamma = 1.0;
  CHECK_THROWS_AS(dl.validate(), ParameterError);
  dl.gamma = 0.5;
  dl.T2 = 0;
  CHECK_THROWS_AS(dl.validate(), ParameterError);
}

TEST_CASE("lower bound update") {
  CHECK(lower_bound_update(-20.0, 0.3, 2.0) == doctest::Approx(-13.4).epsilon(1e-15));
  CHECK(lower_bound_update(-1.0, 0.999, 0.0) == doctest::Approx(-0.001).epsilon(1e-12));
}

TEST_CASE("DL-GND trace invariants") {
  const SgOracle oracle(make_rastrigin(1, 1, 0.01, 2), 0.0);
  DlGndConfig cfg;
  cfg.eta = 1.5;
  cfg.s = 3.0;
  cfg.f_lb0 = -20.0;
  cfg.gamma = 0.03;
  cfg.T1 = 100;
  cfg.T2 = 10;
  cfg.N = 60;
  cfg.keep_inner = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream rng(seed, 0);
    const Point x0{rng.uniform(-20, 20), rng.uniform(-20, 20)};
    const auto tr = dlgnd_run(oracle, x0, cfg, rng);
    REQUIRE(tr.lb_history.size() == cfg.N + 1);
    REQUIRE(tr.min_values.size() == cfg.N + 1);
    REQUIRE(tr.inner.size() == cfg.N + 1);
    CHECK(tr.lb_history[0] == cfg.f_lb0);
    for (std::size_t v = 0; v < cfg.N; ++v) {
      CHECK(tr.min_values[v + 1] <= tr.min_values[v]);
      CHECK(tr.lb_history[v + 1] ==
            (1.0 - cfg.gamma) * tr.lb_history[v] + cfg.gamma * tr.min_values[v]);
      if (tr.min_values[v] >= tr.lb_history[v]) {
        CHECK(tr.lb_history[v + 1] >= tr.lb_history[v]);
        CHECK(tr.lb_history[v + 1] <= tr.min_values[v]);
      }
      // Each inner run starts from the previous best point.
      const auto start = tr.inner[v + 1].x(0);
      CHECK(start[0] == tr.min_points[v][0]);
      CHECK(start[1] == tr.min_points[v][1]);
    }
    for (std::size_t v = 0; v <= cfg.N; ++v)
      CHECK(tr.min_values[v] == oracle.objective().value(tr.min_points[v]));
  }
}

TEST_CASE("DL-GND divergence carries the outer loop") {
  const SgOracle oracle(make_quadratic(1.0, 1, {}), 0.0);
  DlGndConfig cfg;
  cfg.eta = 2.5;
  cfg.T1 = 200;
  cfg.T2 = 10;
  cfg.N = 3;
  RngStream rng(0, 0);
  try {
    dlgnd_run(oracle, Point{1.0}, cfg, rng);
    FAIL("expected divergence");
  } catch (const DivergedError& e) {
    REQUIRE(e.outer_loop());
    CHECK(*e.outer_loop() == 0);
  }
}
