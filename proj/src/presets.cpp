#include "gnd/presets.hpp"

#include "gnd/error.hpp"

namespace gnd {

namespace {

struct Preset {
  const char* name;
  ObjectiveSpec objective;
  std::size_t dim;
  double box;
  double eta;
  double gnd_s;
  double dl_s;
  double dl_f_lb0;
  double dl_gamma;
  std::size_t dl_T1;
  std::size_t dl_T2;
  std::size_t default_T;
  std::size_t default_dl_N;
};

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"j1-7-1", {"j1", {{"n", 7}, {"k", 1}}}, 1, 10.0, 0.4, 0.5, 0.5, -1.0, 0.5, 40, 10, 300, 30},
      {"j1-112-2", {"j1", {{"n", 112}, {"k", 2}}}, 1, 10.0, 0.1, 0.2, 0.2, -1.0, 0.5, 40, 10, 1000,
       30},
      {"rast2d-c05", {"rastrigin", {{"c", 0.05}, {"dim", 2}}}, 2, 20.0, 1.5, 2.0, 1.5, -20.0, 0.3,
       100, 10, 5000, 490},
      {"rast2d-c01", {"rastrigin", {{"c", 0.01}, {"dim", 2}}}, 2, 20.0, 1.5, 4.0, 3.0, -20.0, 0.03,
       100, 10, 5000, 490},
      {"rast10d-c05", {"rastrigin", {{"c", 0.05}, {"dim", 10}}}, 10, 20.0, 1.5, 1.5, 1.4, -20.0,
       0.025, 100, 10, 20000, 1990},
      {"rast10d-c03", {"rastrigin", {{"c", 0.03}, {"dim", 10}}}, 10, 20.0, 1.5, 2.5, 1.5, -20.0,
       0.0035, 100, 10, 20000, 1990},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& bench_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : presets()) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

ExperimentConfig bench_preset(const std::string& name, const std::string& algo,
                              std::optional<std::size_t> T) {
  const Preset* preset = nullptr;
  for (const auto& p : presets())
    if (name == p.name) preset = &p;
  if (!preset) {
    std::string valid;
    for (const auto& n : bench_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ParameterError("unknown bench '" + name + "' (valid: " + valid + ")");
  }

  ExperimentConfig cfg;
  cfg.objective = preset->objective;
  cfg.init_box = {Point(preset->dim, -preset->box), Point(preset->dim, preset->box)};
  cfg.trials = 2000;
  const std::size_t iters = T.value_or(preset->default_T);
  if (algo == "gnd") {
    cfg.algorithm = GndConfig{preset->eta, preset->gnd_s, 0.0, iters, false};
  } else if (algo == "gd") {
    cfg.algorithm = GdConfig{preset->eta, iters};
  } else if (algo == "dlgnd") {
    DlGndConfig dl;
    dl.eta = preset->eta;
    dl.s = preset->dl_s;
    dl.f_lb0 = preset->dl_f_lb0;
    dl.gamma = preset->dl_gamma;
    dl.T1 = preset->dl_T1;
    dl.T2 = preset->dl_T2;
    dl.N = preset->default_dl_N;
    if (T) {
      if (*T <= dl.T1) throw ParameterError("dlgnd needs T > T1 = " + std::to_string(dl.T1));
      dl.N = (*T - dl.T1 + dl.T2 - 1) / dl.T2;
    }
    cfg.algorithm = dl;
  } else {
    throw ParameterError("unknown algorithm '" + algo + "' (expected gnd, dlgnd or gd)");
  }
  return cfg;
}

}  // namespace gnd
