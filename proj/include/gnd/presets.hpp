#pragma once

// Named benchmark configurations reproducing the published experiment
// settings at desk scale.
//
//   j1-7-1       J1_{7,1},   x0 ~ U[-10,10]      GND eta .4 s .5 f_lb 0;   DL-GND f_lb0 -1, gamma .5, T1 40, T2 10
//   j1-112-2     J1_{112,2}, x0 ~ U[-10,10]      GND eta .1 s .2 f_lb 0;   DL-GND as above
//   rast2d-c05   Rastrigin c=.05, d=2,  U[-20,20]^2   GND eta 1.5 s 2.0;  DL-GND s 1.5, gamma .3
//   rast2d-c01   Rastrigin c=.01, d=2,  U[-20,20]^2   GND eta 1.5 s 4.0;  DL-GND s 3.0, gamma .03
//   rast10d-c05  Rastrigin c=.05, d=10, U[-20,20]^10  GND eta 1.5 s 1.5;  DL-GND s 1.4, gamma .025
//   rast10d-c03  Rastrigin c=.03, d=10, U[-20,20]^10  GND eta 1.5 s 2.5;  DL-GND s 1.5, gamma .0035
//
// Rastrigin DL-GND runs use f_lb0 = -20, T1 = 100, T2 = 10. GD uses the
// GND step size. Default iteration budgets: 300 (j1-7-1), 1000 (j1-112-2),
// 5000 (2-D Rastrigin), 20000 (10-D Rastrigin); j1 DL-GND defaults to
// N = 30 (340 iterations). Default trials: 2000.

#include <optional>
#include <string>
#include <vector>

#include "gnd/experiments.hpp"

namespace gnd {

const std::vector<std::string>& bench_names();

/// Throws ParameterError for an unknown name or algorithm. When T is given,
/// GND/GD run T iterations and DL-GND takes N = ceil((T - T1) / T2).
ExperimentConfig bench_preset(const std::string& name, const std::string& algo,
                              std::optional<std::size_t> T = std::nullopt);

}  // namespace gnd
