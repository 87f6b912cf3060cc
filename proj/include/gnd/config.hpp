#pragma once

// Plain-text experiment configuration: `[section]` headers followed by
// `key = value` lines. `#` starts a comment; string values may be quoted.
//
//   [experiment]  trials, seed, threshold, workers, T, init_low, init_high, sg_noise_r
//   [objective]   function = j1 | j2 | rastrigin | quadratic, plus n, k, eps, R,
//                 a, b, c, alpha, dim
//   [algorithm]   algorithm = gnd | dlgnd | gd, eta, s, f_lb, T, f_lb0, gamma,
//                 N, T1, T2, record_y, sg_noise_r
//
// init_low / init_high take one number (applied to every coordinate) or a
// comma-separated list with one entry per coordinate. For dlgnd a missing N
// is derived from T as ceil((T - T1) / T2).

#include <filesystem>
#include <string>
#include <string_view>

#include "gnd/experiments.hpp"

namespace gnd {

/// Throws ParameterError with the offending line number.
ExperimentConfig parse_config(std::string_view text);

/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Renders a config in the same format; parse_config(render_config(c))
/// reproduces c.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace gnd
