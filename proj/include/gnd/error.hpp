#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gnd {

/// Invalid argument or configuration value. Maps to CLI exit code 1.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable or unwritable file. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A trajectory produced a non-finite or runaway value or gradient.
class DivergedError : public std::runtime_error {
 public:
  DivergedError(std::size_t iteration, const std::string& what,
                std::optional<std::size_t> outer_loop = std::nullopt);

  std::size_t iteration() const noexcept { return iteration_; }
  std::optional<std::size_t> outer_loop() const noexcept { return outer_loop_; }

 private:
  std::size_t iteration_;
  std::optional<std::size_t> outer_loop_;
};

/// A Monte-Carlo experiment aborted because one of its trials diverged.
/// Maps to CLI exit code 3.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(std::size_t trial, const DivergedError& cause);

  std::size_t trial() const noexcept { return trial_; }
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t trial_;
  std::size_t iteration_;
};

}  // namespace gnd
