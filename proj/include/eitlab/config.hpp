// config.hpp - JSON run configuration.
//
// Schema (every key optional; unknown keys are rejected):
//
//   {
//     "preset": "fig3a",                  // seeds medium/control/grid/delta_p
//     "medium":  {"gamma_a", "gamma_1", "gamma_2", "g_sqrt_n", "omega", "c"},
//     "control": {"omega_1", "omega_2", "delta_1", "delta_2"},
//     "grid":    {"axis", "start", "stop", "count", "scale"},
//     "delta_p": 0.0,
//     "threshold_fraction": 0.01,
//     "evolve":  {"drive": [re, im], "t_end": 100.0, "tol": 1e-9,
//                 "samples": 200, "initial": {"A": [re, im], "C1": ..., "C2": ...}},
//     "ramp":    {"knots": [{"t": 0, "omega_1": 100, "omega_2": 100}, ...],
//                 "delta_1": 0, "delta_2": 0, "samples": 101},
//     "output":  {"path": "out.csv", "format": "csv" | "json"}
//   }
//
// Complex values are written as [re, im]; a bare number is read as real.
// Explicit keys override the values a preset supplies.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eitlab/analysis.hpp"
#include "eitlab/params.hpp"

namespace eitlab {

struct EvolveBlock {
  std::complex<double> drive{1.0, 0.0};
  std::optional<double> t_end;  // default: convergence_horizon()
  double tol = 1e-9;
  std::size_t samples = 200;
  std::complex<double> initial_a{}, initial_c1{}, initial_c2{};

  bool operator==(const EvolveBlock&) const = default;
};

struct RampBlock {
  RampSchedule schedule = linear_ramp(100.0, 0.01);
  std::size_t samples = 101;

  bool operator==(const RampBlock&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputBlock {
  std::string path;  // empty: standard output
  OutputFormat format = OutputFormat::csv;

  bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
  std::optional<std::string> preset;
  MediumParams medium;
  ControlParams control;
  SweepGrid grid;
  double delta_p = 0.0;
  double threshold_fraction = kDefaultWindowThreshold;
  EvolveBlock evolve;
  RampBlock ramp;
  OutputBlock output;

  bool operator==(const RunConfig&) const = default;
};

/// All problems found while parsing, each naming its key path.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Parses and validates. Throws ConfigError listing every failure: syntax
/// errors carry line and column, schema errors name the key, invariant
/// breaches name the bound.
RunConfig parse_config(std::string_view text);

/// Configuration with only a preset applied. Throws ConfigError for an
/// unknown name.
RunConfig config_from_preset(std::string_view name);

/// Compact single-line JSON with every field written out; parse_config of the
/// result reproduces the same RunConfig.
std::string emit_config(const RunConfig& config);

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_format(std::string_view name);

}  // namespace eitlab
