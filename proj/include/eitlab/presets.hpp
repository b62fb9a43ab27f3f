// presets.hpp - named parameter sets for the published figure scenarios.
//
// Every preset uses Gamma_1 = Gamma_2 = 1e-4 and g sqrt(N) = 100 in units of
// Gamma_A. Probe-detuning presets sweep delta_p over [-10, 10] with 2001
// points, so every resonance at a multiple of 0.01 is sampled exactly.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eitlab/analysis.hpp"
#include "eitlab/params.hpp"

namespace eitlab {

struct Preset {
  std::string name;
  std::string command;  // natural subcommand: "sweep" or "vg"
  std::string description;
  MediumParams medium;
  ControlParams control;
  SweepGrid grid;
  double delta_p = 0.0;  // probe detuning for axes that do not set it
};

const std::vector<Preset>& presets();

/// nullptr if no preset has this name.
const Preset* find_preset(std::string_view name);

}  // namespace eitlab
