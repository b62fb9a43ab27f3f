#include "eitlab/presets.hpp"

namespace eitlab {

namespace {

constexpr MediumParams kMedium{};  // Gamma_1,2 = 1e-4, g sqrt(N) = 100

constexpr SweepGrid kProbeGrid{SweepAxis::probe_detuning, -10.0, 10.0, 2001,
                               GridScale::linear};
constexpr SweepGrid kRabiSynced{SweepAxis::rabi_synced, 0.01, 200.0, 200,
                                GridScale::log};
constexpr SweepGrid kRabiOne{SweepAxis::rabi_1, 0.01, 200.0, 200,
                             GridScale::log};
constexpr SweepGrid kCommonDetuning{SweepAxis::common_detuning, -1.0, 1.0, 201,
                                    GridScale::linear};

Preset spectrum(std::string name, std::string description, ControlParams ctl) {
  return {std::move(name), "sweep", std::move(description), kMedium, ctl,
          kProbeGrid, 0.0};
}

std::vector<Preset> build() {
  std::vector<Preset> out;
  // Equal control detunings.
  out.push_back(spectrum("fig2a", "chi vs delta_p; Delta=0, Omega_1=1, Omega_2=0", {1, 0, 0, 0}));
  out.push_back(spectrum("fig2b", "chi vs delta_p; Delta=0, Omega_1=0, Omega_2=1", {0, 1, 0, 0}));
  out.push_back(spectrum("fig2c", "chi vs delta_p; Delta=0, Omega_1=Omega_2=1", {1, 1, 0, 0}));
  out.push_back(spectrum("fig2d", "chi vs delta_p; Delta=0, Omega_1=Omega_2=2", {2, 2, 0, 0}));
  out.push_back(spectrum("fig2e", "chi vs delta_p; Delta=+2, Omega_1=Omega_2=1", {1, 1, 2, 2}));
  out.push_back(spectrum("fig2f", "chi vs delta_p; Delta=-2, Omega_1=Omega_2=1", {1, 1, -2, -2}));
  // Different control detunings.
  out.push_back(spectrum("fig3a", "chi vs delta_p; Delta_1=1, Delta_2=-1, Omega_1=Omega_2=1", {1, 1, 1, -1}));
  out.push_back(spectrum("fig3b", "chi vs delta_p; Delta_1=1, Delta_2=-2, Omega_1=2, Omega_2=1/2", {2, 0.5, 1, -2}));
  out.push_back(spectrum("fig3c", "chi vs delta_p; Delta_1=0.5, Delta_2=-0.5, Omega_1=Omega_2=2", {2, 2, 0.5, -0.5}));
  out.push_back(spectrum("fig3d", "chi vs delta_p; Delta_1=0.05, Delta_2=-0.05, Omega_1=Omega_2=4", {4, 4, 0.05, -0.05}));
  // Group velocity at three-photon resonance.
  out.push_back({"fig4a_synced", "vg", "v_g vs Omega_1=Omega_2; delta_p=Delta=0",
                 kMedium, {0, 0, 0, 0}, kRabiSynced, 0.0});
  out.push_back({"fig4a_fixed", "vg", "v_g vs Omega_1 with Omega_2=100; delta_p=Delta=0",
                 kMedium, {0, 100, 0, 0}, kRabiOne, 0.0});
  out.push_back({"fig4b_strong", "vg", "v_g vs common detuning delta_p=Delta; Omega_1=Omega_2=50",
                 kMedium, {50, 50, 0, 0}, kCommonDetuning, 0.0});
  out.push_back({"fig4b_weak", "vg", "v_g vs common detuning delta_p=Delta; Omega_1=Omega_2=0.04",
                 kMedium, {0.04, 0.04, 0, 0}, kCommonDetuning, 0.0});
  // Two-photon (not three-photon) resonance.
  out.push_back({"fig5", "vg", "v_g vs Omega_1=Omega_2; delta_p=Delta_1=2, Delta_2=-2",
                 kMedium, {0, 0, 2, -2}, kRabiSynced, 2.0});
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace eitlab
