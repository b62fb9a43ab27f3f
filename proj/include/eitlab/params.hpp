// params.hpp - medium, control-field and physical-unit parameter sets.
//
// Every rate and detuning is expressed in units of the excited-state decay
// rate Gamma_A, and velocities in units of the vacuum light speed c.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eitlab {

/// Smallest admissible metastable-state decay rate. Removes the pole of
/// Gamma_k + i(delta_p - delta_k) at two-photon resonance.
inline constexpr double kMinMetastableDecay = 1e-12;

struct MediumParams {
  double gamma_a = 1.0;   // |a> decay, the rate unit
  double gamma_1 = 1e-4;  // |1> coherence decay
  double gamma_2 = 1e-4;  // |2> coherence decay
  double g_sqrt_n = 100.0;  // collective probe coupling g*sqrt(N)
  double omega = 1e6;     // probe carrier frequency
  double c = 1.0;         // vacuum light speed

  bool operator==(const MediumParams&) const = default;
};

struct ControlParams {
  double omega_1 = 0.0;  // Rabi frequency of control field 1
  double omega_2 = 0.0;  // Rabi frequency of control field 2
  double delta_1 = 0.0;  // detuning of control field 1
  double delta_2 = 0.0;  // detuning of control field 2

  bool operator==(const ControlParams&) const = default;
};

/// Physical quantities linking the normalized model to the probe field and
/// medium polarization. Any consistent unit system works.
struct PhysicalBridge {
  double dipole_moment = 1.0;
  double mode_volume = 1.0;
  double vacuum_permittivity = 1.0;
  double atom_count = 1.0;
};

/// Thrown when one or more parameter invariants are violated. Carries every
/// violation found, not just the first.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Thrown on numerical aborts: integrator step underflow, singular solves.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each validator returns the list of violated invariants, prefixed with the
// field path (e.g. "medium.gamma_1: ...").
std::vector<std::string> validate(const MediumParams& m,
                                  const std::string& prefix = "medium");
std::vector<std::string> validate(const ControlParams& ctl,
                                  const std::string& prefix = "control");
std::vector<std::string> validate(const PhysicalBridge& b,
                                  const std::string& prefix = "bridge");

void require_valid(const MediumParams& m);
void require_valid(const ControlParams& ctl);
void require_valid(const PhysicalBridge& b);

/// Swaps the roles of the two control fields, including the metastable decay
/// rates carried by the medium.
void swap_fields(MediumParams& m, ControlParams& ctl);

}  // namespace eitlab
