// optics.hpp - closed-form probe response of the "3+1"-level medium.
//
// The drive denominator
//
//   F(dp) = (Gamma_A + i dp) + Omega_1^2 / (Gamma_1 + i(dp - Delta_1))
//                            + Omega_2^2 / (Gamma_2 + i(dp - Delta_2))
//
// fixes the steady-state ratio between the probe amplitude and the collective
// excitation, and the susceptibility follows as chi = 2 i g^2 N / (omega F).
// All functions here are pure and assume validated parameters.

#pragma once

#include <complex>
#include <limits>

#include "eitlab/params.hpp"

namespace eitlab {

using cplx = std::complex<double>;

/// Group velocity in units of c. A denominator within kDivergenceGuard of
/// zero is reported as diverged with value = +inf rather than divided out.
struct GroupVelocity {
  double value = 0.0;
  bool diverged = false;

  static GroupVelocity from_denominator(double denominator, double c);
};

inline constexpr double kDivergenceGuard = 1e-12;

/// Fraction of the control-off peak absorption below which the EIT-form
/// group velocity is flagged as trustworthy.
inline constexpr double kEitValidityFraction = 0.01;

struct OpticalResponse {
  double delta_p = 0.0;
  cplx chi;          // raw susceptibility, scales as 1/omega
  cplx chi_norm;     // chi * omega / (2 g^2 N), omega-independent
  cplx n;            // principal sqrt(1 + chi)
  cplx dchi_ddelta;  // d chi / d delta_p
  GroupVelocity vg_exact;
  GroupVelocity vg_eit;
  bool eit_valid = false;
};

/// Prefactor K = 2 (g sqrt(N))^2 / omega shared by every chi expression.
double susceptibility_scale(const MediumParams& m);

/// Control-off resonant absorption K / Gamma_A.
double bare_peak_absorption(const MediumParams& m);

cplx drive_denominator(const MediumParams& m, const ControlParams& ctl,
                       double delta_p);

/// dF/d(delta_p).
cplx drive_denominator_derivative(const MediumParams& m,
                                  const ControlParams& ctl, double delta_p);

/// i / F: the susceptibility divided by K.
cplx normalized_susceptibility(const MediumParams& m, const ControlParams& ctl,
                               double delta_p);

cplx susceptibility(const MediumParams& m, const ControlParams& ctl,
                    double delta_p);

cplx susceptibility_derivative(const MediumParams& m, const ControlParams& ctl,
                               double delta_p);

cplx refractive_index(cplx chi);

/// c / (n1 + omega dn1/domega), with d/domega = -d/d(delta_p).
GroupVelocity group_velocity_exact(const MediumParams& m,
                                   const ControlParams& ctl, double delta_p);

/// c / (1 - (omega/2) d chi1 / d(delta_p)). Only meaningful inside a
/// transparency window; see eit_valid().
GroupVelocity group_velocity_eit(const MediumParams& m,
                                 const ControlParams& ctl, double delta_p);

/// True when chi2 lies below kEitValidityFraction of the bare peak.
bool eit_valid(const MediumParams& m, cplx chi);

/// Everything above, evaluated once at a single probe detuning.
OpticalResponse evaluate_response(const MediumParams& m,
                                  const ControlParams& ctl, double delta_p);

// Physical-unit bridge ------------------------------------------------------

/// Single-photon coupling g = -mu sqrt(omega / (2 V eps0)).
double coupling_from_physical(const PhysicalBridge& b, double omega);

/// Field amplitude per photon-operator mean: <eps> = sqrt(omega / (2 V eps0)) <a>.
cplx field_amplitude(const PhysicalBridge& b, double omega, cplx mean_a);

/// <p> = mu sqrt(N) <A> / V.
cplx polarization_from_excitation(const PhysicalBridge& b, cplx mean_A);

/// chi = <p> / (eps0 <eps>).
cplx susceptibility_from_polarization(const PhysicalBridge& b, cplx polarization,
                                      cplx field);

/// A bridge whose |g| sqrt(N) reproduces m.g_sqrt_n at the medium's omega.
PhysicalBridge bridge_for(const MediumParams& m, double atom_count = 1e6,
                          double mode_volume = 1.0,
                          double vacuum_permittivity = 1.0);

}  // namespace eitlab
