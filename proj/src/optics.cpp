#include "eitlab/optics.hpp"

#include <cmath>

namespace eitlab {

namespace {

constexpr cplx kI{0.0, 1.0};

// Omega_k^2 / (Gamma_k + i(dp - Delta_k)) for one control field.
cplx control_term(double rabi, double gamma, double detuning_offset) {
  return rabi * rabi / cplx(gamma, detuning_offset);
}

cplx control_term_derivative(double rabi, double gamma,
                             double detuning_offset) {
  const cplx d(gamma, detuning_offset);
  return -kI * (rabi * rabi) / (d * d);
}

}  // namespace

GroupVelocity GroupVelocity::from_denominator(double denominator, double c) {
  if (!(std::abs(denominator) >= kDivergenceGuard))
    return {std::numeric_limits<double>::infinity(), true};
  return {c / denominator, false};
}

double susceptibility_scale(const MediumParams& m) {
  return 2.0 * m.g_sqrt_n * m.g_sqrt_n / m.omega;
}

double bare_peak_absorption(const MediumParams& m) {
  return susceptibility_scale(m) / m.gamma_a;
}

cplx drive_denominator(const MediumParams& m, const ControlParams& ctl,
                       double delta_p) {
  // The two control terms are summed first so that exchanging the fields
  // gives a bit-identical result.
  const cplx controls =
      control_term(ctl.omega_1, m.gamma_1, delta_p - ctl.delta_1) +
      control_term(ctl.omega_2, m.gamma_2, delta_p - ctl.delta_2);
  return cplx(m.gamma_a, delta_p) + controls;
}

cplx drive_denominator_derivative(const MediumParams& m,
                                  const ControlParams& ctl, double delta_p) {
  const cplx controls =
      control_term_derivative(ctl.omega_1, m.gamma_1, delta_p - ctl.delta_1) +
      control_term_derivative(ctl.omega_2, m.gamma_2, delta_p - ctl.delta_2);
  return kI + controls;
}

cplx normalized_susceptibility(const MediumParams& m, const ControlParams& ctl,
                               double delta_p) {
  const cplx f = drive_denominator(m, ctl, delta_p);
  const double mag2 = std::norm(f);
  return {f.imag() / mag2, f.real() / mag2};
}

cplx susceptibility(const MediumParams& m, const ControlParams& ctl,
                    double delta_p) {
  return susceptibility_scale(m) * normalized_susceptibility(m, ctl, delta_p);
}

namespace {

// d(i/F)/d(delta_p) = -(i/F) F' / F
cplx normalized_derivative(const MediumParams& m, const ControlParams& ctl,
                           double delta_p) {
  const cplx f = drive_denominator(m, ctl, delta_p);
  const cplx df = drive_denominator_derivative(m, ctl, delta_p);
  const cplx u = normalized_susceptibility(m, ctl, delta_p);
  return -u * (df / f);
}

}  // namespace

cplx susceptibility_derivative(const MediumParams& m, const ControlParams& ctl,
                               double delta_p) {
  return susceptibility_scale(m) * normalized_derivative(m, ctl, delta_p);
}

cplx refractive_index(cplx chi) { return std::sqrt(1.0 + chi); }

GroupVelocity group_velocity_exact(const MediumParams& m,
                                   const ControlParams& ctl, double delta_p) {
  const cplx n = refractive_index(susceptibility(m, ctl, delta_p));
  // omega dn/d(dp) = omega K u' / (2n) = (g sqrt N)^2 u' / n
  const double g2n = m.g_sqrt_n * m.g_sqrt_n;
  const cplx omega_dn = g2n * normalized_derivative(m, ctl, delta_p) / n;
  return GroupVelocity::from_denominator(n.real() - omega_dn.real(), m.c);
}

GroupVelocity group_velocity_eit(const MediumParams& m,
                                 const ControlParams& ctl, double delta_p) {
  // (omega/2) d chi1/d(dp) = (g sqrt N)^2 Re(u'); omega cancels exactly.
  const double g2n = m.g_sqrt_n * m.g_sqrt_n;
  const double slope = normalized_derivative(m, ctl, delta_p).real();
  return GroupVelocity::from_denominator(1.0 - g2n * slope, m.c);
}

bool eit_valid(const MediumParams& m, cplx chi) {
  return chi.imag() < kEitValidityFraction * bare_peak_absorption(m);
}

OpticalResponse evaluate_response(const MediumParams& m,
                                  const ControlParams& ctl, double delta_p) {
  OpticalResponse r;
  r.delta_p = delta_p;
  r.chi_norm = normalized_susceptibility(m, ctl, delta_p);
  r.chi = susceptibility_scale(m) * r.chi_norm;
  r.n = refractive_index(r.chi);
  r.dchi_ddelta = susceptibility_derivative(m, ctl, delta_p);
  r.vg_exact = group_velocity_exact(m, ctl, delta_p);
  r.vg_eit = group_velocity_eit(m, ctl, delta_p);
  r.eit_valid = eit_valid(m, r.chi);
  return r;
}

double coupling_from_physical(const PhysicalBridge& b, double omega) {
  return -b.dipole_moment *
         std::sqrt(omega / (2.0 * b.mode_volume * b.vacuum_permittivity));
}

cplx field_amplitude(const PhysicalBridge& b, double omega, cplx mean_a) {
  return std::sqrt(omega / (2.0 * b.mode_volume * b.vacuum_permittivity)) *
         mean_a;
}

cplx polarization_from_excitation(const PhysicalBridge& b, cplx mean_A) {
  return b.dipole_moment * std::sqrt(b.atom_count) * mean_A / b.mode_volume;
}

cplx susceptibility_from_polarization(const PhysicalBridge& b, cplx polarization,
                                      cplx field) {
  return polarization / (b.vacuum_permittivity * field);
}

PhysicalBridge bridge_for(const MediumParams& m, double atom_count,
                          double mode_volume, double vacuum_permittivity) {
  PhysicalBridge b;
  b.atom_count = atom_count;
  b.mode_volume = mode_volume;
  b.vacuum_permittivity = vacuum_permittivity;
  const double field_per_photon =
      std::sqrt(m.omega / (2.0 * mode_volume * vacuum_permittivity));
  b.dipole_moment = m.g_sqrt_n / (std::sqrt(atom_count) * field_per_photon);
  return b;
}

}  // namespace eitlab
