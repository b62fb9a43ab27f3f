// dynamics.hpp - mean-field equations of the collective excitations.
//
// With the control-field phases removed (C_k = C~_k exp[i(dp - Delta_k)t])
// and the zero-mean noise operators dropped, the expectation values obey
//
//   d<A>/dt   = -(Gamma_A + i dp)<A> - i g sqrt(N) <a> - i(W1 <C~1> + W2 <C~2>)
//   d<C~k>/dt = -(Gamma_k + i(dp - Delta_k))<C~k> - i Wk <A>
//
// a linear system x' = M x + b with constant coefficients. Its algebraic
// fixed point is the steady state behind the closed-form susceptibility; its
// time integration is the independent check of that fixed point.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "eitlab/optics.hpp"
#include "eitlab/params.hpp"

namespace eitlab {

using Vec3 = std::array<cplx, 3>;
using Mat3 = std::array<Vec3, 3>;

struct MeanFieldState {
  cplx mean_a_op;  // <A>
  cplx mean_c1;    // <C~1>
  cplx mean_c2;    // <C~2>
  cplx drive;      // <a>, held constant
  double time = 0.0;

  Vec3 components() const { return {mean_a_op, mean_c1, mean_c2}; }
  static MeanFieldState from_components(const Vec3& x, cplx drive, double t);
};

struct DriftSystem {
  Mat3 matrix{};  // M
  Vec3 source{};  // b = (-i g sqrt(N) <a>, 0, 0)

  Vec3 rhs(const Vec3& x) const;
};

DriftSystem drift_matrix(const MediumParams& m, const ControlParams& ctl,
                         double delta_p, cplx drive);

/// Same, with an explicit (possibly negative) collective coupling g sqrt(N)
/// in place of m.g_sqrt_n.
DriftSystem drift_matrix(const MediumParams& m, const ControlParams& ctl,
                         double delta_p, cplx drive, double coupling);

/// The three eigenvalues of a 3x3 complex matrix, from its characteristic
/// cubic with Newton polishing. Unordered.
std::array<cplx, 3> eigenvalues(const Mat3& a);

/// Slowest decay rate of the homogeneous system, -max Re(eig M).
double relaxation_rate(const MediumParams& m, const ControlParams& ctl,
                       double delta_p);

/// Default integration horizon when the steady state is wanted:
/// 30 / relaxation_rate.
double convergence_horizon(const MediumParams& m, const ControlParams& ctl,
                           double delta_p);

/// Solves M x = -b by Gaussian elimination with partial pivoting.
/// Throws NumericalError if M is singular.
Vec3 solve_linear(const Mat3& a, const Vec3& rhs);

MeanFieldState steady_state(const MediumParams& m, const ControlParams& ctl,
                            double delta_p, cplx drive);

MeanFieldState steady_state(const MediumParams& m, const ControlParams& ctl,
                            double delta_p, cplx drive, double coupling);

struct EvolveOptions {
  double t_end = 1.0;             // absolute end time
  double tol = 1e-9;              // local error bound, relative per component
  double output_interval = 0.0;   // 0: record every accepted step
  std::size_t max_steps = 50'000'000;
};

inline constexpr double kMinStepSize = 1e-14;

// Absolute floor of the per-component error scale tol * (floor + |y_i|).
// Kept far below unity: near EIT resonance <A> is many orders smaller than
// the coherences and is recovered from their near-cancellation.
inline constexpr double kErrorFloor = 1e-12;

struct Trajectory {
  std::vector<MeanFieldState> samples;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
  double max_error_estimate = 0.0;  // largest accepted local error, in tol units

  const MeanFieldState& final_state() const { return samples.back(); }
};

/// Adaptive Dormand-Prince 5(4) integration from state0.time to opts.t_end.
/// Throws std::invalid_argument on bad options and NumericalError when the
/// step size underflows kMinStepSize or max_steps is exhausted.
Trajectory evolve(const MeanFieldState& state0, const MediumParams& m,
                  const ControlParams& ctl, double delta_p,
                  const EvolveOptions& opts);

/// chi from the dynamical steady state, mapped through the polarization and
/// field definitions of the bridge. The bridge must reproduce m.g_sqrt_n.
cplx susceptibility_via_dynamics(const MediumParams& m,
                                 const ControlParams& ctl, double delta_p,
                                 const PhysicalBridge& bridge);

}  // namespace eitlab
