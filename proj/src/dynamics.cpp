#include "eitlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace eitlab {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

MeanFieldState MeanFieldState::from_components(const Vec3& x, cplx drive,
                                               double t) {
  return {x[0], x[1], x[2], drive, t};
}

Vec3 DriftSystem::rhs(const Vec3& x) const {
  Vec3 out = source;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] += matrix[i][j] * x[j];
  return out;
}

DriftSystem drift_matrix(const MediumParams& m, const ControlParams& ctl,
                         double delta_p, cplx drive) {
  return drift_matrix(m, ctl, delta_p, drive, m.g_sqrt_n);
}

DriftSystem drift_matrix(const MediumParams& m, const ControlParams& ctl,
                         double delta_p, cplx drive, double coupling) {
  DriftSystem s;
  auto& a = s.matrix;
  a[0][0] = -cplx(m.gamma_a, delta_p);
  a[0][1] = -kI * ctl.omega_1;
  a[0][2] = -kI * ctl.omega_2;
  a[1][0] = -kI * ctl.omega_1;
  a[1][1] = -cplx(m.gamma_1, delta_p - ctl.delta_1);
  a[1][2] = 0.0;
  a[2][0] = -kI * ctl.omega_2;
  a[2][1] = 0.0;
  a[2][2] = -cplx(m.gamma_2, delta_p - ctl.delta_2);
  s.source = {-kI * coupling * drive, 0.0, 0.0};
  return s;
}

std::array<cplx, 3> eigenvalues(const Mat3& a) {
  // lambda^3 + p2 lambda^2 + p1 lambda + p0
  const cplx trace = a[0][0] + a[1][1] + a[2][2];
  const cplx minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] +
                      a[0][0] * a[2][2] - a[0][2] * a[2][0] +
                      a[1][1] * a[2][2] - a[1][2] * a[2][1];
  const cplx det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  const cplx p2 = -trace, p1 = minors, p0 = -det;

  // Depressed cubic t^3 + p t + q with lambda = t - p2/3.
  const cplx shift = p2 / 3.0;
  const cplx p = p1 - p2 * p2 / 3.0;
  const cplx q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;

  std::array<cplx, 3> roots;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  // Pick the branch that avoids cancellation.
  cplx u3 = -q / 2.0 + disc;
  if (std::abs(-q / 2.0 - disc) > std::abs(u3)) u3 = -q / 2.0 - disc;
  if (std::abs(u3) == 0.0) {
    roots = {-shift, -shift, -shift};
  } else {
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);
    cplx wk = 1.0;
    for (auto& r : roots) {
      const cplx uk = u * wk;
      r = uk - p / (3.0 * uk) - shift;
      wk *= w;
    }
  }

  auto poly = [&](cplx x) { return ((x + p2) * x + p1) * x + p0; };
  auto dpoly = [&](cplx x) { return (3.0 * x + 2.0 * p2) * x + p1; };
  for (auto& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = dpoly(r);
      if (std::abs(d) == 0.0) break;
      const cplx next = r - poly(r) / d;
      if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
      if (std::abs(poly(next)) >= std::abs(poly(r))) break;
      r = next;
    }
  }
  return roots;
}

double relaxation_rate(const MediumParams& m, const ControlParams& ctl,
                       double delta_p) {
  const auto eig = eigenvalues(drift_matrix(m, ctl, delta_p, 0.0).matrix);
  double slowest = eig[0].real();
  for (const auto& e : eig) slowest = std::max(slowest, e.real());
  return -slowest;
}

double convergence_horizon(const MediumParams& m, const ControlParams& ctl,
                           double delta_p) {
  return 30.0 / relaxation_rate(m, ctl, delta_p);
}

Vec3 solve_linear(const Mat3& a_in, const Vec3& rhs) {
  Mat3 a = a_in;
  Vec3 b = rhs;
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (!(std::abs(a[pivot][col]) > 0.0))
      throw NumericalError("internal error: singular drift matrix");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < 3; ++r) {
      const cplx factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < 3; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  Vec3 x{};
  for (std::size_t i = 3; i-- > 0;) {
    cplx acc = b[i];
    for (std::size_t j = i + 1; j < 3; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

MeanFieldState steady_state(const MediumParams& m, const ControlParams& ctl,
                            double delta_p, cplx drive) {
  return steady_state(m, ctl, delta_p, drive, m.g_sqrt_n);
}

MeanFieldState steady_state(const MediumParams& m, const ControlParams& ctl,
                            double delta_p, cplx drive, double coupling) {
  const auto sys = drift_matrix(m, ctl, delta_p, drive, coupling);
  const Vec3 neg_b{-sys.source[0], -sys.source[1], -sys.source[2]};
  const Vec3 x = solve_linear(sys.matrix, neg_b);
  return MeanFieldState::from_components(x, drive, 0.0);
}

namespace {

// Dormand-Prince 5(4) tableau. The system is autonomous, so the nodes c_i
// are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// fifth-order minus embedded fourth-order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec3 axpy(const Vec3& y, double h, std::initializer_list<std::pair<double, const Vec3*>> terms) {
  Vec3 out = y;
  for (std::size_t i = 0; i < 3; ++i) {
    cplx acc = 0.0;
    for (const auto& [coef, k] : terms) acc += coef * (*k)[i];
    out[i] += h * acc;
  }
  return out;
}

}  // namespace

Trajectory evolve(const MeanFieldState& state0, const MediumParams& m,
                  const ControlParams& ctl, double delta_p,
                  const EvolveOptions& opts) {
  const double t0 = state0.time;
  if (!(opts.t_end > t0) || !std::isfinite(opts.t_end))
    throw std::invalid_argument("evolve: t_end must be finite and exceed the start time");
  if (!(opts.tol >= 1e-12 && opts.tol <= 1e-3))
    throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-3]");
  if (!(opts.output_interval >= 0.0))
    throw std::invalid_argument("evolve: output_interval must be >= 0");

  const auto sys = drift_matrix(m, ctl, delta_p, state0.drive);
  const double tol = opts.tol;

  Trajectory traj;
  traj.samples.push_back(state0);

  Vec3 y = state0.components();
  double t = t0;

  double mat_norm = 0.0;
  for (const auto& row : sys.matrix)
    mat_norm = std::max(mat_norm, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
  double h = std::min(opts.t_end - t0, 0.01 / std::max(1.0, mat_norm));

  std::size_t next_output = 1;
  auto output_time = [&](std::size_t k) {
    return std::min(opts.t_end, t0 + static_cast<double>(k) * opts.output_interval);
  };

  Vec3 k1 = sys.rhs(y);
  while (t < opts.t_end) {
    if (traj.steps_accepted + traj.steps_rejected >= opts.max_steps) {
      std::ostringstream os;
      os << "evolve: step budget of " << opts.max_steps << " exhausted at t=" << t;
      throw NumericalError(os.str());
    }
    double target = opts.t_end;
    if (opts.output_interval > 0.0) target = output_time(next_output);
    const bool lands = t + h >= target;
    const double step = lands ? target - t : h;
    if (step < kMinStepSize) {
      std::ostringstream os;
      os << "evolve: step size underflow (h=" << step << " < " << kMinStepSize
         << ") at t=" << t << "; the system is too stiff for the explicit integrator";
      throw NumericalError(os.str());
    }

    const Vec3 k2 = sys.rhs(axpy(y, step, {{a21, &k1}}));
    const Vec3 k3 = sys.rhs(axpy(y, step, {{a31, &k1}, {a32, &k2}}));
    const Vec3 k4 = sys.rhs(axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec3 k5 = sys.rhs(axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec3 k6 = sys.rhs(
        axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec3 y_new =
        axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec3 k7 = sys.rhs(y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const cplx e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
      const double scale =
          tol * (kErrorFloor + std::max(std::abs(y[i]), std::abs(y_new[i])));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      t = lands ? target : t + h;
      y = y_new;
      k1 = k7;
      ++traj.steps_accepted;
      traj.max_error_estimate = std::max(traj.max_error_estimate, err * tol);
      if (opts.output_interval > 0.0) {
        if (lands) {
          traj.samples.push_back(MeanFieldState::from_components(y, state0.drive, t));
          ++next_output;
        }
      } else {
        traj.samples.push_back(MeanFieldState::from_components(y, state0.drive, t));
      }
      if (t >= opts.t_end) break;
    } else {
      ++traj.steps_rejected;
    }
    const double factor =
        err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    // A step clipped to an output time does not shrink the proposal.
    h = (lands && err <= 1.0) ? std::max(h, step * factor) : step * factor;
  }
  return traj;
}

cplx susceptibility_via_dynamics(const MediumParams& m,
                                 const ControlParams& ctl, double delta_p,
                                 const PhysicalBridge& bridge) {
  require_valid(bridge);
  const double coupling =
      coupling_from_physical(bridge, m.omega) * std::sqrt(bridge.atom_count);
  if (std::abs(std::abs(coupling) - m.g_sqrt_n) >
      1e-9 * std::max(m.g_sqrt_n, 1e-300)) {
    std::ostringstream os;
    os.precision(17);
    os << "bridge: |g| sqrt(N) = " << std::abs(coupling)
       << " does not reproduce medium.g_sqrt_n = " << m.g_sqrt_n;
    throw ValidationError({os.str()});
  }
  const cplx drive = 1.0;
  const auto state = steady_state(m, ctl, delta_p, drive, coupling);
  const cplx field = field_amplitude(bridge, m.omega, drive);
  const cplx polarization = polarization_from_excitation(bridge, state.mean_a_op);
  return susceptibility_from_polarization(bridge, polarization, field);
}

}  // namespace eitlab
