#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "eitlab/dynamics.hpp"
#include "helpers.hpp"

using namespace eitlab;
using testing_support::split;

namespace {

Eigen::Matrix3cd to_eigen(const Mat3& a) {
  Eigen::Matrix3cd out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = a[i][j];
  return out;
}

double max_real_eigen(const Mat3& a) {
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(to_eigen(a), false);
  return solver.eigenvalues().real().maxCoeff();
}

double norm(const Vec3& x) {
  return std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
}

}  // namespace

TEST_CASE("drift matrix structure") {
  MediumParams m;
  SUBCASE("decoupled decay without controls") {
    const auto sys = drift_matrix(m, {0, 0, 0.5, -1.5}, 2.0, 0.0);
    CHECK(sys.matrix[0][0] == -cplx(1.0, 2.0));
    CHECK(sys.matrix[1][1] == -cplx(1e-4, 1.5));
    CHECK(sys.matrix[2][2] == -cplx(1e-4, 3.5));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) CHECK(sys.matrix[i][j] == cplx(0.0, 0.0));
  }
  SUBCASE("complex-symmetric with the probe source in the first row") {
    const auto sys = drift_matrix(m, {1.5, 0.3, 0.2, -0.4}, 0.7, {2.0, 1.0});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(sys.matrix[i][j] == sys.matrix[j][i]);
    CHECK(sys.matrix[0][1] == cplx(0.0, -1.5));
    CHECK(sys.matrix[0][2] == cplx(0.0, -0.3));
    CHECK(sys.source[0] == cplx(0.0, -1.0) * 100.0 * cplx(2.0, 1.0));
    CHECK(sys.source[1] == cplx(0.0, 0.0));
    CHECK(sys.source[2] == cplx(0.0, 0.0));
  }
}

TEST_CASE("eigenvalues against Eigen") {
  oracle::Draws draws(1000);
  for (int i = 0; i < 1000; ++i) {
    auto p = draws.next();
    p.gamma_1 = draws.uniform(1e-6, 2.0);
    p.gamma_2 = draws.uniform(1e-6, 2.0);
    auto [m, ctl] = split(p);
    const double dp = draws.uniform(-10, 10);
    const auto a = drift_matrix(m, ctl, dp, 0.0).matrix;

    const auto ours = eigenvalues(a);
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(to_eigen(a), false);
    const auto ref = solver.eigenvalues();
    // Each oracle eigenvalue has a match among ours.
    for (int k = 0; k < 3; ++k) {
      double best = 1e300;
      for (const auto& e : ours) best = std::min(best, std::abs(e - ref(k)));
      CHECK(best <= 1e-8 * std::max(1.0, std::abs(ref(k))));
    }
    // Re(eig) <= -min(Gamma) for the dissipative system.
    const double floor = std::min({m.gamma_a, m.gamma_1, m.gamma_2});
    CHECK(max_real_eigen(a) <= -floor + 1e-12);
    CHECK(-relaxation_rate(m, ctl, dp) <= -floor + 1e-9);
  }
}

TEST_CASE("steady state") {
  MediumParams m;
  SUBCASE("zero drive gives the zero state") {
    const auto s = steady_state(m, {1, 1, 0.5, -0.5}, 0.3, 0.0);
    CHECK(norm(s.components()) == 0.0);
  }
  SUBCASE("single field at resonance") {
    const auto s = steady_state(m, {1, 0, 0, 0}, 0.0, 1.0);
    CHECK(std::abs(s.mean_a_op.real()) < 1e-18);
    CHECK(s.mean_a_op.imag() == doctest::Approx(-100.0 / 10001.0).epsilon(1e-12));
  }
  SUBCASE("closed-form components on random draws") {
    oracle::Draws draws(42);
    for (int i = 0; i < 200; ++i) {
      auto [mm, ctl] = split(draws.next());
      const double dp = draws.uniform(-5, 5);
      const cplx drive(draws.uniform(-1, 1), draws.uniform(-1, 1));
      const auto s = steady_state(mm, ctl, dp, drive);
      const cplx a_ref = -cplx(0, 1) * mm.g_sqrt_n * drive / drive_denominator(mm, ctl, dp);
      CHECK(oracle::rel_err(s.mean_a_op, a_ref) < 1e-12);
      const cplx c1 = -cplx(0, 1) * ctl.omega_1 * s.mean_a_op / cplx(mm.gamma_1, dp - ctl.delta_1);
      const cplx c2 = -cplx(0, 1) * ctl.omega_2 * s.mean_a_op / cplx(mm.gamma_2, dp - ctl.delta_2);
      CHECK(std::abs(s.mean_c1 - c1) <= 1e-12 * std::max(std::abs(c1), 1e-300) + 1e-300);
      CHECK(std::abs(s.mean_c2 - c2) <= 1e-12 * std::max(std::abs(c2), 1e-300) + 1e-300);
      // residual of M x + b
      const auto sys = drift_matrix(mm, ctl, dp, drive);
      CHECK(norm(sys.rhs(s.components())) <= 1e-10 * (1.0 + norm(s.components())));
    }
  }
  SUBCASE("singular system is reported") {
    Mat3 zero{};
    CHECK_THROWS_AS(solve_linear(zero, {1.0, 0.0, 0.0}), NumericalError);
  }
}

TEST_CASE("evolve") {
  MediumParams m;

  SUBCASE("zero drive and zero state stay at zero") {
    EvolveOptions opts;
    opts.t_end = 10.0;
    const auto traj = evolve({}, m, {1, 1, 0, 0}, 0.0, opts);
    for (const auto& s : traj.samples) CHECK(norm(s.components()) == 0.0);
  }
  SUBCASE("scalar decay matches exp(-(Gamma_A + i dp) t)") {
    MeanFieldState s0;
    s0.mean_a_op = 1.0;
    EvolveOptions opts;
    opts.t_end = 5.0;
    const double dp = 1.7;
    const auto traj = evolve(s0, m, {}, dp, opts);
    const cplx ref = std::exp(-cplx(1.0, dp) * 5.0);
    CHECK(traj.final_state().time == 5.0);
    CHECK(std::abs(traj.final_state().mean_a_op - ref) < 1e-8);
  }
  SUBCASE("driven evolution converges to the algebraic steady state") {
    const ControlParams ctl{1.0, 0.6, 0.4, -0.8};
    MediumParams mm = m;
    mm.gamma_1 = mm.gamma_2 = 0.1;
    const double dp = 0.25;
    const double rate = relaxation_rate(mm, ctl, dp);
    MeanFieldState s0;
    s0.drive = 1.0;
    EvolveOptions opts;
    opts.t_end = 20.0 / rate;
    opts.output_interval = opts.t_end / 50;
    const auto traj = evolve(s0, mm, ctl, dp, opts);
    const auto ss = steady_state(mm, ctl, dp, 1.0);
    CHECK(oracle::rel_err(traj.final_state().mean_a_op, ss.mean_a_op) < 1e-6);
    CHECK(norm({traj.final_state().mean_a_op - ss.mean_a_op,
                traj.final_state().mean_c1 - ss.mean_c1,
                traj.final_state().mean_c2 - ss.mean_c2}) < 1e-6 * norm(ss.components()));
    CHECK(traj.samples.size() == 51);
  }
  SUBCASE("default horizon reaches the steady state at EIT resonance") {
    const ControlParams ctl{1, 1, 0, 0};
    MeanFieldState s0;
    s0.drive = 1.0;
    EvolveOptions opts;
    opts.t_end = convergence_horizon(m, ctl, 0.0);
    opts.output_interval = opts.t_end / 10;
    const auto traj = evolve(s0, m, ctl, 0.0, opts);
    const auto ss = steady_state(m, ctl, 0.0, 1.0);
    CHECK(oracle::rel_err(traj.final_state().mean_a_op, ss.mean_a_op) < 1e-6);
  }
  SUBCASE("strictly increasing time stamps and error bookkeeping") {
    MeanFieldState s0;
    s0.drive = {0.3, -0.2};
    EvolveOptions opts;
    opts.t_end = 40.0;
    opts.tol = 1e-7;
    const auto traj = evolve(s0, m, {2, 0.5, 1, -2}, 0.9, opts);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
      CHECK(traj.samples[i].time > traj.samples[i - 1].time);
    CHECK(traj.steps_accepted + 1 == traj.samples.size());
    CHECK(traj.max_error_estimate <= opts.tol);
  }
  SUBCASE("linearity: trajectories superpose") {
    const ControlParams ctl{1.2, 0.7, 0.5, -0.5};
    const double dp = 0.3;
    EvolveOptions opts;
    opts.t_end = 30.0;
    opts.output_interval = 1.0;
    opts.tol = 1e-10;
    MeanFieldState x{0.2, {0.0, 0.5}, -0.1, {1.0, 0.0}, 0.0};
    MeanFieldState y{{0.0, -0.3}, 0.1, 0.4, {0.0, 2.0}, 0.0};
    const cplx alpha(0.7, -0.4);
    MeanFieldState sum{alpha * x.mean_a_op + y.mean_a_op, alpha * x.mean_c1 + y.mean_c1,
                       alpha * x.mean_c2 + y.mean_c2, alpha * x.drive + y.drive, 0.0};
    const auto tx = evolve(x, m, ctl, dp, opts);
    const auto ty = evolve(y, m, ctl, dp, opts);
    const auto ts = evolve(sum, m, ctl, dp, opts);
    REQUIRE(tx.samples.size() == ts.samples.size());
    REQUIRE(ty.samples.size() == ts.samples.size());
    for (std::size_t i = 0; i < ts.samples.size(); ++i) {
      const Vec3 a = tx.samples[i].components(), b = ty.samples[i].components(),
                 s = ts.samples[i].components();
      const Vec3 diff{s[0] - alpha * a[0] - b[0], s[1] - alpha * a[1] - b[1],
                      s[2] - alpha * a[2] - b[2]};
      CHECK(norm(diff) < 1e-7 * (1.0 + norm(s)));
    }
  }
  SUBCASE("undriven state decays by 1e-6 within 50 / slowest rate") {
    const ControlParams ctl{1.0, 0.5, 0.3, -0.6};
    MediumParams mm = m;
    mm.gamma_1 = 0.05;
    mm.gamma_2 = 0.08;
    MeanFieldState s0{1.0, 0.5, {0.0, -0.5}, 0.0, 0.0};
    EvolveOptions opts;
    opts.t_end = 50.0 / relaxation_rate(mm, ctl, 0.2);
    opts.output_interval = opts.t_end / 20;
    const auto traj = evolve(s0, mm, ctl, 0.2, opts);
    CHECK(norm(traj.final_state().components()) < 1e-6 * norm(s0.components()));
  }
  SUBCASE("option validation and step underflow") {
    EvolveOptions bad;
    bad.t_end = 0.0;
    CHECK_THROWS_AS(evolve({}, m, {}, 0.0, bad), std::invalid_argument);
    bad.t_end = 1.0;
    bad.tol = 1e-2;
    CHECK_THROWS_AS(evolve({}, m, {}, 0.0, bad), std::invalid_argument);
    bad.tol = 1e-13;
    CHECK_THROWS_AS(evolve({}, m, {}, 0.0, bad), std::invalid_argument);

    // A huge coupling forces steps below the floor.
    MeanFieldState s0;
    s0.mean_a_op = 1.0;
    EvolveOptions opts;
    opts.t_end = 1.0;
    opts.tol = 1e-12;
    CHECK_THROWS_AS(evolve(s0, m, {1e15, 0, 0, 0}, 0.0, opts), NumericalError);
  }
}

TEST_CASE("susceptibility via dynamics") {
  SUBCASE("two-level value") {
    MediumParams m;
    const cplx chi = susceptibility_via_dynamics(m, {}, 0.0, bridge_for(m));
    CHECK(std::abs(chi.real()) < 1e-15);
    CHECK(chi.imag() == doctest::Approx(0.02).epsilon(1e-12));
  }
  SUBCASE("three-photon resonance at zero detuning is purely absorptive") {
    MediumParams m;
    const cplx chi = susceptibility_via_dynamics(m, {1, 2, 0, 0}, 0.0, bridge_for(m));
    CHECK(std::abs(chi.real()) <= 1e-12 * chi.imag());
  }
  SUBCASE("seeded random draws agree with the closed form") {
    oracle::Draws draws(2718);
    for (int i = 0; i < 100; ++i) {
      const auto p = draws.next();
      auto [m, ctl] = split(p);
      const double dp = draws.uniform(-5, 5);
      const cplx dyn = susceptibility_via_dynamics(m, ctl, dp, bridge_for(m, 1e5, 3.0, 0.2));
      CHECK(oracle::rel_err(dyn, oracle::chi(p, dp)) < 1e-9);
    }
  }
  SUBCASE("inconsistent bridge is rejected") {
    MediumParams m;
    PhysicalBridge b = bridge_for(m);
    b.dipole_moment *= 2;
    CHECK_THROWS_AS(susceptibility_via_dynamics(m, {}, 0.0, b), ValidationError);
  }
}
