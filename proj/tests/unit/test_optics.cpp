#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "eitlab/dynamics.hpp"
#include "eitlab/optics.hpp"
#include "helpers.hpp"

using namespace eitlab;
using testing_support::split;

namespace {

MediumParams standard_medium() { return {}; }

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

}  // namespace

TEST_CASE("drive denominator reference values") {
  MediumParams m = standard_medium();

  SUBCASE("controls off leaves Gamma_A + i delta_p") {
    const cplx f = drive_denominator(m, {}, 3.0);
    CHECK(f.real() == 1.0);
    CHECK(f.imag() == 3.0);
  }
  SUBCASE("single field at two-photon resonance") {
    const cplx f = drive_denominator(m, {1, 0, 0, 0}, 0.0);
    CHECK(f.real() == doctest::Approx(10001.0).epsilon(1e-12));
    CHECK(f.imag() == 0.0);
  }
  SUBCASE("both fields at three-photon resonance") {
    const cplx f = drive_denominator(m, {1, 1, 2, 2}, 2.0);
    CHECK(f.real() == doctest::Approx(20001.0).epsilon(1e-12));
    CHECK(f.imag() == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("real part never drops below Gamma_A") {
    oracle::Draws draws(11);
    for (int i = 0; i < 500; ++i) {
      auto [mm, ctl] = split(draws.next());
      const double dp = draws.uniform(-10, 10);
      CHECK(drive_denominator(mm, ctl, dp).real() >= mm.gamma_a);
    }
  }
}

TEST_CASE("susceptibility reference values") {
  MediumParams m = standard_medium();

  CHECK(susceptibility_scale(m) == doctest::Approx(0.02).epsilon(1e-15));

  SUBCASE("bare two-level peak is K / Gamma_A") {
    const cplx chi = susceptibility(m, {}, 0.0);
    CHECK(chi.real() == 0.0);
    CHECK(chi.imag() == doctest::Approx(0.02).epsilon(1e-14));
  }
  SUBCASE("one control field suppresses the peak by 1/10001") {
    const cplx chi = susceptibility(m, {1, 0, 0, 0}, 0.0);
    CHECK(std::abs(chi.real()) < 1e-20);
    CHECK(chi.imag() == doctest::Approx(0.02 / 10001.0).epsilon(1e-12));
  }
  SUBCASE("symmetric three-photon resonance gives purely imaginary chi") {
    oracle::Draws draws(5);
    for (int i = 0; i < 50; ++i) {
      auto p = draws.next();
      p.delta_1 = p.delta_2 = 0.0;
      auto [mm, ctl] = split(p);
      CHECK(susceptibility(mm, ctl, 0.0).real() == 0.0);
    }
  }
  SUBCASE("matches the direct complex-division oracle") {
    oracle::Draws draws(99);
    for (int i = 0; i < 200; ++i) {
      const auto p = draws.next();
      auto [mm, ctl] = split(p);
      const double dp = draws.uniform(-10, 10);
      CHECK(oracle::rel_err(susceptibility(mm, ctl, dp), oracle::chi(p, dp)) < 1e-13);
    }
  }
  SUBCASE("normalized chi is omega-independent") {
    const ControlParams ctl{1, 0.5, 1, -2};
    MediumParams a = m, b = m;
    b.omega = 1e8;
    for (double dp : {-3.0, 0.2, 1.0, 7.5})
      CHECK(normalized_susceptibility(a, ctl, dp) == normalized_susceptibility(b, ctl, dp));
  }
}

TEST_CASE("susceptibility invariants") {
  MediumParams m = standard_medium();

  SUBCASE("passivity on random parameters") {
    oracle::Draws draws(2024);
    for (int i = 0; i < 200; ++i) {
      auto [mm, ctl] = split(draws.next());
      for (double dp : linspace(-20, 20, 101)) CHECK(susceptibility(mm, ctl, dp).imag() > 0.0);
    }
  }
  SUBCASE("two-level reduction") {
    for (double dp : linspace(-10, 10, 401)) {
      const cplx chi = susceptibility(m, {}, dp);
      const cplx ref = oracle::two_level_chi(0.02, 1.0, dp);
      CHECK(std::abs(chi.imag() - ref.imag()) <= 1e-12 * std::abs(ref.imag()));
      CHECK(std::abs(chi.real() - ref.real()) <= 1e-12 * std::abs(ref) );
    }
  }
  SUBCASE("symmetric-configuration parity") {
    const ControlParams ctl{1.3, 1.3, 0.7, -0.7};
    for (double dp : linspace(0, 10, 201)) {
      const cplx plus = susceptibility(m, ctl, dp), minus = susceptibility(m, ctl, -dp);
      CHECK(std::abs(plus.real() + minus.real()) <= 1e-12 * std::abs(plus));
      CHECK(std::abs(plus.imag() - minus.imag()) <= 1e-12 * std::abs(plus));
    }
  }
  SUBCASE("field swap is bit-identical") {
    oracle::Draws draws(77);
    for (int i = 0; i < 200; ++i) {
      auto [mm, ctl] = split(draws.next());
      MediumParams ms = mm;
      ControlParams cs = ctl;
      swap_fields(ms, cs);
      const double dp = draws.uniform(-10, 10);
      const cplx a = susceptibility(mm, ctl, dp), b = susceptibility(ms, cs, dp);
      CHECK(std::abs(a - b) <= 1e-15 * std::abs(a));
    }
  }
}

TEST_CASE("susceptibility derivative") {
  MediumParams m = standard_medium();

  SUBCASE("bare line center slope equals K") {
    const cplx d = susceptibility_derivative(m, {}, 0.0);
    CHECK(d.real() == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(std::abs(d.imag()) < 1e-18);
  }
  SUBCASE("ideal EIT slope tends to -K / sum Omega^2") {
    MediumParams ideal = m;
    ideal.gamma_1 = ideal.gamma_2 = 1e-12;
    for (double rabi : {0.5, 1.0, 3.0}) {
      const double s = 2 * rabi * rabi;
      const cplx d = susceptibility_derivative(ideal, {rabi, rabi, 0, 0}, 0.0);
      CHECK(d.real() == doctest::Approx(-0.02 / s).epsilon(1e-9));
    }
  }
  SUBCASE("central finite differences on random draws") {
    oracle::Draws draws(314);
    for (int i = 0; i < 100; ++i) {
      const auto p = draws.next();
      auto [mm, ctl] = split(p);
      for (double dp : linspace(-10, 10, 37)) {
        const double h = 1e-6 * std::max(1.0, std::abs(dp));
        const cplx fd = oracle::central_difference(
            [&](double x) { return oracle::chi(p, x); }, dp, h);
        CHECK(oracle::rel_err(susceptibility_derivative(mm, ctl, dp), fd) < 1e-6);
      }
    }
  }
}

TEST_CASE("refractive index") {
  CHECK(refractive_index(0.0) == cplx(1.0, 0.0));
  const cplx n = refractive_index({0.0, 0.02});
  CHECK(n.real() == doctest::Approx(1.00004999375131216).epsilon(1e-12));
  CHECK(n.imag() == doctest::Approx(0.00999950008747938).epsilon(1e-12));
  // (2 + i)^2 = 3 + 4i = 1 + chi
  const cplx n2 = refractive_index({2.0, 4.0});
  CHECK(n2.real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(n2.imag() == doctest::Approx(1.0).epsilon(1e-15));
  // principal branch for absorbing media
  oracle::Draws draws(8);
  for (int i = 0; i < 100; ++i)
    CHECK(refractive_index({draws.uniform(-5, 5), draws.uniform(1e-9, 5)}).real() > 0.0);
}

TEST_CASE("group velocity") {
  MediumParams ideal;
  ideal.gamma_1 = ideal.gamma_2 = 1e-8;

  SUBCASE("vacuum limit far from resonance") {
    MediumParams m;
    for (double dp : {1e5, -1e5}) {
      CHECK(group_velocity_exact(m, {}, dp).value == doctest::Approx(1.0).epsilon(1e-5));
      CHECK(group_velocity_eit(m, {}, dp).value == doctest::Approx(1.0).epsilon(1e-5));
    }
  }
  SUBCASE("ideal EIT law, both formulas") {
    for (double rabi : {0.04, 1.0, 10.0, 100.0}) {
      const ControlParams ctl{rabi, rabi, 0, 0};
      const double ref = oracle::ideal_eit_vg(100.0, rabi, rabi);
      CHECK(oracle::rel_err(group_velocity_eit(ideal, ctl, 0.0).value, ref) < 1e-3);
      CHECK(oracle::rel_err(group_velocity_exact(ideal, ctl, 0.0).value, ref) < 1e-3);
    }
    CHECK(group_velocity_exact(ideal, {100, 100, 0, 0}, 0.0).value ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-4));
    CHECK(group_velocity_exact(ideal, {0.04, 0.04, 0, 0}, 0.0).value ==
          doctest::Approx(3.2e-7).epsilon(1e-3));
  }
  SUBCASE("EIT form is exactly omega-independent") {
    const ControlParams ctl{1, 1, 0.3, 0.3};
    MediumParams a = ideal, b = ideal, c = ideal;
    a.omega = 1e4;
    b.omega = 1e6;
    c.omega = 1e8;
    for (double dp : {0.0, 0.3, 2.0}) {
      const double va = group_velocity_eit(a, ctl, dp).value;
      CHECK(std::abs(group_velocity_eit(b, ctl, dp).value - va) <= 1e-12 * std::abs(va));
      CHECK(std::abs(group_velocity_eit(c, ctl, dp).value - va) <= 1e-12 * std::abs(va));
    }
  }
  SUBCASE("diverged denominator is tagged, not divided") {
    const auto v = GroupVelocity::from_denominator(5e-13, 1.0);
    CHECK(v.diverged);
    CHECK(std::isinf(v.value));
    const auto w = GroupVelocity::from_denominator(-2.0, 1.0);
    CHECK_FALSE(w.diverged);
    CHECK(w.value == -0.5);
  }
  SUBCASE("EIT flag tracks one percent of the bare peak") {
    MediumParams m;
    CHECK_FALSE(evaluate_response(m, {}, 0.0).eit_valid);
    CHECK(evaluate_response(m, {1, 1, 0, 0}, 0.0).eit_valid);
    CHECK(eit_valid(m, {0.0, 0.0099 * 0.02}));
    CHECK_FALSE(eit_valid(m, {0.0, 0.0101 * 0.02}));
  }
}

TEST_CASE("evaluate_response bundles consistent values") {
  MediumParams m;
  const ControlParams ctl{2, 0.5, 1, -2};
  const auto r = evaluate_response(m, ctl, 0.97);
  CHECK(r.delta_p == 0.97);
  CHECK(r.chi == susceptibility(m, ctl, 0.97));
  CHECK(std::abs(r.chi_norm * susceptibility_scale(m) - r.chi) <= 1e-15 * std::abs(r.chi));
  CHECK(r.n == refractive_index(r.chi));
  CHECK(r.dchi_ddelta == susceptibility_derivative(m, ctl, 0.97));
  CHECK(r.vg_eit.value == group_velocity_eit(m, ctl, 0.97).value);
  CHECK(r.vg_exact.value == group_velocity_exact(m, ctl, 0.97).value);
}

TEST_CASE("physical bridge") {
  SUBCASE("coupling") {
    CHECK(coupling_from_physical({0.0, 1, 1, 1}, 2.0) == 0.0);
    CHECK(coupling_from_physical({1.0, 1, 1, 1}, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(coupling_from_physical({2.0, 1, 1, 1}, 8.0) == doctest::Approx(-4.0).epsilon(1e-15));
    const PhysicalBridge b{0.7, 2.5, 3.1, 40};
    const double g = coupling_from_physical(b, 5.0);
    CHECK(g * g == doctest::Approx(0.49 * 5.0 / (2 * 2.5 * 3.1)).epsilon(1e-14));
  }
  SUBCASE("polarization") {
    CHECK(polarization_from_excitation({1, 2, 1, 4}, 0.0) == cplx(0.0, 0.0));
    const cplx p = polarization_from_excitation({1, 2, 1, 4}, {1.0, 0.0});
    CHECK(p.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.imag() == 0.0);
  }
  SUBCASE("bridge_for reproduces the collective coupling") {
    MediumParams m;
    const auto b = bridge_for(m, 4e6, 2.0, 0.5);
    const double gs = coupling_from_physical(b, m.omega) * std::sqrt(b.atom_count);
    CHECK(gs == doctest::Approx(-100.0).epsilon(1e-13));
  }
  SUBCASE("steady state through polarization reproduces chi") {
    oracle::Draws draws(123);
    for (int i = 0; i < 50; ++i) {
      auto [m, ctl] = split(draws.next());
      const double dp = draws.uniform(-5, 5);
      const auto b = bridge_for(m, draws.uniform(1e3, 1e9), draws.uniform(0.1, 10),
                                draws.uniform(0.1, 10));
      const double gs = coupling_from_physical(b, m.omega) * std::sqrt(b.atom_count);
      const auto st = steady_state(m, ctl, dp, 1.0, gs);
      const cplx chi = susceptibility_from_polarization(
          b, polarization_from_excitation(b, st.mean_a_op), field_amplitude(b, m.omega, 1.0));
      CHECK(oracle::rel_err(chi, susceptibility(m, ctl, dp)) < 1e-9);
    }
  }
}
