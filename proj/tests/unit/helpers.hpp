#pragma once

#include <utility>

#include "eitlab/params.hpp"
#include "oracles.hpp"

namespace testing_support {

inline std::pair<eitlab::MediumParams, eitlab::ControlParams> split(const oracle::Point& p) {
  eitlab::MediumParams m;
  m.gamma_a = p.gamma_a;
  m.gamma_1 = p.gamma_1;
  m.gamma_2 = p.gamma_2;
  m.g_sqrt_n = p.g_sqrt_n;
  m.omega = p.omega;
  eitlab::ControlParams c{p.omega_1, p.omega_2, p.delta_1, p.delta_2};
  return {m, c};
}

}  // namespace testing_support
