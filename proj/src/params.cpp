#include "eitlab/params.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace eitlab {

namespace {

std::string join(const std::vector<std::string>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i];
  }
  return os.str();
}

std::string fmt_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_finite(std::vector<std::string>& out, const std::string& name,
                  double v) {
  if (!std::isfinite(v)) out.push_back(name + ": must be finite");
}

void check_positive(std::vector<std::string>& out, const std::string& name,
                    double v) {
  if (std::isfinite(v) && !(v > 0.0))
    out.push_back(name + ": must be > 0 (got " + fmt_value(v) + ")");
}

void check_non_negative(std::vector<std::string>& out, const std::string& name,
                        double v) {
  if (std::isfinite(v) && !(v >= 0.0))
    out.push_back(name + ": must be >= 0 (got " + fmt_value(v) + ")");
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}

std::vector<std::string> validate(const MediumParams& m,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  check_finite(out, p + "gamma_a", m.gamma_a);
  check_finite(out, p + "gamma_1", m.gamma_1);
  check_finite(out, p + "gamma_2", m.gamma_2);
  check_finite(out, p + "g_sqrt_n", m.g_sqrt_n);
  check_finite(out, p + "omega", m.omega);
  check_finite(out, p + "c", m.c);
  check_positive(out, p + "gamma_a", m.gamma_a);
  for (auto [name, v] : {std::pair{"gamma_1", m.gamma_1},
                         std::pair{"gamma_2", m.gamma_2}}) {
    if (std::isfinite(v) && !(v >= kMinMetastableDecay))
      out.push_back(p + name + ": must be >= the decay floor 1e-12 (got " +
                    fmt_value(v) + ")");
  }
  check_non_negative(out, p + "g_sqrt_n", m.g_sqrt_n);
  check_positive(out, p + "omega", m.omega);
  check_positive(out, p + "c", m.c);
  return out;
}

std::vector<std::string> validate(const ControlParams& ctl,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  check_finite(out, p + "omega_1", ctl.omega_1);
  check_finite(out, p + "omega_2", ctl.omega_2);
  check_finite(out, p + "delta_1", ctl.delta_1);
  check_finite(out, p + "delta_2", ctl.delta_2);
  check_non_negative(out, p + "omega_1", ctl.omega_1);
  check_non_negative(out, p + "omega_2", ctl.omega_2);
  return out;
}

std::vector<std::string> validate(const PhysicalBridge& b,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  check_finite(out, p + "dipole_moment", b.dipole_moment);
  check_finite(out, p + "mode_volume", b.mode_volume);
  check_finite(out, p + "vacuum_permittivity", b.vacuum_permittivity);
  check_finite(out, p + "atom_count", b.atom_count);
  // A vanishing dipole moment is allowed: it decouples the probe (g = 0).
  check_non_negative(out, p + "dipole_moment", b.dipole_moment);
  check_positive(out, p + "mode_volume", b.mode_volume);
  check_positive(out, p + "vacuum_permittivity", b.vacuum_permittivity);
  check_positive(out, p + "atom_count", b.atom_count);
  return out;
}

void require_valid(const MediumParams& m) {
  if (auto issues = validate(m); !issues.empty())
    throw ValidationError(std::move(issues));
}

void require_valid(const ControlParams& ctl) {
  if (auto issues = validate(ctl); !issues.empty())
    throw ValidationError(std::move(issues));
}

void require_valid(const PhysicalBridge& b) {
  if (auto issues = validate(b); !issues.empty())
    throw ValidationError(std::move(issues));
}

void swap_fields(MediumParams& m, ControlParams& ctl) {
  std::swap(m.gamma_1, m.gamma_2);
  std::swap(ctl.omega_1, ctl.omega_2);
  std::swap(ctl.delta_1, ctl.delta_2);
}

}  // namespace eitlab
