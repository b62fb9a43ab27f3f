// analysis.hpp - parameter sweeps, transparency windows, group-velocity
// curves and the quasi-static storage ramp.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eitlab/optics.hpp"
#include "eitlab/params.hpp"

namespace eitlab {

enum class SweepAxis {
  probe_detuning,   // delta_p
  rabi_1,           // Omega_1, Omega_2 held
  rabi_synced,      // Omega_1 = Omega_2
  common_detuning,  // delta_p = Delta_1 = Delta_2
};

enum class GridScale { linear, log };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);
std::string_view to_string(GridScale scale);
std::optional<GridScale> parse_scale(std::string_view name);

/// Column name used for the axis value in emitted tables.
std::string_view axis_column(SweepAxis axis);

struct SweepGrid {
  SweepAxis axis = SweepAxis::probe_detuning;
  double start = -10.0;
  double stop = 10.0;
  std::size_t count = 2001;
  GridScale scale = GridScale::linear;  // log: uniform in log10

  bool operator==(const SweepGrid&) const = default;

  double value(std::size_t i) const;
  std::vector<double> values() const;
};

std::vector<std::string> validate(const SweepGrid& grid,
                                  const std::string& prefix = "grid");

/// Operating point (control fields and probe detuning) at one axis value.
struct OperatingPoint {
  ControlParams control;
  double delta_p = 0.0;
};

OperatingPoint operating_point(const ControlParams& ctl, double delta_p,
                               SweepAxis axis, double x);

struct SweepRow {
  double axis_value = 0.0;
  ControlParams control;
  OpticalResponse response;
};

/// Worker count used when a caller passes threads = 0.
unsigned default_threads();

/// One response per grid point, ordered by axis value. delta_p is the probe
/// detuning for axes that do not set it. Results do not depend on threads.
std::vector<SweepRow> sweep_response(const MediumParams& m,
                                     const ControlParams& ctl,
                                     const SweepGrid& grid,
                                     double delta_p = 0.0,
                                     unsigned threads = 1);

struct Window {
  double center = 0.0;  // delta_p of minimum chi2
  double left_edge = 0.0;
  double right_edge = 0.0;
  double width = 0.0;
  double min_chi2 = 0.0;
  double slope_chi1_at_center = 0.0;
};

inline constexpr double kDefaultWindowThreshold = 0.01;
inline constexpr double kWindowEdgeResolution = 1e-6;

/// Maximal runs of a probe-detuning sweep with chi2 below
/// threshold_fraction * bare peak, edges refined by bisection. Runs touching
/// either end of the grid are not bounded by absorption and are skipped.
/// Throws std::invalid_argument on a table that is not a probe_detuning sweep
/// of at least 100 rows or a threshold outside (0, 1).
std::vector<Window> find_windows(const MediumParams& m, const ControlParams& ctl,
                                 const std::vector<SweepRow>& table,
                                 double threshold_fraction = kDefaultWindowThreshold);

struct VgRow {
  double axis_value = 0.0;
  GroupVelocity vg_eit;
  GroupVelocity vg_exact;
  bool eit_valid = false;
};

std::vector<VgRow> vg_curve(const MediumParams& m, const ControlParams& ctl,
                            const SweepGrid& grid, double delta_p = 0.0,
                            unsigned threads = 1);

struct RampKnot {
  double time = 0.0;
  double omega_1 = 0.0;
  double omega_2 = 0.0;

  bool operator==(const RampKnot&) const = default;
};

struct RampSchedule {
  std::vector<RampKnot> knots;
  double delta_1 = 0.0;
  double delta_2 = 0.0;

  bool operator==(const RampSchedule&) const = default;

  /// Piecewise-linear (Omega_1, Omega_2) at time t, clamped to the ends.
  std::pair<double, double> rabi_at(double t) const;
};

std::vector<std::string> validate(const RampSchedule& sched,
                                  const std::string& prefix = "ramp");

/// Store ramp Omega: from -> to on both fields over [0, duration].
RampSchedule linear_ramp(double from, double to, double duration = 1.0);

/// Time-mirrored schedule (retrieval from a storage ramp).
RampSchedule reversed(const RampSchedule& sched);

struct RampRow {
  double time = 0.0;
  double omega_1 = 0.0;
  double omega_2 = 0.0;
  GroupVelocity vg_eit;
};

/// Quasi-static v_g along the schedule at `samples` uniform times spanning the
/// knots (samples >= 2).
std::vector<RampRow> storage_ramp(const MediumParams& m,
                                  const RampSchedule& sched, double delta_p,
                                  std::size_t samples = 101);

}  // namespace eitlab
