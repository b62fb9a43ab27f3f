#include "eitlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace eitlab {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::probe_detuning: return "probe_detuning";
    case SweepAxis::rabi_1: return "rabi_1";
    case SweepAxis::rabi_synced: return "rabi_synced";
    case SweepAxis::common_detuning: return "common_detuning";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
  for (auto a : {SweepAxis::probe_detuning, SweepAxis::rabi_1,
                 SweepAxis::rabi_synced, SweepAxis::common_detuning})
    if (to_string(a) == name) return a;
  return std::nullopt;
}

std::string_view to_string(GridScale scale) {
  return scale == GridScale::linear ? "linear" : "log";
}

std::optional<GridScale> parse_scale(std::string_view name) {
  if (name == "linear") return GridScale::linear;
  if (name == "log") return GridScale::log;
  return std::nullopt;
}

std::string_view axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::probe_detuning: return "delta_p";
    case SweepAxis::rabi_1: return "omega_1";
    case SweepAxis::rabi_synced: return "omega_12";
    case SweepAxis::common_detuning: return "delta";
  }
  return "x";
}

double SweepGrid::value(std::size_t i) const {
  const double last = static_cast<double>(count - 1);
  const double k = static_cast<double>(i);
  if (i == 0) return start;
  if (i + 1 == count) return stop;
  if (scale == GridScale::log) {
    const double lo = std::log10(start), hi = std::log10(stop);
    return std::pow(10.0, (lo * (last - k) + hi * k) / last);
  }
  // Weighted form keeps grids symmetric about zero exactly symmetric.
  return (start * (last - k) + stop * k) / last;
}

std::vector<double> SweepGrid::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = value(i);
  return out;
}

std::vector<std::string> validate(const SweepGrid& grid,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  if (grid.count < 2) out.push_back(p + "count: must be >= 2");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop))
    out.push_back(p + "start/stop: must be finite");
  else if (!(grid.start < grid.stop))
    out.push_back(p + "start: must be < stop");
  if (grid.scale == GridScale::log && !(grid.start > 0.0))
    out.push_back(p + "start: must be > 0 for a log grid");
  const bool rabi = grid.axis == SweepAxis::rabi_1 ||
                    grid.axis == SweepAxis::rabi_synced;
  if (rabi && !(grid.start >= 0.0))
    out.push_back(p + "start: Rabi-frequency axes must be >= 0");
  return out;
}

OperatingPoint operating_point(const ControlParams& ctl, double delta_p,
                               SweepAxis axis, double x) {
  OperatingPoint op{ctl, delta_p};
  switch (axis) {
    case SweepAxis::probe_detuning:
      op.delta_p = x;
      break;
    case SweepAxis::rabi_1:
      op.control.omega_1 = x;
      break;
    case SweepAxis::rabi_synced:
      op.control.omega_1 = x;
      op.control.omega_2 = x;
      break;
    case SweepAxis::common_detuning:
      op.delta_p = x;
      op.control.delta_1 = x;
      op.control.delta_2 = x;
      break;
  }
  return op;
}

unsigned default_threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Fills out[i] = fn(i) for i in [0, n), splitting the index range into
// contiguous blocks, one per worker.
template <class T, class Fn>
void parallel_fill(std::vector<T>& out, unsigned threads, Fn fn) {
  const std::size_t n = out.size();
  unsigned workers = threads == 0 ? default_threads() : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * block, hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&out, &fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void require_grid(const SweepGrid& grid) {
  if (auto issues = validate(grid); !issues.empty())
    throw ValidationError(std::move(issues));
}

}  // namespace

std::vector<SweepRow> sweep_response(const MediumParams& m,
                                     const ControlParams& ctl,
                                     const SweepGrid& grid, double delta_p,
                                     unsigned threads) {
  require_valid(m);
  require_valid(ctl);
  require_grid(grid);
  std::vector<SweepRow> rows(grid.count);
  parallel_fill(rows, threads, [&](std::size_t i) {
    const double x = grid.value(i);
    const auto op = operating_point(ctl, delta_p, grid.axis, x);
    return SweepRow{x, op.control, evaluate_response(m, op.control, op.delta_p)};
  });
  return rows;
}

namespace {

double chi2_at(const MediumParams& m, const ControlParams& ctl, double x) {
  return susceptibility(m, ctl, x).imag();
}

// Bisects on chi2 - threshold between a point inside the window and one
// outside it; returns the crossing.
double refine_edge(const MediumParams& m, const ControlParams& ctl,
                   double threshold, double inside, double outside) {
  while (std::abs(outside - inside) > kWindowEdgeResolution) {
    const double mid = 0.5 * (inside + outside);
    if (chi2_at(m, ctl, mid) < threshold)
      inside = mid;
    else
      outside = mid;
  }
  return 0.5 * (inside + outside);
}

// Golden-section search for the minimum of chi2 on [lo, hi].
double refine_minimum(const MediumParams& m, const ControlParams& ctl,
                      double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = chi2_at(m, ctl, x1), f2 = chi2_at(m, ctl, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = chi2_at(m, ctl, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = chi2_at(m, ctl, x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

std::vector<Window> find_windows(const MediumParams& m, const ControlParams& ctl,
                                 const std::vector<SweepRow>& table,
                                 double threshold_fraction) {
  if (table.size() < 100)
    throw std::invalid_argument("find_windows: need a probe-detuning sweep of >= 100 points");
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
    throw std::invalid_argument("find_windows: threshold_fraction must lie in (0, 1)");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& row = table[i];
    if (row.response.delta_p != row.axis_value || !(row.control == ctl) ||
        (i > 0 && !(row.axis_value > table[i - 1].axis_value)))
      throw std::invalid_argument(
          "find_windows: table is not an increasing probe-detuning sweep of the given controls");
  }

  const double threshold = threshold_fraction * bare_peak_absorption(m);
  const std::size_t n = table.size();
  auto below = [&](std::size_t i) { return table[i].response.chi.imag() < threshold; };

  std::vector<Window> windows;
  std::size_t i = 0;
  while (i < n) {
    if (!below(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && below(j + 1)) ++j;
    if (i > 0 && j + 1 < n) {
      Window w;
      w.left_edge = refine_edge(m, ctl, threshold, table[i].axis_value,
                                table[i - 1].axis_value);
      w.right_edge = refine_edge(m, ctl, threshold, table[j].axis_value,
                                 table[j + 1].axis_value);

      std::size_t k = i;
      for (std::size_t q = i; q <= j; ++q)
        if (table[q].response.chi.imag() < table[k].response.chi.imag()) k = q;
      const double lo = std::max(w.left_edge, table[k - 1].axis_value);
      const double hi = std::min(w.right_edge, table[k + 1].axis_value);
      w.center = table[k].axis_value;
      w.min_chi2 = table[k].response.chi.imag();
      const double refined = refine_minimum(m, ctl, lo, hi);
      if (const double f = chi2_at(m, ctl, refined); f < w.min_chi2 &&
          refined > w.left_edge && refined < w.right_edge) {
        w.center = refined;
        w.min_chi2 = f;
      }
      w.width = w.right_edge - w.left_edge;
      w.slope_chi1_at_center = susceptibility_derivative(m, ctl, w.center).real();
      windows.push_back(w);
    }
    i = j + 1;
  }
  return windows;
}

std::vector<VgRow> vg_curve(const MediumParams& m, const ControlParams& ctl,
                            const SweepGrid& grid, double delta_p,
                            unsigned threads) {
  const auto rows = sweep_response(m, ctl, grid, delta_p, threads);
  std::vector<VgRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows)
    out.push_back({r.axis_value, r.response.vg_eit, r.response.vg_exact,
                   r.response.eit_valid});
  return out;
}

std::pair<double, double> RampSchedule::rabi_at(double t) const {
  if (t <= knots.front().time) return {knots.front().omega_1, knots.front().omega_2};
  if (t >= knots.back().time) return {knots.back().omega_1, knots.back().omega_2};
  const auto hi = std::upper_bound(
      knots.begin(), knots.end(), t,
      [](double v, const RampKnot& k) { return v < k.time; });
  const auto lo = hi - 1;
  const double s = (t - lo->time) / (hi->time - lo->time);
  return {lo->omega_1 + s * (hi->omega_1 - lo->omega_1),
          lo->omega_2 + s * (hi->omega_2 - lo->omega_2)};
}

std::vector<std::string> validate(const RampSchedule& sched,
                                  const std::string& prefix) {
  std::vector<std::string> out;
  const std::string p = prefix + ".";
  if (sched.knots.size() < 2) out.push_back(p + "knots: need at least 2 knots");
  for (std::size_t i = 0; i < sched.knots.size(); ++i) {
    const auto& k = sched.knots[i];
    const std::string kp = p + "knots[" + std::to_string(i) + "].";
    if (!std::isfinite(k.time)) out.push_back(kp + "t: must be finite");
    if (!std::isfinite(k.omega_1) || !(k.omega_1 >= 0.0))
      out.push_back(kp + "omega_1: must be finite and >= 0");
    if (!std::isfinite(k.omega_2) || !(k.omega_2 >= 0.0))
      out.push_back(kp + "omega_2: must be finite and >= 0");
    if (i > 0 && !(k.time > sched.knots[i - 1].time))
      out.push_back(kp + "t: knot times must be strictly increasing");
  }
  if (!std::isfinite(sched.delta_1) || !std::isfinite(sched.delta_2))
    out.push_back(p + "delta_1/delta_2: must be finite");
  return out;
}

RampSchedule linear_ramp(double from, double to, double duration) {
  return {{{0.0, from, from}, {duration, to, to}}, 0.0, 0.0};
}

RampSchedule reversed(const RampSchedule& sched) {
  RampSchedule out = sched;
  const double t0 = sched.knots.front().time, t1 = sched.knots.back().time;
  out.knots.clear();
  for (auto it = sched.knots.rbegin(); it != sched.knots.rend(); ++it)
    out.knots.push_back({t0 + t1 - it->time, it->omega_1, it->omega_2});
  return out;
}

std::vector<RampRow> storage_ramp(const MediumParams& m,
                                  const RampSchedule& sched, double delta_p,
                                  std::size_t samples) {
  require_valid(m);
  if (auto issues = validate(sched); !issues.empty())
    throw ValidationError(std::move(issues));
  if (samples < 2) throw std::invalid_argument("storage_ramp: samples must be >= 2");

  SweepGrid times{SweepAxis::probe_detuning, sched.knots.front().time,
                  sched.knots.back().time, samples, GridScale::linear};
  std::vector<RampRow> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = times.value(i);
    const auto [o1, o2] = sched.rabi_at(t);
    const ControlParams ctl{o1, o2, sched.delta_1, sched.delta_2};
    out.push_back({t, o1, o2, group_velocity_eit(m, ctl, delta_p)});
  }
  return out;
}

}  // namespace eitlab
