#include "eitlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "eitlab/presets.hpp"
#include "json.hpp"

namespace eitlab {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i];
  }
  return os.str();
}

// Reads typed values out of a JSON object, collecting every problem rather
// than stopping at the first.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  // Checks that obj is an object with no keys outside `allowed`.
  bool object(const json& obj, const std::string& path,
              std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) {
      issues_.push_back(path + ": expected an object");
      return false;
    }
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        issues_.push_back(join_path(path, key) + ": unknown key");
    }
    return true;
  }

  void number(const json& obj, const std::string& path, std::string_view key,
              double& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number()) {
      issues_.push_back(join_path(path, key) + ": expected a number");
      return;
    }
    out = it->get<double>();
  }

  void optional_number(const json& obj, const std::string& path,
                       std::string_view key, std::optional<double>& out) {
    if (obj.contains(key)) {
      double v = 0.0;
      number(obj, path, key, v);
      out = v;
    }
  }

  void count(const json& obj, const std::string& path, std::string_view key,
             std::size_t& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_number_integer() ||
        (it->is_number_integer() && !it->is_number_unsigned() && it->get<long long>() < 0)) {
      issues_.push_back(join_path(path, key) + ": expected a non-negative integer");
      return;
    }
    out = it->get<std::size_t>();
  }

  void complex(const json& obj, const std::string& path, std::string_view key,
               std::complex<double>& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (it->is_number()) {
      out = {it->get<double>(), 0.0};
    } else if (it->is_array() && it->size() == 2 && (*it)[0].is_number() &&
               (*it)[1].is_number()) {
      out = {(*it)[0].get<double>(), (*it)[1].get<double>()};
    } else {
      issues_.push_back(join_path(path, key) + ": expected a number or [re, im]");
    }
  }

  void string(const json& obj, const std::string& path, std::string_view key,
              std::string& out) {
    const auto it = obj.find(key);
    if (it == obj.end()) return;
    if (!it->is_string()) {
      issues_.push_back(join_path(path, key) + ": expected a string");
      return;
    }
    out = it->get<std::string>();
  }

  static std::string join_path(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }

 private:
  std::vector<std::string>& issues_;
};

void apply_preset(RunConfig& cfg, const Preset& p) {
  cfg.preset = p.name;
  cfg.medium = p.medium;
  cfg.control = p.control;
  cfg.grid = p.grid;
  cfg.delta_p = p.delta_p;
}

// Converts a parse-error byte offset into 1-based line and column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void validate_all(const RunConfig& cfg, std::vector<std::string>& issues) {
  auto append = [&](std::vector<std::string> more) {
    issues.insert(issues.end(), more.begin(), more.end());
  };
  append(validate(cfg.medium));
  append(validate(cfg.control));
  append(validate(cfg.grid));
  if (!std::isfinite(cfg.delta_p)) issues.push_back("delta_p: must be finite");
  if (!(cfg.threshold_fraction > 0.0 && cfg.threshold_fraction < 1.0))
    issues.push_back("threshold_fraction: must lie in (0, 1)");
  const auto& ev = cfg.evolve;
  if (!(ev.tol >= 1e-12 && ev.tol <= 1e-3))
    issues.push_back("evolve.tol: must lie in [1e-12, 1e-3]");
  if (ev.t_end && !(*ev.t_end > 0.0 && std::isfinite(*ev.t_end)))
    issues.push_back("evolve.t_end: must be finite and > 0");
  if (ev.samples < 1) issues.push_back("evolve.samples: must be >= 1");
  for (auto [name, v] : {std::pair{"drive", ev.drive}, std::pair{"initial.A", ev.initial_a},
                         std::pair{"initial.C1", ev.initial_c1},
                         std::pair{"initial.C2", ev.initial_c2}})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      issues.push_back(std::string("evolve.") + name + ": must be finite");
  append(validate(cfg.ramp.schedule));
  if (cfg.ramp.samples < 2) issues.push_back("ramp.samples: must be >= 2");
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  return std::nullopt;
}

RunConfig config_from_preset(std::string_view name) {
  const Preset* p = find_preset(name);
  if (!p) throw ConfigError({"preset: unknown preset '" + std::string(name) + "'"});
  RunConfig cfg;
  apply_preset(cfg, *p);
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError({os.str()});
  }

  std::vector<std::string> issues;
  Reader rd(issues);
  RunConfig cfg;
  if (!rd.object(doc, "", {"preset", "medium", "control", "grid", "delta_p",
                           "threshold_fraction", "evolve", "ramp", "output"}))
    throw ConfigError(std::move(issues));

  if (doc.contains("preset")) {
    std::string name;
    rd.string(doc, "", "preset", name);
    if (doc["preset"].is_string()) {
      if (const Preset* p = find_preset(name))
        apply_preset(cfg, *p);
      else
        issues.push_back("preset: unknown preset '" + name + "'");
    }
  }

  if (doc.contains("medium") &&
      rd.object(doc["medium"], "medium",
                {"gamma_a", "gamma_1", "gamma_2", "g_sqrt_n", "omega", "c"})) {
    const auto& o = doc["medium"];
    rd.number(o, "medium", "gamma_a", cfg.medium.gamma_a);
    rd.number(o, "medium", "gamma_1", cfg.medium.gamma_1);
    rd.number(o, "medium", "gamma_2", cfg.medium.gamma_2);
    rd.number(o, "medium", "g_sqrt_n", cfg.medium.g_sqrt_n);
    rd.number(o, "medium", "omega", cfg.medium.omega);
    rd.number(o, "medium", "c", cfg.medium.c);
  }

  if (doc.contains("control") &&
      rd.object(doc["control"], "control",
                {"omega_1", "omega_2", "delta_1", "delta_2"})) {
    const auto& o = doc["control"];
    rd.number(o, "control", "omega_1", cfg.control.omega_1);
    rd.number(o, "control", "omega_2", cfg.control.omega_2);
    rd.number(o, "control", "delta_1", cfg.control.delta_1);
    rd.number(o, "control", "delta_2", cfg.control.delta_2);
  }

  if (doc.contains("grid") &&
      rd.object(doc["grid"], "grid", {"axis", "start", "stop", "count", "scale"})) {
    const auto& o = doc["grid"];
    if (o.contains("axis")) {
      std::string axis;
      rd.string(o, "grid", "axis", axis);
      if (o["axis"].is_string()) {
        if (auto a = parse_axis(axis))
          cfg.grid.axis = *a;
        else
          issues.push_back("grid.axis: unknown axis '" + axis +
                           "' (probe_detuning, rabi_1, rabi_synced, common_detuning)");
      }
    }
    if (o.contains("scale")) {
      std::string scale;
      rd.string(o, "grid", "scale", scale);
      if (o["scale"].is_string()) {
        if (auto s = parse_scale(scale))
          cfg.grid.scale = *s;
        else
          issues.push_back("grid.scale: unknown scale '" + scale + "' (linear, log)");
      }
    }
    rd.number(o, "grid", "start", cfg.grid.start);
    rd.number(o, "grid", "stop", cfg.grid.stop);
    rd.count(o, "grid", "count", cfg.grid.count);
  }

  rd.number(doc, "", "delta_p", cfg.delta_p);
  rd.number(doc, "", "threshold_fraction", cfg.threshold_fraction);

  if (doc.contains("evolve") &&
      rd.object(doc["evolve"], "evolve",
                {"drive", "t_end", "tol", "samples", "initial"})) {
    const auto& o = doc["evolve"];
    rd.complex(o, "evolve", "drive", cfg.evolve.drive);
    rd.optional_number(o, "evolve", "t_end", cfg.evolve.t_end);
    rd.number(o, "evolve", "tol", cfg.evolve.tol);
    rd.count(o, "evolve", "samples", cfg.evolve.samples);
    if (o.contains("initial") &&
        rd.object(o["initial"], "evolve.initial", {"A", "C1", "C2"})) {
      const auto& s = o["initial"];
      rd.complex(s, "evolve.initial", "A", cfg.evolve.initial_a);
      rd.complex(s, "evolve.initial", "C1", cfg.evolve.initial_c1);
      rd.complex(s, "evolve.initial", "C2", cfg.evolve.initial_c2);
    }
  }

  if (doc.contains("ramp") &&
      rd.object(doc["ramp"], "ramp", {"knots", "delta_1", "delta_2", "samples"})) {
    const auto& o = doc["ramp"];
    if (o.contains("knots")) {
      const auto& knots = o["knots"];
      if (!knots.is_array()) {
        issues.push_back("ramp.knots: expected an array");
      } else {
        cfg.ramp.schedule.knots.clear();
        for (std::size_t i = 0; i < knots.size(); ++i) {
          const std::string kp = "ramp.knots[" + std::to_string(i) + "]";
          RampKnot k;
          if (rd.object(knots[i], kp, {"t", "omega_1", "omega_2"})) {
            if (!knots[i].contains("t")) issues.push_back(kp + ".t: required");
            rd.number(knots[i], kp, "t", k.time);
            rd.number(knots[i], kp, "omega_1", k.omega_1);
            rd.number(knots[i], kp, "omega_2", k.omega_2);
          }
          cfg.ramp.schedule.knots.push_back(k);
        }
      }
    }
    rd.number(o, "ramp", "delta_1", cfg.ramp.schedule.delta_1);
    rd.number(o, "ramp", "delta_2", cfg.ramp.schedule.delta_2);
    rd.count(o, "ramp", "samples", cfg.ramp.samples);
  }

  if (doc.contains("output") && rd.object(doc["output"], "output", {"path", "format"})) {
    const auto& o = doc["output"];
    rd.string(o, "output", "path", cfg.output.path);
    if (o.contains("format")) {
      std::string fmt;
      rd.string(o, "output", "format", fmt);
      if (o["format"].is_string()) {
        if (auto f = parse_format(fmt))
          cfg.output.format = *f;
        else
          issues.push_back("output.format: unknown format '" + fmt + "' (csv, json)");
      }
    }
  }

  validate_all(cfg, issues);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

std::string emit_config(const RunConfig& cfg) {
  json doc;
  if (cfg.preset) doc["preset"] = *cfg.preset;
  doc["medium"] = {{"gamma_a", cfg.medium.gamma_a}, {"gamma_1", cfg.medium.gamma_1},
                   {"gamma_2", cfg.medium.gamma_2}, {"g_sqrt_n", cfg.medium.g_sqrt_n},
                   {"omega", cfg.medium.omega},     {"c", cfg.medium.c}};
  doc["control"] = {{"omega_1", cfg.control.omega_1}, {"omega_2", cfg.control.omega_2},
                    {"delta_1", cfg.control.delta_1}, {"delta_2", cfg.control.delta_2}};
  doc["grid"] = {{"axis", std::string(to_string(cfg.grid.axis))},
                 {"start", cfg.grid.start},
                 {"stop", cfg.grid.stop},
                 {"count", cfg.grid.count},
                 {"scale", std::string(to_string(cfg.grid.scale))}};
  doc["delta_p"] = cfg.delta_p;
  doc["threshold_fraction"] = cfg.threshold_fraction;
  json evolve = {{"drive", complex_json(cfg.evolve.drive)},
                 {"tol", cfg.evolve.tol},
                 {"samples", cfg.evolve.samples},
                 {"initial",
                  {{"A", complex_json(cfg.evolve.initial_a)},
                   {"C1", complex_json(cfg.evolve.initial_c1)},
                   {"C2", complex_json(cfg.evolve.initial_c2)}}}};
  if (cfg.evolve.t_end) evolve["t_end"] = *cfg.evolve.t_end;
  doc["evolve"] = std::move(evolve);
  json knots = json::array();
  for (const auto& k : cfg.ramp.schedule.knots)
    knots.push_back({{"t", k.time}, {"omega_1", k.omega_1}, {"omega_2", k.omega_2}});
  doc["ramp"] = {{"knots", std::move(knots)},
                 {"delta_1", cfg.ramp.schedule.delta_1},
                 {"delta_2", cfg.ramp.schedule.delta_2},
                 {"samples", cfg.ramp.samples}};
  doc["output"] = {{"path", cfg.output.path},
                   {"format", std::string(to_string(cfg.output.format))}};
  return doc.dump();
}

}  // namespace eitlab
