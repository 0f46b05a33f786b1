#include "atomlight/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "atomlight/errors.hpp"

namespace atomlight {

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::ground_state: return "ground_state";
    case RunMode::quench: return "quench";
    case RunMode::spectrum: return "spectrum";
    case RunMode::threshold_scan: return "threshold_scan";
    case RunMode::sweep: return "sweep";
  }
  return "?";
}

RunMode mode_from_string(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), '-', '_');
  for (RunMode m : {RunMode::ground_state, RunMode::quench, RunMode::spectrum, RunMode::threshold_scan, RunMode::sweep})
    if (t == to_string(m)) return m;
  throw ConfigError("mode: expected ground_state, quench, spectrum, threshold_scan or sweep, got '" + s + "'");
}

std::string to_string(Source s) {
  switch (s) {
    case Source::default_value: return "default";
    case Source::config: return "config";
    case Source::override_value: return "override";
    case Source::command_line: return "command_line";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const char* first = s.data();
  if (first != end && *first == '+') ++first;
  const auto r = std::from_chars(first, end, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != end)
    throw ConfigError(key + ": expected a number, got '" + s + "'");
  if (!std::isfinite(v)) throw ConfigError(key + ": must be finite");
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (s.empty() || r.ec != std::errc() || r.ptr != end)
    throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (s.back() == ',') throw ConfigError(key + ": trailing comma");
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_number(v[i]);
  }
  return out;
}

void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

struct Key {
  KeyInfo info;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
  bool numeric = true;
};

template <class Access, class Check>
Key real_key(std::string name, std::string desc, Access access, Check ok, std::string what) {
  auto n = name;
  return Key{{std::move(name), std::move(desc)},
             [=](RunConfig& c, const std::string& s) {
               const double v = parse_double(n, s);
               check(ok(v), n, what);
               access(c) = v;
             },
             [=](const RunConfig& c) { return format_number(access(c)); }};
}

template <class T, class Access>
Key count_key(std::string name, std::string desc, Access access, std::uint64_t min) {
  auto n = name;
  return Key{{std::move(name), std::move(desc)},
             [=](RunConfig& c, const std::string& s) {
               const auto v = parse_unsigned(n, s);
               check(v >= min, n, "must be >= " + std::to_string(min));
               check(v <= static_cast<std::uint64_t>(std::numeric_limits<T>::max()), n, "too large");
               access(c) = static_cast<T>(v);
             },
             [=](const RunConfig& c) {
               return std::to_string(static_cast<std::uint64_t>(access(c)));
             }};
}

const auto nonneg = [](double v) { return v >= 0.0; };
const auto positive = [](double v) { return v > 0.0; };
const auto any = [](double) { return true; };

std::vector<Key> build_table() {
  std::vector<Key> t;
  t.push_back({{"mode", "ground_state | quench | spectrum | threshold_scan | sweep"},
               [](RunConfig& c, const std::string& s) { c.mode = mode_from_string(s); },
               [](const RunConfig& c) { return to_string(c.mode); },
               false});
#define P(field) [](auto& c) -> auto& { return c.params.field; }
#define S(field) [](auto& c) -> auto& { return c.solver.field; }
  t.push_back(real_key("zeta", "light-matter coupling", P(zeta), nonneg, "must be >= 0"));
  t.push_back(real_key("box_length", "condensate length in wavelengths", P(box_length), positive, "must be > 0"));
  t.push_back(real_key("g_interaction", "contact interaction strength", P(g_interaction), any, ""));
  t.push_back(real_key("intensity_left", "drive intensity of the beam entering at x = 0", P(intensity_left), nonneg,
                       "must be >= 0"));
  t.push_back(real_key("intensity_right", "drive intensity of the beam entering at x = L", P(intensity_right), nonneg,
                       "must be >= 0"));
  t.push_back(real_key("trap_strength", "harmonic trap (E_trap / 2) (x - L/2)^2", P(trap_strength), nonneg,
                       "must be >= 0"));
  t.push_back({{"boundary", "periodic | hard_wall"},
               [](RunConfig& c, const std::string& s) { c.params.boundary = boundary_from_string(s); },
               [](const RunConfig& c) { return to_string(c.params.boundary); },
               false});
  t.push_back(count_key<int>("grid_points_per_wavelength", "condensate grid density", P(grid_points_per_wavelength), 32));
  t.push_back(real_key("time_step", "real-time step", P(time_step), positive, "must be > 0"));
  t.push_back(real_key("padding", "vacuum margin on each side of the box for the field solve", P(padding), positive,
                       "must be > 0"));
  t.push_back(count_key<int>("field_refinement", "RK4 substeps per grid interval", P(field_refinement), 1));

  t.push_back(count_key<std::uint64_t>("rng_seed", "seed of the initial noise", S(seed), 0));
  t.push_back(real_key("noise_amplitude", "relative amplitude of the seeded noise", S(noise_amplitude), nonneg,
                       "must be >= 0"));
  t.push_back(real_key("noise_cutoff", "largest wavenumber in the seeded noise", S(noise_cutoff), positive,
                       "must be > 0"));
  t.push_back(count_key<std::size_t>("field_refresh", "GPE steps between field solves", S(field_refresh), 1));
  t.push_back(real_key("tau_step", "imaginary-time step", S(tau_step), positive, "must be > 0"));
  t.push_back(count_key<std::size_t>("max_steps", "imaginary-time step budget", S(max_steps), 1));
  t.push_back(count_key<std::size_t>("check_every", "steps between convergence checks", S(check_every), 1));
  t.push_back(real_key("residual_tolerance", "stationarity residual for convergence", S(residual_tolerance), positive,
                       "must be > 0"));
  t.push_back(real_key("reflectivity_tolerance", "reflectivity change per check for convergence",
                       S(reflectivity_tolerance), positive, "must be > 0"));
  t.push_back(real_key("t_max", "quench duration", S(t_max), nonneg, "must be >= 0"));
  t.push_back(count_key<std::size_t>("sample_every", "steps between time-series samples", S(sample_every), 1));
  t.push_back(count_key<std::size_t>("snapshot_every", "steps between snapshots, 0 for the final state only",
                                     S(snapshot_every), 0));
#undef P
#undef S

  t.push_back(real_key("q_cutoff", "plane-wave cutoff of the spectrum basis",
                       [](auto& c) -> auto& { return c.q_cutoff; }, positive, "must be > 0"));
  t.push_back({{"intensity_grid", "threshold scan: comma-separated per-beam intensities, increasing"},
               [](RunConfig& c, const std::string& s) {
                 auto v = parse_list("intensity_grid", s);
                 for (double x : v) check(x >= 0.0, "intensity_grid", "entries must be >= 0");
                 c.intensity_grid = std::move(v);
               },
               [](const RunConfig& c) { return format_list(c.intensity_grid); },
               false});
  t.push_back(real_key("threshold_tolerance", "relative bisection tolerance of the threshold scan",
                       [](auto& c) -> auto& { return c.threshold_tolerance; },
                       [](double v) { return v > 0.0 && v < 1.0; }, "must lie in (0, 1)"));
  t.push_back({{"sweep_key", "sweep: numeric key to vary, or 'intensity' for both beams"},
               [](RunConfig& c, const std::string& s) { c.sweep_key = s; },
               [](const RunConfig& c) { return c.sweep_key; },
               false});
  t.push_back({{"sweep_values", "sweep: comma-separated values of sweep_key"},
               [](RunConfig& c, const std::string& s) { c.sweep_values = parse_list("sweep_values", s); },
               [](const RunConfig& c) { return format_list(c.sweep_values); },
               false});
  t.push_back({{"sweep_mode", "sweep: mode run at each point"},
               [](RunConfig& c, const std::string& s) {
                 c.sweep_mode = mode_from_string(s);
                 check(c.sweep_mode != RunMode::sweep, "sweep_mode", "cannot be sweep");
               },
               [](const RunConfig& c) { return to_string(c.sweep_mode); },
               false});
  t.push_back({{"output_dir", "run directory"},
               [](RunConfig& c, const std::string& s) {
                 check(!s.empty(), "output_dir", "must not be empty");
                 check(s.find('#') == std::string::npos, "output_dir", "must not contain '#'");
                 c.output_dir = s;
               },
               [](const RunConfig& c) { return c.output_dir; },
               false});
  return t;
}

const std::vector<Key>& table() {
  static const std::vector<Key> t = build_table();
  return t;
}

const Key& find_key(const std::string& name) {
  for (const auto& k : table())
    if (k.info.name == name) return k;
  throw ConfigError("unknown key '" + name + "'");
}

RunConfig with_default_provenance() {
  RunConfig c;
  for (const auto& k : table()) c.provenance[k.info.name] = Source::default_value;
  return c;
}

bool sweepable(const std::string& key) {
  if (key == "intensity") return true;
  for (const auto& k : table())
    if (k.info.name == key) return k.numeric;
  return false;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  return serialize_config(*this) == serialize_config(other);
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = [] {
    std::vector<KeyInfo> out;
    for (const auto& k : table()) out.push_back(k.info);
    return out;
  }();
  return keys;
}

namespace {

void set_assignment(RunConfig& c, const std::string& assignment, Source source) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  try {
    if (key == "intensity") {
      find_key("intensity_left").set(c, value);
      find_key("intensity_right").set(c, value);
      c.provenance["intensity_left"] = c.provenance["intensity_right"] = source;
    } else {
      find_key(key).set(c, value);
      c.provenance[key] = source;
    }
  } catch (const ConfigError& e) {
    throw ConfigError("override '" + assignment + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<RunMode> implied_mode,
                       const std::vector<std::string>& overrides) {
  RunConfig c = with_default_provenance();
  std::map<std::string, std::size_t> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = "line " + std::to_string(line) + ": ";
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value, got '" + body + "'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      const Key& k = find_key(key);
      if (auto it = seen.find(key); it != seen.end())
        throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
      seen[key] = line;
      k.set(c, value);
      c.provenance[key] = Source::config;
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (implied_mode) {
    if (seen.count("mode") && c.mode != *implied_mode)
      throw ConfigError("line " + std::to_string(seen["mode"]) + ": mode '" + to_string(c.mode) +
                        "' conflicts with the requested " + to_string(*implied_mode));
    if (!seen.count("mode")) {
      c.mode = *implied_mode;
      c.provenance["mode"] = Source::command_line;
    }
  } else if (!seen.count("mode")) {
    throw ConfigError("end of input after line " + std::to_string(line) + ": missing required key 'mode'");
  }
  for (const auto& o : overrides) set_assignment(c, o, Source::override_value);
  validate_config(c);
  return c;
}

void apply_override(RunConfig& config, const std::string& assignment, Source source) {
  apply_overrides(config, {assignment}, source);
}

void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments, Source source) {
  RunConfig next = config;
  for (const auto& a : assignments) set_assignment(next, a, source);
  try {
    validate_config(next);
  } catch (const ConfigError& e) {
    if (assignments.size() == 1) throw ConfigError("override '" + assignments.front() + "': " + e.what());
    throw;
  }
  config = std::move(next);
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& k : table()) out += k.info.name + " = " + k.get(config) + "\n";
  return out;
}

std::string config_value(const RunConfig& config, const std::string& key) { return find_key(key).get(config); }

void validate_config(const RunConfig& c) {
  c.params.validate();
  if (c.solver.check_every > c.solver.max_steps) throw ConfigError("check_every: must not exceed max_steps");

  const auto check_grid = [](const std::vector<double>& g) {
    check(g.size() >= 2, "intensity_grid", "threshold_scan needs at least two points");
    for (std::size_t i = 1; i < g.size(); ++i) check(g[i] > g[i - 1], "intensity_grid", "must be strictly increasing");
  };
  const auto check_mode = [&](RunMode m) {
    if (m == RunMode::threshold_scan) check_grid(c.intensity_grid);
    if (m == RunMode::spectrum)
      check(c.params.boundary == Boundary::periodic, "boundary", "spectrum needs periodic boundaries");
    if (m == RunMode::quench) check(c.solver.t_max > 0.0, "t_max", "quench needs t_max > 0");
  };

  if (c.mode == RunMode::sweep) {
    check(!c.sweep_key.empty(), "sweep_key", "sweep needs a key");
    check(sweepable(c.sweep_key), "sweep_key", "'" + c.sweep_key + "' is not a numeric key");
    check(!c.sweep_values.empty(), "sweep_values", "sweep needs at least one value");
    check_mode(c.sweep_mode);
    // Every point must be a valid run on its own.
    for (double v : c.sweep_values) {
      RunConfig point = c;
      point.mode = c.sweep_mode;
      apply_override(point, c.sweep_key + "=" + format_number(v));
    }
  } else {
    check_mode(c.mode);
  }
}

}  // namespace atomlight
