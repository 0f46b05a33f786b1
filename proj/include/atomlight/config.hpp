#pragma once

// Flat key = value run configuration. One key per line, '#' starts a comment,
// blank lines are ignored. Every key is documented in config_keys().

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atomlight/driver.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

enum class RunMode { ground_state, quench, spectrum, threshold_scan, sweep };

std::string to_string(RunMode m);
/// Accepts ground_state and ground-state spellings.
RunMode mode_from_string(const std::string& s);

/// Where a configuration value came from.
enum class Source { default_value, config, override_value, command_line };
std::string to_string(Source s);

struct RunConfig {
  RunMode mode = RunMode::ground_state;
  ModelParams params;
  SolverOptions solver;
  std::string output_dir = "out";
  double q_cutoff = 8.0 * kPi;
  /// threshold_scan: per-beam intensities, strictly increasing.
  std::vector<double> intensity_grid;
  double threshold_tolerance = 1e-3;
  /// sweep: each value of sweep_key runs sweep_mode in its own directory.
  std::string sweep_key;
  std::vector<double> sweep_values;
  RunMode sweep_mode = RunMode::ground_state;

  std::map<std::string, Source> provenance;

  /// Compares values only (provenance is bookkeeping).
  bool operator==(const RunConfig& other) const;
};

struct KeyInfo {
  std::string name;
  std::string description;
};

/// All accepted keys, in serialization order.
const std::vector<KeyInfo>& config_keys();

/// Parses a config document. `implied_mode` supplies the mode when the text
/// has none (e.g. from a CLI subcommand); a conflicting mode is an error.
/// Throws ConfigError with a line reference on unknown keys, malformed or
/// out-of-range values, duplicates and a missing mode. `overrides` ("key=value")
/// are applied on top before the cross-key checks, so they may supply keys a
/// mode requires.
RunConfig parse_config(const std::string& text, std::optional<RunMode> implied_mode = std::nullopt,
                       const std::vector<std::string>& overrides = {});

/// Applies "key=value" on top of a parsed config and re-validates.
void apply_override(RunConfig& config, const std::string& assignment, Source source = Source::override_value);
/// All of them, validated once at the end. On error the config is unchanged.
void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments,
                     Source source = Source::override_value);

/// Canonical text form: every key, fixed order, doubles at full precision.
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Current value of a key in canonical text form.
std::string config_value(const RunConfig& config, const std::string& key);

/// Shortest text that reads back to the same double.
std::string format_number(double v);

/// Cross-key checks (ModelParams::validate, solver options, mode needs).
void validate_config(const RunConfig& config);

}  // namespace atomlight
