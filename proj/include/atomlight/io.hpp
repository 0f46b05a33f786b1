#pragma once

// Run orchestration and the on-disk format of a run directory:
//   manifest.json      config echo, code version, seed, convergence, file list
//   timeseries.csv     time, reflectivity, kinetic_energy, contrast
//   snapshot_NNN.csv   x, density, intensity_left, intensity_right, intensity_total
//   spectrum.csv       q_max, re_omega, im_omega
//   threshold.csv      intensity, reflectivity, contrast, modulation, converged (grid points)
//   bisection.csv      same columns, refinement evaluations
//   sweep.csv          value, directory, status, then the point summary scalars
// Numbers are written as the shortest text that reads back to the same double.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "atomlight/config.hpp"
#include "atomlight/driver.hpp"
#include "atomlight/spectrum.hpp"

namespace atomlight {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr const char* kManifestFormat = "atomlight-run/1";

struct SweepPoint {
  double value = 0.0;
  std::string directory;  // relative to the sweep directory
  int status = 0;
  nlohmann::ordered_json summary;
};

/// Everything a run produced. Empty members are not written.
struct RunOutput {
  RunRecord record;
  std::vector<Mode> modes;
  std::optional<ThresholdScan> scan;
  std::vector<SweepPoint> sweep;
  /// Mode-specific scalars (numbers and booleans only).
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> notes;

  /// 0 when the computation finished and converged, 1 otherwise.
  int status() const;
};

/// Creates `dir` and checks it is writable. A directory holding an earlier
/// run is cleared of the files that run's manifest lists; any other non-empty
/// directory is refused. Throws IoError.
void preflight_output_dir(const std::filesystem::path& dir);

/// Computes a single (non-sweep) run. Numeric failures end up in
/// record.failure; configuration problems throw ConfigError.
RunOutput execute(const RunConfig& config);

/// Writes the run directory config.output_dir and returns the manifest.
nlohmann::ordered_json write_outputs(const RunOutput& output, const RunConfig& config);

/// Preflight, compute (recursing into points for a sweep), write. Returns the
/// exit status: 0 success, 1 numeric failure or no convergence.
int run(const RunConfig& config);

/// Reads the config echoed in a manifest.
RunConfig config_from_manifest(const nlohmann::ordered_json& manifest);
nlohmann::ordered_json read_manifest(const std::filesystem::path& dir);

}  // namespace atomlight
