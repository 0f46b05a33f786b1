#pragma once

// Self-consistent loop: fields from the current density, potential from the
// fields, one GPE step, repeat.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atomlight/condensate.hpp"
#include "atomlight/helmholtz.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

struct SolverOptions {
  std::uint64_t seed = 1;
  double noise_amplitude = 1e-4;
  double noise_cutoff = 8.0 * kPi;
  /// Fields re-solved every k GPE steps.
  std::size_t field_refresh = 1;

  // imaginary time
  double tau_step = 1e-2;
  std::size_t max_steps = 200000;
  std::size_t check_every = 100;
  double residual_tolerance = 1e-6;
  double reflectivity_tolerance = 1e-8;  // change per check_every steps

  // real time
  double t_max = 10.0;
  std::size_t sample_every = 100;
  std::size_t snapshot_every = 1000;
};

struct Snapshot {
  double time = 0.0;
  CondensateState state;
  FieldState fields;
};

struct RunRecord {
  std::vector<double> times;
  std::vector<double> reflectivity_series;
  std::vector<double> kinetic_series;
  std::vector<double> contrast_series;
  std::vector<Snapshot> snapshots;

  bool converged = false;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  double residual = 0.0;
  double mu = 0.0;
  /// Steps taken by the preconditioned finish (see SplitStepper::relax_step).
  std::size_t relaxation_steps = 0;
  double max_norm_drift = 0.0;
  /// Set when the run stopped on a numeric failure; the record is partial.
  std::optional<std::string> failure;
  std::size_t failed_step = 0;
  std::vector<std::string> warnings;

  void sample(double t, double refl, double ekin, double contrast);
};

/// Fields for the current condensate.
FieldState solve_fields(const CondensateState& state, const ModelParams& params);

struct GroundState {
  CondensateState state;
  FieldState fields;
  RunRecord record;
};

/// Imaginary-time relaxation of the coupled system from seeded noise (or from
/// `initial`). Converged when the stationarity residual drops below
/// residual_tolerance and the reflectivity changes by less than
/// reflectivity_tolerance over check_every steps. Split-step imaginary time
/// runs until its splitting error stalls the residual, then preconditioned
/// relaxation takes over. Running out of steps returns the last state with
/// converged = false.
GroundState ground_state(const ModelParams& params, const SolverOptions& options,
                         const std::optional<CondensateState>& initial = std::nullopt);

/// Real-time evolution with the drive on from t = 0. Starts from seeded noise
/// (the undriven ground state when a trap is present) unless `initial` is
/// given. A numeric failure ends the run with a partial record.
RunRecord quench_evolution(const ModelParams& params, const SolverOptions& options,
                           const std::optional<CondensateState>& initial = std::nullopt);

struct ThresholdPoint {
  double intensity = 0.0;
  double reflectivity = 0.0;
  double contrast = 0.0;
  /// Windowed Fourier modulation of the density (see measure_lattice_spacing).
  double modulation = 0.0;
  bool converged = false;
};

struct ThresholdScan {
  double threshold = 0.0;
  /// Grid points in order, followed by the bisection evaluations.
  std::vector<ThresholdPoint> curve;
  std::size_t grid_points = 0;
};

/// Crystal flag on the bulk density modulation. The window suppresses the
/// edge-induced ripple that min/max contrast picks up below threshold.
inline constexpr double kCrystalModulation = 0.1;

/// Ground states along a monotone grid of I_L = I_R, then bisection (to
/// relative_tolerance) between the last homogeneous and first crystalline
/// point. Throws DomainError when the grid does not bracket the transition.
ThresholdScan threshold_scan(const ModelParams& params, std::span<const double> intensity_grid,
                             const SolverOptions& options, double relative_tolerance = 1e-3);

}  // namespace atomlight
