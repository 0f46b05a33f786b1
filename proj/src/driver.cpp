#include "atomlight/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atomlight/errors.hpp"
#include "atomlight/gpe.hpp"
#include "atomlight/observables.hpp"
#include "atomlight/potential.hpp"
#include "atomlight/susceptibility.hpp"

namespace atomlight {

void RunRecord::sample(double t, double refl, double ekin, double contrast) {
  times.push_back(t);
  reflectivity_series.push_back(refl);
  kinetic_series.push_back(ekin);
  contrast_series.push_back(contrast);
}

FieldState solve_fields(const CondensateState& state, const ModelParams& params) {
  return solve_driven_fields(susceptibility_profile(state, params), params);
}

namespace {

void check_options(const SolverOptions& o) {
  if (o.field_refresh == 0) throw ConfigError("field_refresh must be >= 1");
  if (o.check_every == 0) throw ConfigError("check_every must be >= 1");
  if (o.sample_every == 0) throw ConfigError("sample_every must be >= 1");
  if (!(o.tau_step > 0.0)) throw ConfigError("tau_step must be > 0");
  if (!(o.t_max >= 0.0)) throw ConfigError("t_max must be >= 0");
  if (!(o.noise_amplitude >= 0.0)) throw ConfigError("noise_amplitude must be >= 0");
}

void check_grid(const CondensateState& s, const ModelParams& p) {
  if (s.size() != p.box_points() || s.boundary != p.boundary ||
      std::abs(s.box_length - p.box_length) > 1e-12 * p.box_length)
    throw ConfigError("initial state does not match the configured grid");
}

// Coupled loop state: condensate, its fields and the potential they produce.
struct Coupled {
  const ModelParams& params;
  std::vector<double> trap;
  FieldState fields;
  std::vector<double> potential;

  Coupled(const ModelParams& p, const CondensateState& s) : params(p), trap(trap_potential(p)) { refresh(s); }

  void refresh(const CondensateState& s) {
    fields = solve_fields(s, params);
    const auto opt = optical_potential(fields, params);
    potential = trap;
    for (std::size_t j = 0; j < potential.size(); ++j) potential[j] += opt[j];
  }
};

double relative_change(const std::vector<cplx>& a, const std::vector<cplx>& b, double dx) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
  return std::sqrt(s * dx);
}

}  // namespace

GroundState ground_state(const ModelParams& params, const SolverOptions& options,
                         const std::optional<CondensateState>& initial) {
  params.validate();
  check_options(options);
  CondensateState s = initial ? *initial
                              : seeded_state(params, options.seed, options.noise_amplitude, options.noise_cutoff);
  check_grid(s, params);

  RunRecord rec;
  rec.seed = options.seed;
  const SplitStepper stepper(params);
  Coupled loop(params, s);

  const double dtau = options.tau_step;
  bool polishing = false;
  double last_refl = reflectivity(loop.fields);
  auto last_psi = s.psi;
  double last_time = s.time;

  for (std::size_t step = 0; step < options.max_steps; ++step) {
    try {
      if (polishing) {
        stepper.relax_step(s, loop.potential, step);
        ++rec.relaxation_steps;
      } else {
        stepper.step(s, loop.potential, cplx(0.0, -dtau), step);
      }
      if ((step + 1) % options.field_refresh == 0) loop.refresh(s);
    } catch (const NumericError& e) {
      rec.failure = e.what();
      rec.failed_step = step;
      break;
    }
    rec.iterations = step + 1;
    if ((step + 1) % options.check_every != 0) continue;

    if (options.field_refresh > 1) loop.refresh(s);
    const auto cp = stepper.chemical_potential(s, loop.potential);
    const double refl = reflectivity(loop.fields);
    rec.sample(s.time, refl, stepper.kinetic_energy(s), density_contrast(s));
    rec.residual = cp.residual;
    rec.mu = cp.mu;
    if (cp.residual < options.residual_tolerance && std::abs(refl - last_refl) < options.reflectivity_tolerance) {
      rec.converged = true;
      break;
    }
    // In imaginary time |d psi / d tau| tracks the residual while the state
    // still relaxes. When the state has stopped moving but the residual has
    // not, the splitting error sets the floor; finish with relax_step, whose
    // fixed points carry no splitting error.
    const double rate = relative_change(s.psi, last_psi, s.dx()) / (s.time - last_time);
    if (!polishing && rate < 0.1 * cp.residual) polishing = true;
    last_refl = refl;
    last_psi = s.psi;
    last_time = s.time;
  }
  if (!rec.converged && !rec.failure)
    rec.warnings.push_back("ground state not converged after " + std::to_string(rec.iterations) +
                           " steps (residual " + std::to_string(rec.residual) + ")");
  rec.snapshots.push_back({s.time, s, loop.fields});
  return {std::move(s), std::move(loop.fields), std::move(rec)};
}

RunRecord quench_evolution(const ModelParams& params, const SolverOptions& options,
                           const std::optional<CondensateState>& initial) {
  params.validate();
  check_options(options);
  RunRecord rec;
  rec.seed = options.seed;

  CondensateState s;
  if (initial) {
    s = *initial;
  } else if (params.trap_strength > 0.0) {
    // Undriven trapped ground state, then the seed fluctuation.
    auto undriven = params;
    undriven.intensity_left = undriven.intensity_right = 0.0;
    auto quiet = options;
    quiet.noise_amplitude = 0.0;
    auto gs = ground_state(undriven, quiet, homogeneous_state(undriven));
    s = std::move(gs.state);
    add_seed_noise(s, options.seed, options.noise_amplitude, options.noise_cutoff);
  } else {
    s = seeded_state(params, options.seed, options.noise_amplitude, options.noise_cutoff);
  }
  check_grid(s, params);
  s.time = 0.0;

  const SplitStepper stepper(params);
  Coupled loop(params, s);
  const double dt = params.time_step;
  const auto steps = static_cast<std::size_t>(std::llround(options.t_max / dt));
  const double norm0 = s.norm();

  const auto record = [&] {
    rec.sample(s.time, reflectivity(loop.fields), stepper.kinetic_energy(s), density_contrast(s));
  };
  record();
  rec.snapshots.push_back({s.time, s, loop.fields});

  for (std::size_t step = 0; step < steps; ++step) {
    try {
      stepper.step(s, loop.potential, cplx(dt, 0.0), step);
      if ((step + 1) % options.field_refresh == 0) loop.refresh(s);
    } catch (const NumericError& e) {
      rec.failure = e.what();
      rec.failed_step = step;
      break;
    }
    // Keep the clock exact rather than accumulating dt.
    s.time = static_cast<double>(step + 1) * dt;
    rec.iterations = step + 1;
    rec.max_norm_drift = std::max(rec.max_norm_drift, std::abs(s.norm() - norm0));
    if ((step + 1) % options.sample_every == 0) record();
    if (options.snapshot_every > 0 && (step + 1) % options.snapshot_every == 0)
      rec.snapshots.push_back({s.time, s, loop.fields});
  }
  rec.converged = !rec.failure.has_value();
  return rec;
}

ThresholdScan threshold_scan(const ModelParams& params, std::span<const double> intensity_grid,
                             const SolverOptions& options, double relative_tolerance) {
  if (intensity_grid.size() < 2) throw ConfigError("intensity_grid needs at least two points");
  for (std::size_t i = 0; i < intensity_grid.size(); ++i) {
    if (!(intensity_grid[i] >= 0.0)) throw ConfigError("intensity_grid values must be >= 0");
    if (i > 0 && !(intensity_grid[i] > intensity_grid[i - 1]))
      throw ConfigError("intensity_grid must be strictly increasing");
  }
  if (!(relative_tolerance > 0.0)) throw ConfigError("threshold tolerance must be > 0");

  const auto evaluate = [&](double intensity) {
    auto p = params;
    p.intensity_left = p.intensity_right = intensity;
    const auto gs = ground_state(p, options);
    const auto lattice = measure_lattice_spacing(gs.state.density(), gs.state.dx(), 0.0);
    return ThresholdPoint{intensity, reflectivity(gs.fields), density_contrast(gs.state), lattice.modulation,
                          gs.record.converged};
  };

  ThresholdScan out;
  std::size_t first_crystal = intensity_grid.size();
  for (std::size_t i = 0; i < intensity_grid.size(); ++i) {
    out.curve.push_back(evaluate(intensity_grid[i]));
    if (first_crystal == intensity_grid.size() && out.curve.back().modulation > kCrystalModulation) first_crystal = i;
  }
  out.grid_points = out.curve.size();
  if (first_crystal == intensity_grid.size())
    throw DomainError("intensity grid does not bracket the threshold: no crystalline point up to I = " +
                      std::to_string(intensity_grid.back()));
  if (first_crystal == 0)
    throw DomainError("intensity grid does not bracket the threshold: already crystalline at I = " +
                      std::to_string(intensity_grid.front()));

  double lo = intensity_grid[first_crystal - 1], hi = intensity_grid[first_crystal];
  while (hi - lo > relative_tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    out.curve.push_back(evaluate(mid));
    (out.curve.back().modulation > kCrystalModulation ? hi : lo) = mid;
  }
  out.threshold = 0.5 * (lo + hi);
  return out;
}

}  // namespace atomlight
