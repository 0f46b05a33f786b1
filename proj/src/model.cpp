#include "atomlight/model.hpp"

#include <cmath>

#include "atomlight/errors.hpp"

namespace atomlight {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "hard_wall"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "hard_wall") return Boundary::hard_wall;
  throw ConfigError("boundary: expected 'periodic' or 'hard_wall', got '" + s + "'");
}

namespace {
void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(std::string(key) + ": " + what);
}
}  // namespace

void ModelParams::validate() const {
  require(std::isfinite(zeta) && zeta >= 0.0, "zeta", "must be finite and >= 0");
  require(std::isfinite(box_length) && box_length > 0.0, "box_length", "must be > 0");
  require(std::isfinite(g_interaction), "g_interaction", "must be finite");
  require(std::isfinite(intensity_left) && intensity_left >= 0.0, "intensity_left", "must be >= 0");
  require(std::isfinite(intensity_right) && intensity_right >= 0.0, "intensity_right",
          "must be >= 0");
  require(std::isfinite(trap_strength) && trap_strength >= 0.0, "trap_strength", "must be >= 0");
  require(grid_points_per_wavelength >= 32, "grid_points_per_wavelength", "must be >= 32");
  require(std::isfinite(time_step) && time_step > 0.0, "time_step", "must be > 0");
  require(std::isfinite(padding) && padding > 0.0, "padding", "must be > 0");
  require(field_refinement >= 1, "field_refinement", "must be >= 1");
  require(box_points() >= 8, "box_length", "box must span at least 8 grid points");
}

std::size_t ModelParams::box_points() const {
  return static_cast<std::size_t>(std::llround(box_length * grid_points_per_wavelength));
}

double ModelParams::dx() const { return box_length / static_cast<double>(box_points()); }

std::size_t ModelParams::padding_points() const {
  return static_cast<std::size_t>(std::ceil(padding / dx() - 1e-9));
}

double field_amplitude_squared(double intensity, double zeta) {
  return kIntensityToFieldSquared * zeta * intensity;
}

double effective_wavenumber(const ModelParams& params, double density) {
  if (!(density >= 0.0)) throw DomainError("effective_wavenumber: negative density");
  return kVacuumWavenumber * std::sqrt(1.0 + params.zeta * density);
}

double lattice_spacing(const ModelParams& params) {
  return kPi / effective_wavenumber(params, params.mean_density());
}

double dispersion_squared(const ModelParams& params, double q) {
  const double n = params.mean_density();
  const double k = effective_wavenumber(params, n);
  const double denom = q * q - 4.0 * k * k;
  const double kinetic = q * q / (kTwoPi * kTwoPi);
  const double fields = field_amplitude_squared(params.intensity_left, params.zeta) +
                        field_amplitude_squared(params.intensity_right, params.zeta);
  if (fields != 0.0 && std::abs(denom) <= 1e-12 * 4.0 * k * k)
    throw DomainError("dispersion: momentum at the pole |q| = 2 k_eff");
  const double light = fields == 0.0 ? 0.0 : 4.0 * kTwoPi * kTwoPi * params.zeta * fields * n / denom;
  return kinetic * (kinetic + 2.0 * params.g_interaction * n - light);
}

double critical_intensity_at(const ModelParams& params, double q) {
  if (params.zeta <= 0.0) throw DomainError("critical intensity: zeta = 0 has no finite threshold");
  const double n = params.mean_density();
  const double k = effective_wavenumber(params, n);
  if (std::abs(q) <= 2.0 * k) throw DomainError("critical intensity: requires |q| > 2 k_eff");
  const double kinetic = q * q / (kTwoPi * kTwoPi);
  const double stiffness = kinetic + 2.0 * params.g_interaction * n;
  return stiffness * (q * q - 4.0 * k * k) /
         (8.0 * kTwoPi * kTwoPi * kIntensityToFieldSquared * params.zeta * params.zeta * n);
}

double critical_intensity_closed_form(const ModelParams& params) {
  const double k = effective_wavenumber(params, params.mean_density());
  return critical_intensity_at(params, 2.0 * k + kTwoPi / params.box_length);
}

double critical_intensity_on_grid(const ModelParams& params) {
  const double k = effective_wavenumber(params, params.mean_density());
  const double dq = kTwoPi / params.box_length;
  double n = std::floor(2.0 * k / dq) + 1.0;
  return critical_intensity_at(params, n * dq);
}

}  // namespace atomlight
