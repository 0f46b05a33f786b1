#pragma once

// Dimensionless model of a quasi-1D condensate driven by two counterpropagating,
// non-interfering beams. Lengths are in units of the vacuum wavelength, energies
// in recoil energies, times in inverse recoil frequencies.

#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

namespace atomlight {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Vacuum wavenumber in units of 1/wavelength.
inline constexpr double kVacuumWavenumber = kTwoPi;

/// In-medium field amplitude squared per unit of drive intensity and coupling:
/// |E|^2 / E_rec = kIntensityToFieldSquared * zeta * I. The drive intensity I is
/// measured in the unit in which the infinite-system threshold reads
/// I_c = 1 / (2 zeta^2).
inline constexpr double kIntensityToFieldSquared = 4.0;

/// Boundary condition for the condensate wavefunction on [0, L].
enum class Boundary { periodic, hard_wall };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

struct ModelParams {
  double zeta = 0.1;
  double box_length = 100.0;
  double g_interaction = 1.0;
  double intensity_left = 0.0;
  double intensity_right = 0.0;
  double trap_strength = 0.0;
  int grid_points_per_wavelength = 64;
  double time_step = 1e-3;
  double padding = 2.0;
  /// RK4 substeps per grid interval in the field solve.
  int field_refinement = 1;
  Boundary boundary = Boundary::periodic;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  std::size_t box_points() const;
  double dx() const;
  std::size_t padding_points() const;
  /// Homogeneous density 1/L.
  double mean_density() const { return 1.0 / box_length; }
};

/// |E|^2 in recoil units for a drive intensity I.
double field_amplitude_squared(double intensity, double zeta);

/// Medium-renormalized wavenumber 2*pi*sqrt(1 + zeta*density).
double effective_wavenumber(const ModelParams& params, double density);

/// Emergent lattice period pi/k_eff of the homogeneous medium.
double lattice_spacing(const ModelParams& params);

/// Squared excitation energy of the homogeneous state at momentum q, for the
/// configured drive intensities. Throws DomainError at the pole |q| = 2 k_eff.
double dispersion_squared(const ModelParams& params, double q);

/// Per-beam drive intensity (equal drive) at which the homogeneous mode of
/// momentum q has zero energy. Requires |q| > 2 k_eff and zeta > 0.
double critical_intensity_at(const ModelParams& params, double q);

/// Threshold from the roton condition at q = 2 k_eff + 2 pi / L.
/// Throws DomainError for zeta == 0 (no finite threshold).
double critical_intensity_closed_form(const ModelParams& params);

/// Same condition at the smallest momentum of the 2*pi/L grid above 2 k_eff.
double critical_intensity_on_grid(const ModelParams& params);

}  // namespace atomlight
