#pragma once

// Scalar Helmholtz equation E'' + (2 pi)^2 (1 + chi(x)) E = 0 on the padded
// field grid, integrated with classical RK4 (one step per grid interval).

#include <cstddef>
#include <vector>

#include "atomlight/model.hpp"
#include "atomlight/susceptibility.hpp"

namespace atomlight {

enum class Direction { left_to_right, right_to_left };
enum class Incidence { left, right };

struct ScatteringCoefficients {
  cplx r{0.0, 0.0};
  cplx t{1.0, 0.0};
  double reflectance() const { return std::norm(r); }
  double transmittance() const { return std::norm(t); }
};

/// Field and derivative at every node of the field grid.
struct HelmholtzSolution {
  std::vector<cplx> field;
  std::vector<cplx> derivative;
};

/// Coefficients of exp(+i k0 x) and exp(-i k0 x) matching (E, E') at x in vacuum.
struct PlaneWaveAmplitudes {
  cplx forward;
  cplx backward;
};

PlaneWaveAmplitudes decompose_plane_waves(cplx value, cplx derivative, double x);

/// Integrates from the first node in `direction` (node 0 for left_to_right, the
/// last node otherwise) with the given one-sided data. Throws NumericError on
/// non-finite output.
HelmholtzSolution integrate_helmholtz_ivp(const SusceptibilityProfile& chi, cplx initial_value,
                                          cplx initial_derivative, Direction direction);

/// Reflection/transmission amplitudes for a unit wave incident from one side.
/// Phases refer to plane waves exp(+-i k0 x) in absolute coordinates. Throws
/// ConfigError when the outermost nodes are not in vacuum.
ScatteringCoefficients scattering_coefficients(const SusceptibilityProfile& chi,
                                               Incidence incidence = Incidence::left);

/// Driven field envelopes on the padded grid. e_left is incident from the left
/// with amplitude drive_left (coefficient of exp(i k0 x)) and nothing incoming
/// from the right; e_right mirrors it.
struct FieldState {
  std::vector<cplx> e_left;
  std::vector<cplx> e_right;
  double x_origin = 0.0;
  double step = 0.0;
  std::size_t box_begin = 0;
  std::size_t box_end = 0;
  std::size_t refinement = 1;
  ScatteringCoefficients scattering;        // left incidence
  ScatteringCoefficients scattering_right;  // right incidence
  cplx drive_left{0.0, 0.0};
  cplx drive_right{0.0, 0.0};

  std::size_t nodes() const { return e_left.size(); }
  double x(std::size_t node) const { return x_origin + static_cast<double>(node) * step; }
  std::size_t box_points() const { return (box_end - box_begin) / refinement; }
  /// Samples at the condensate grid points x_j = j L / N, j = 0..N-1.
  std::vector<cplx> box_field_left() const;
  std::vector<cplx> box_field_right() const;
  std::vector<double> box_intensity_left() const;
  std::vector<double> box_intensity_right() const;
  std::vector<double> box_intensity_total() const;
};

/// Plane-wave fields |E|^2 = I everywhere, as for an infinite homogeneous medium
/// with wavenumber k; used for analytic reference states.
FieldState plane_wave_fields(const SusceptibilityProfile& grid, double k, double field_squared_left,
                             double field_squared_right);

FieldState solve_driven_fields(const SusceptibilityProfile& chi, const ModelParams& params);

}  // namespace atomlight
