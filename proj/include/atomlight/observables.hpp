#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "atomlight/condensate.hpp"
#include "atomlight/helmholtz.hpp"

namespace atomlight {

/// Reflected over incident power. With both beams on, the intensity-weighted
/// mean of |r_L|^2 and |r_R|^2; with the drive off, |r_L|^2.
double reflectivity(const FieldState& fields);

/// (max rho - min rho) / (max rho + min rho), in [0, 1].
double density_contrast(std::span<const double> density);
double density_contrast(const CondensateState& state);

struct LatticeMeasurement {
  bool found = false;
  double spacing = 0.0;        // real-space period of the profile
  double wavenumber = 0.0;     // 2 pi / spacing
  double modulation = 0.0;     // peak Fourier amplitude over the mean
  std::string reason;          // why no lattice was reported
};

/// Dominant nonzero spatial frequency of a sampled profile: Hann window,
/// 8x zero padding, 3-point parabola on the log magnitude around the peak.
/// Reports no lattice when the profile has fewer than min_periods periods or
/// its modulation is below floor (relative to the mean).
LatticeMeasurement measure_lattice_spacing(std::span<const double> profile, double dx,
                                           double floor = 1e-3, double min_periods = 8.0);

/// Local maxima of the normalized modulation (p - min)/(max - min) above
/// threshold, merged when closer than merge_distance (highest kept), with
/// parabolic sub-grid positions.
std::vector<double> find_maxima(std::span<const double> profile, double dx, double threshold = 0.1,
                                double merge_distance = 0.25);

struct MaximaTrajectories {
  std::vector<double> times;
  /// positions[p][f]: peak p in frame f; ordered in p at every frame.
  std::vector<std::vector<double>> positions;
  std::vector<std::string> warnings;

  std::size_t frames() const { return times.size(); }
  std::size_t count() const { return positions.size(); }
  /// Trajectories shifted so that each starts at x = 0.
  std::vector<std::vector<double>> aligned() const;
  /// Mean distance between neighboring peaks in frame f.
  double mean_spacing(std::size_t frame) const;
};

/// Links peaks frame to frame by nearest neighbor. Tracking stops (with a
/// warning) at the first frame whose peak count differs from the first frame
/// or where a link would jump by more than half the spacing.
MaximaTrajectories track_intensity_maxima(std::span<const double> times,
                                          const std::vector<std::vector<double>>& profiles, double dx,
                                          double threshold = 0.1);

struct Alignment {
  double shift = 0.0;     // b(x - shift) best matches a(x)
  double residual = 0.0;  // ||a - b(. - shift)|| / ||a||
};

/// Best periodic translation of b onto a: FFT cross-correlation for the
/// integer shift, then a continuous Fourier-shift refinement.
Alignment align_translation(std::span<const double> a, std::span<const double> b, double dx);

}  // namespace atomlight
