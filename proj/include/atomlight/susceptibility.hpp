#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "atomlight/condensate.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

/// Susceptibility on the padded field grid. Nodes sit at x_origin + i * step;
/// every interval also carries its midpoint sample so that an RK4 step can be
/// taken per interval. The box [0, L] spans nodes box_begin..box_end; the value
/// stored at those two nodes is the inside limit, the outside limit being 0.
struct SusceptibilityProfile {
  double x_origin = 0.0;
  double step = 0.0;
  std::size_t box_begin = 0;
  std::size_t box_end = 0;
  std::size_t refinement = 1;
  std::vector<double> nodes;
  std::vector<double> midpoints;

  std::size_t intervals() const { return midpoints.size(); }
  double x(std::size_t node) const { return x_origin + static_cast<double>(node) * step; }
  /// Value at the left end of interval i, taken from inside the interval.
  double start_value(std::size_t i) const { return i == box_end ? 0.0 : nodes[i]; }
  /// Value at the right end of interval i, taken from inside the interval.
  double end_value(std::size_t i) const { return i + 1 == box_begin ? 0.0 : nodes[i + 1]; }
  /// Rectangle rule over the half-step samples of [0, L); exact for the band-limited
  /// interpolant of a periodic density.
  double integral() const;

  /// Generic profile: chi_in_box(x) on [0, L], zero outside.
  static SusceptibilityProfile sample(double box_length, std::size_t box_points,
                                      std::size_t refinement, std::size_t padding_points,
                                      const std::function<double(double)>& chi_in_box);
  /// Uniform slab chi on [0, L].
  static SusceptibilityProfile uniform(double chi, double box_length, std::size_t box_points,
                                       std::size_t refinement, std::size_t padding_points);
};

/// chi(x) = zeta |psi(x)|^2 inside the box, 0 in the vacuum padding. The density
/// at sub-grid positions comes from band-limited interpolation of psi.
SusceptibilityProfile susceptibility_profile(const CondensateState& psi, const ModelParams& params);

}  // namespace atomlight
