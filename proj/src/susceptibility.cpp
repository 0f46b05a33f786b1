#include "atomlight/susceptibility.hpp"

#include <cmath>

#include "atomlight/errors.hpp"
#include "atomlight/fft.hpp"

namespace atomlight {

double SusceptibilityProfile::integral() const {
  double s = 0.0;
  for (std::size_t i = box_begin; i < box_end; ++i) s += nodes[i] + midpoints[i];
  return 0.5 * step * s;
}

namespace {
SusceptibilityProfile empty_profile(double box_length, std::size_t box_points, std::size_t refinement,
                                    std::size_t padding_points) {
  // Zero padding is allowed here (medium-only grids); scattering rejects it later.
  if (box_points == 0 || refinement == 0)
    throw ConfigError("susceptibility grid: box_points and refinement must be > 0");
  SusceptibilityProfile p;
  p.refinement = refinement;
  p.step = box_length / static_cast<double>(box_points * refinement);
  p.box_begin = padding_points * refinement;
  p.box_end = p.box_begin + box_points * refinement;
  p.x_origin = -static_cast<double>(p.box_begin) * p.step;
  const std::size_t intervals = p.box_end + p.box_begin;
  p.nodes.assign(intervals + 1, 0.0);
  p.midpoints.assign(intervals, 0.0);
  return p;
}
}  // namespace

SusceptibilityProfile SusceptibilityProfile::sample(double box_length, std::size_t box_points,
                                                    std::size_t refinement,
                                                    std::size_t padding_points,
                                                    const std::function<double(double)>& chi_in_box) {
  auto p = empty_profile(box_length, box_points, refinement, padding_points);
  for (std::size_t i = p.box_begin; i <= p.box_end; ++i) p.nodes[i] = chi_in_box(p.x(i));
  for (std::size_t i = p.box_begin; i < p.box_end; ++i) p.midpoints[i] = chi_in_box(p.x(i) + 0.5 * p.step);
  return p;
}

SusceptibilityProfile SusceptibilityProfile::uniform(double chi, double box_length,
                                                     std::size_t box_points, std::size_t refinement,
                                                     std::size_t padding_points) {
  return sample(box_length, box_points, refinement, padding_points, [chi](double) { return chi; });
}

SusceptibilityProfile susceptibility_profile(const CondensateState& psi, const ModelParams& params) {
  params.validate();
  const std::size_t n = params.box_points();
  if (psi.size() != n || std::abs(psi.box_length - params.box_length) > 1e-12 * params.box_length ||
      psi.boundary != params.boundary)
    throw ConfigError("susceptibility_profile: condensate grid does not match parameters");
  const auto refinement = static_cast<std::size_t>(params.field_refinement);
  auto p = empty_profile(params.box_length, n, refinement, params.padding_points());
  if (params.zeta == 0.0) return p;

  // Half-step samples of psi on [0, L).
  const std::size_t factor = 2 * refinement;
  const auto fine = psi.boundary == Boundary::periodic ? upsample_periodic(psi.psi, factor)
                                                       : upsample_sine(psi.psi, factor);
  for (std::size_t s = 0; s < fine.size(); ++s) {
    const double chi = params.zeta * std::norm(fine[s]);
    const std::size_t i = p.box_begin + s / 2;
    if (s % 2 == 0)
      p.nodes[i] = chi;
    else
      p.midpoints[i] = chi;
  }
  // Sample at x = L: periodic image of x = 0, or the wall zero.
  p.nodes[p.box_end] = psi.boundary == Boundary::periodic ? p.nodes[p.box_begin] : 0.0;
  return p;
}

}  // namespace atomlight
