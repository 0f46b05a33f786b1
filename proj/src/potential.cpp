#include "atomlight/potential.hpp"

#include "atomlight/errors.hpp"

namespace atomlight {

std::vector<double> optical_potential(const FieldState& fields, const ModelParams& params) {
  if (fields.box_points() != params.box_points())
    throw ConfigError("optical_potential: field grid does not match the condensate grid");
  auto v = fields.box_intensity_total();
  for (auto& x : v) x = -x;
  return v;
}

std::vector<double> trap_potential(const ModelParams& params) {
  const std::size_t n = params.box_points();
  std::vector<double> v(n, 0.0);
  if (params.trap_strength == 0.0) return v;
  const double dx = params.dx();
  const double center = 0.5 * params.box_length;
  for (std::size_t j = 0; j < n; ++j) {
    const double y = static_cast<double>(j) * dx - center;
    v[j] = 0.5 * params.trap_strength * y * y;
  }
  return v;
}

std::vector<double> total_potential(const FieldState& fields, const ModelParams& params) {
  auto v = optical_potential(fields, params);
  const auto trap = trap_potential(params);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += trap[j];
  return v;
}

}  // namespace atomlight
