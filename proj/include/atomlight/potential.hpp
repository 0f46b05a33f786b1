#pragma once

#include <vector>

#include "atomlight/helmholtz.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

/// V_opt = -(|E_L|^2 + |E_R|^2) in recoil units at the condensate grid points.
std::vector<double> optical_potential(const FieldState& fields, const ModelParams& params);

/// Harmonic trap (E_trap / 2) (x - L/2)^2 centered in the box; zero when trap_strength = 0.
std::vector<double> trap_potential(const ModelParams& params);

/// Trap plus optical potential.
std::vector<double> total_potential(const FieldState& fields, const ModelParams& params);

}  // namespace atomlight
