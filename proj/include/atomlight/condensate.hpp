#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "atomlight/model.hpp"

namespace atomlight {

/// Condensate wavefunction sampled at x_j = j * L / N, j = 0..N-1, on the box
/// [0, L]. Normalized so that dx * sum |psi_j|^2 = 1. For hard-wall boundaries
/// psi_0 = 0 and the (implicit) sample at x = L is also zero.
struct CondensateState {
  std::vector<cplx> psi;
  double box_length = 1.0;
  double time = 0.0;
  Boundary boundary = Boundary::periodic;

  std::size_t size() const { return psi.size(); }
  double dx() const { return box_length / static_cast<double>(psi.size()); }
  double x(std::size_t j) const { return static_cast<double>(j) * dx(); }
  double norm() const;
  std::vector<double> density() const;
  /// Rescale to unit norm; throws NumericError for a zero or non-finite state.
  void normalize();
};

/// psi = 1/sqrt(L) (periodic) or the lowest box mode sqrt(2/L) sin(pi x / L) (hard wall).
CondensateState homogeneous_state(const ModelParams& params);

/// Adds deterministic band-limited complex noise (|q| <= q_cutoff) of relative
/// L2 amplitude `relative_amplitude`, then renormalizes.
void add_seed_noise(CondensateState& state, unsigned long long seed, double relative_amplitude,
                    double q_cutoff = 8.0 * kPi);

/// Homogeneous state plus deterministic band-limited complex noise with
/// |q| <= q_cutoff and relative L2 amplitude `relative_amplitude`.
CondensateState seeded_state(const ModelParams& params, unsigned long long seed,
                             double relative_amplitude = 1e-4, double q_cutoff = 8.0 * kPi);

}  // namespace atomlight
