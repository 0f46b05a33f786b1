#pragma once

// Split-step evolution of
//   i d/dt psi = [-(1/(2 pi)^2) d^2/dx^2 + V(x) + g |psi|^2] psi
// on the box [0, L] in recoil units.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "atomlight/condensate.hpp"
#include "atomlight/fft.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

struct ChemicalPotential {
  double mu = 0.0;
  /// Imaginary part of <psi|H|psi>; zero up to rounding.
  double mu_imag = 0.0;
  /// L2 norm of H psi - mu psi.
  double residual = 0.0;
};

/// Owns the transforms for one grid; a stepper is used by one thread at a time.
class SplitStepper {
 public:
  explicit SplitStepper(const ModelParams& params);
  SplitStepper(std::size_t points, double box_length, double g, Boundary boundary);

  /// Strang step exp(-i dt V/2) exp(-i dt T) exp(-i dt V/2), V including g|psi|^2.
  /// Real time: dt real. Imaginary time: dt = -i dtau, followed by renormalization.
  /// Throws NumericError tagged with step_index when the state turns non-finite.
  void step(CondensateState& state, std::span<const double> potential, cplx dt,
            std::size_t step_index = 0) const;

  /// One preconditioned descent step psi <- psi - (s + T)^{-1} (H - mu) psi,
  /// renormalized, with s = 2 max|V + g|psi|^2 - mu| + 1. A discretization of
  /// the same imaginary-time flow whose fixed points are exact eigenstates
  /// (no splitting error). Returns mu and the residual before the step.
  ChemicalPotential relax_step(CondensateState& state, std::span<const double> potential,
                               std::size_t step_index = 0) const;

  /// -(1/(2 pi)^2) psi'' evaluated spectrally.
  std::vector<cplx> apply_kinetic(std::span<const cplx> psi) const;
  double kinetic_energy(const CondensateState& state) const;
  /// E_kin + int V |psi|^2 + (g/2) int |psi|^4.
  double energy(const CondensateState& state, std::span<const double> potential) const;
  ChemicalPotential chemical_potential(const CondensateState& state,
                                       std::span<const double> potential) const;

  double g() const { return g_; }
  std::size_t size() const { return n_; }

 private:
  void kinetic_propagate(std::vector<cplx>& psi, cplx dt) const;
  /// psi <- f(T) psi for a kinetic multiplier f.
  template <class F>
  void kinetic_apply(std::vector<cplx>& psi, F&& multiplier) const;
  void check(const CondensateState& state) const;

  std::size_t n_;
  double box_length_;
  double g_;
  Boundary boundary_;
  std::variant<Fft, SineTransform> transform_;
  std::vector<double> kinetic_;  // eigenvalues q^2/(2 pi)^2 per transform mode
};

double kinetic_energy(const CondensateState& state);

ChemicalPotential chemical_potential_and_residual(const CondensateState& state,
                                                  std::span<const double> potential,
                                                  const ModelParams& params);

}  // namespace atomlight
