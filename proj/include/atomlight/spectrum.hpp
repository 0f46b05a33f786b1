#pragma once

// Collective excitations: the homogeneous dispersion in closed form and the
// full linearization of the coupled system about a stationary state.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "atomlight/condensate.hpp"
#include "atomlight/helmholtz.hpp"
#include "atomlight/model.hpp"
#include "atomlight/observables.hpp"

namespace atomlight {

/// omega_q in recoil energies for the homogeneous state; purely imaginary
/// (positive imaginary part) where omega^2 < 0. Throws DomainError at the pole.
cplx homogeneous_dispersion(const ModelParams& params, double q);

struct DispersionResult {
  std::vector<double> q_values;
  std::vector<cplx> omega;
};

DispersionResult homogeneous_dispersion_curve(const ModelParams& params, std::span<const double> q_values);

struct SpectrumOptions {
  /// Condensate modes |k| <= q_cutoff, spacing 2 pi / L.
  double q_cutoff = 8.0 * kPi;
  /// Extra bandwidth of the auxiliary basis that carries the density
  /// perturbation and the scattered fields.
  double aux_margin = 4.4 * kPi;
  /// Eigenvalues of Q below pinv_tolerance * 2 k_eff are dropped.
  double pinv_tolerance = 1e-6;
};

/// Light-mediated coupling of one beam on the condensate basis, with
/// E0 = exp(i kappa x) u(x):
///   a       = (2 pi)^2 zeta M_psi0 M_u Q_{-kappa}^+ M_u* M_psi0*   (E0* applied first)
///   a_tilde = (2 pi)^2 zeta M_psi0 M_u* Q_{kappa}^+ M_u M_psi0*
/// where Q_kappa(m, n) = -(kappa + k_m)^2 delta_mn + K^2_(m - n),
/// K^2 = (2 pi)^2 (1 + zeta |psi0|^2). For the homogeneous state
/// a(q, q) = -(2 pi)^2 zeta |C|^2 / (L (q^2 - 2 kappa q)).
struct BeamCoupling {
  double kappa = 0.0;
  Eigen::MatrixXcd a;
  Eigen::MatrixXcd a_tilde;
  /// Same operators with psi0 replacing psi0* on the right (the psi* block).
  Eigen::MatrixXcd b;
  Eigen::MatrixXcd b_tilde;
  std::size_t dropped = 0;  // pseudoinverse eigenvalues discarded (both Q)
};

inline constexpr double kRealTolerance = 1e-4;

struct LinearizationMatrix {
  std::vector<double> momenta;  // k_n = n dq, n = -M..M
  double dq = 0.0;
  double q_cutoff = 0.0;
  double mu = 0.0;
  double k_eff = 0.0;
  Eigen::MatrixXcd kinetic;       // diag k^2 / (2 pi)^2
  Eigen::MatrixXcd potential;     // M[V_ext - I_tot + 2 g |psi0|^2] - mu
  Eigen::MatrixXcd interaction;   // M[g psi0^2]
  std::array<BeamCoupling, 2> beams;  // left, right
  Eigen::MatrixXcd a_block;       // kinetic + potential + sum(a + a_tilde)
  Eigen::MatrixXcd b_block;       // interaction + sum(b + b_tilde)
  /// psi0 was real after removing its global phase (imaginary remainder
  /// below kRealTolerance, then dropped): A and B are real in the cos/sin
  /// basis and the spectrum follows from omega^2 = eig (A - B)(A + B).
  bool real_form = false;
  double reality_defect = 0.0;  // max |Im psi0| / max |psi0| after the phase rotation
  /// i d/dt (dpsi, dpsi*) = R (dpsi, dpsi*):  R = [[A, B], [-conj(B), -conj(A)]]
  /// with conj(X)_mn = (X_{-m,-n})^*.
  Eigen::MatrixXcd r;

  std::size_t modes() const { return momenta.size(); }
  std::size_t dropped() const { return beams[0].dropped + beams[1].dropped; }
};

/// Requires a periodic state on the grid of `params` and fields solved on the
/// same grid (analytic plane-wave fields for the homogeneous reference).
LinearizationMatrix build_linearization_matrix(const CondensateState& state, const FieldState& fields,
                                               const ModelParams& params, const SpectrumOptions& options = {});

struct Mode {
  cplx omega;
  double q_max = 0.0;
  Eigen::VectorXcd vector;  // (u_n, v_n) on the 2M basis
};

/// All 2M eigenpairs, each labeled by |k| of its largest component
/// |u_n|^2 + |v_n|^2, sorted by (q_max, Re omega). Real-form matrices go
/// through the M x M real reduction unless full_solve is set; otherwise R is
/// diagonalized directly. Throws NumericError when the eigensolver fails.
std::vector<Mode> diagonalize_and_classify(const LinearizationMatrix& matrix, bool full_solve = false);

/// Keep one member of each (omega, -conj omega) pair: Re omega > tol, or
/// |Re omega| <= tol with Im omega >= 0.
std::vector<Mode> positive_branch(const std::vector<Mode>& modes, double tol = 1e-8);

/// Largest imaginary part in the spectrum.
double max_growth_rate(const std::vector<Mode>& modes);

struct PhononGap {
  bool found = false;
  double gap = 0.0;
  double q_max = 0.0;
  std::string reason;
};

/// Smallest Re omega among positive-branch modes with q_max > 2 k_ref and
/// Re omega above zero_tol (excludes the translation zero modes). k_ref = pi / d
/// with d the measured density period; without a lattice there is no phonon
/// branch and the result says so.
PhononGap phonon_gap(const std::vector<Mode>& modes, const LatticeMeasurement& density_lattice,
                     double zero_tol = 1e-4);

/// Delta^2 = 4 e_k (2 e_k + g n), e_k = k_eff^2 / (2 pi)^2, n = 1/L.
double phonon_gap_estimate(const ModelParams& params);

struct BandGap {
  double gap = 0.0;   // jump across q0 beyond the linear trend of the neighbors
  double step = 0.0;  // mean |omega| step between neighboring bins
  bool open() const { return std::abs(gap) > step; }
};

/// Lowest positive frequency (above zero_tol) per q_max bin of width dq; with
/// bins b- <= q0 < b+, gap = (w(b+) - w(b-)) - (slope below + slope above)/2.
/// Throws DomainError when one of the four bins is empty.
BandGap band_gap(const std::vector<Mode>& modes, double q0, double dq, double zero_tol = 1e-4);

/// Momentum distribution |u_n|^2 + |v_n|^2 of a mode on the matrix momenta.
std::vector<double> momentum_distribution(const Mode& mode, std::size_t modes);

}  // namespace atomlight
