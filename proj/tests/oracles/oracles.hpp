#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solvers; each function is an independent route to a value the library
// computes another way.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reflectance of a lossless dielectric slab of index n and thickness L (in
/// vacuum wavelengths) at normal incidence.
inline double slab_reflectance(double chi, double length) {
  const double n = std::sqrt(1.0 + chi);
  const double phase = kTwoPi * n * length;
  const double s2 = std::sin(phase) * std::sin(phase);
  const double c2 = std::cos(phase) * std::cos(phase);
  const double num = (n * n - 1.0) * (n * n - 1.0) * s2;
  return num / (4.0 * n * n * c2 + (n * n + 1.0) * (n * n + 1.0) * s2);
}

/// omega^2 of the homogeneous state written out from the linearized equations:
/// omega^2 = e_q [e_q + 2 g/L - 8 zeta |C|^2 (2 pi)^2 / (L (q^2 - 4 k^2))],
/// e_q = q^2 / (2 pi)^2, k = 2 pi sqrt(1 + zeta / L), |C|^2 = field_squared.
inline double omega_squared(double zeta, double length, double g, double field_squared, double q) {
  const double k = kTwoPi * std::sqrt(1.0 + zeta / length);
  const double eq = q * q / (kTwoPi * kTwoPi);
  return eq * (eq + 2.0 * g / length -
               8.0 * zeta * field_squared * kTwoPi * kTwoPi / (length * (q * q - 4.0 * k * k)));
}

/// Smallest root in [lo, hi] of a function that changes sign once, by bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Emergent lattice period of the homogeneous medium of density 1/L, lambda_0 = 1.
inline double emergent_spacing(double zeta, double length) { return 0.5 / std::sqrt(1.0 + zeta / length); }

/// Per-beam intensity at which omega^2 of the homogeneous state first reaches
/// zero at q = 2k + 2 pi / L, found by bisection on omega_squared with the
/// field convention |C|^2 = 4 zeta I.
inline double roton_threshold(double zeta, double length, double g) {
  const double k = kTwoPi * std::sqrt(1.0 + zeta / length);
  const double q = 2.0 * k + kTwoPi / length;
  const auto w2 = [&](double intensity) { return omega_squared(zeta, length, g, 4.0 * zeta * intensity, q); };
  double hi = 1.0;
  while (w2(hi) > 0.0) hi *= 2.0;
  return bisect(w2, 0.0, hi, 1e-13);
}

/// Lattice-phonon gap estimate near threshold: Delta^2 = 4 E_k (2 E_k + g n),
/// E_k = (k_eff / k_0)^2 recoil energies, n = 1 / L.
inline double phonon_gap_estimate(double zeta, double length, double g) {
  const double ek = 1.0 + zeta / length;
  return 2.0 * std::sqrt(ek * (2.0 * ek + g / length));
}

/// Real-space kinetic energy (1/(2 pi)^2) int |psi'|^2 by the rectangle rule on
/// a periodic grid, with psi' supplied analytically.
inline double kinetic_quadrature(const std::function<std::complex<double>(double)>& dpsi,
                                 double length, std::size_t points) {
  const double h = length / static_cast<double>(points);
  double s = 0.0;
  for (std::size_t j = 0; j < points; ++j) s += std::norm(dpsi(static_cast<double>(j) * h));
  return s * h / (kTwoPi * kTwoPi);
}

}  // namespace oracle

#include "atomlight/helmholtz.hpp"

namespace oracle {

/// Reflection/transmission from one forward integration with arbitrary
/// incoming/outgoing amplitudes on the left, solving
///   B_L = R A_L + T D_R,  C_R = T A_L + R D_R
/// for (R, T). Valid for mirror-symmetric profiles, where both sides share R.
inline atomlight::ScatteringCoefficients two_pass_coefficients(const atomlight::SusceptibilityProfile& chi) {
  using atomlight::cplx;
  const cplx i(0.0, 1.0);
  const double x0 = chi.x(0);
  const double xn = chi.x(chi.nodes.size() - 1);
  const cplx a_l(0.7, 0.2), b_l(-0.3, 0.5);
  const cplx e0 = a_l * std::exp(i * kTwoPi * x0) + b_l * std::exp(-i * kTwoPi * x0);
  const cplx de0 = i * kTwoPi * (a_l * std::exp(i * kTwoPi * x0) - b_l * std::exp(-i * kTwoPi * x0));
  const auto sol = atomlight::integrate_helmholtz_ivp(chi, e0, de0, atomlight::Direction::left_to_right);
  const cplx en = sol.field.back(), den = sol.derivative.back();
  // Right side: E = C_R exp(i k x) + D_R exp(-i k x).
  const cplx c_r = 0.5 * (en + den / (i * kTwoPi)) * std::exp(-i * kTwoPi * xn);
  const cplx d_r = 0.5 * (en - den / (i * kTwoPi)) * std::exp(i * kTwoPi * xn);
  const cplx det = a_l * a_l - d_r * d_r;
  return {(b_l * a_l - c_r * d_r) / det, (c_r * a_l - b_l * d_r) / det};
}

}  // namespace oracle
