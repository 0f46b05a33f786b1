#include <doctest.h>

#include <cmath>

#include "atomlight/condensate.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/gpe.hpp"
#include "atomlight/potential.hpp"
#include "oracles/oracles.hpp"

using namespace atomlight;

namespace {
const cplx kI{0.0, 1.0};

ModelParams small_box(double length = 4.0, double g = 1.0) {
  ModelParams p;
  p.box_length = length;
  p.g_interaction = g;
  p.grid_points_per_wavelength = 32;
  return p;
}

CondensateState plane_wave(const ModelParams& p, int m) {
  auto s = homogeneous_state(p);
  const double q = kTwoPi * m / p.box_length;
  for (std::size_t j = 0; j < s.size(); ++j) s.psi[j] = std::exp(kI * q * s.x(j)) / std::sqrt(p.box_length);
  return s;
}

CondensateState modulated(const ModelParams& p, double eps, int m) {
  auto s = homogeneous_state(p);
  const double q = kTwoPi * m / p.box_length;
  for (std::size_t j = 0; j < s.size(); ++j) s.psi[j] = 1.0 + eps * std::cos(q * s.x(j)) + kI * 0.3 * eps * std::sin(2.0 * q * s.x(j));
  s.normalize();
  return s;
}
}  // namespace

TEST_CASE("free plane wave picks up the kinetic phase") {
  auto p = small_box();
  p.g_interaction = 0.0;
  const SplitStepper stepper(p);
  auto s = plane_wave(p, 8);  // q = 4 pi, e_q = 4
  const auto initial = s.psi;
  const std::vector<double> v(s.size(), 0.0);
  const double dt = 1e-3;
  for (int n = 0; n < 100; ++n) stepper.step(s, v, dt);
  const cplx phase = std::exp(-kI * 4.0 * 100.0 * dt);
  double err = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) err = std::max(err, std::abs(s.psi[j] - phase * initial[j]));
  CHECK(err < 1e-12);
  CHECK(s.time == doctest::Approx(0.1));
}

TEST_CASE("homogeneous state picks up the mean-field phase") {
  const auto p = small_box(4.0, 3.0);
  const SplitStepper stepper(p);
  auto s = homogeneous_state(p);
  const std::vector<double> v(s.size(), -0.5);
  for (int n = 0; n < 50; ++n) stepper.step(s, v, 2e-3);
  const cplx expected = std::exp(-kI * (3.0 / 4.0 - 0.5) * 0.1) / std::sqrt(4.0);
  for (std::size_t j = 0; j < s.size(); j += 17) CHECK(std::abs(s.psi[j] - expected) < 1e-12);
}

TEST_CASE("real-time evolution conserves norm and energy") {
  auto p = small_box(4.0, 2.0);
  p.trap_strength = 0.5;
  const SplitStepper stepper(p);
  auto s = modulated(p, 0.3, 3);
  const auto v = trap_potential(p);
  const double e0 = stepper.energy(s, v);
  double norm_drift = 0.0;
  for (std::size_t n = 0; n < 10000; ++n) {
    stepper.step(s, v, 1e-3, n);
    norm_drift = std::max(norm_drift, std::abs(s.norm() - 1.0));
    if (n == 999) CHECK(std::abs(stepper.energy(s, v) - e0) < 1e-6 * std::abs(e0));
  }
  CHECK(norm_drift < 1e-8);
}

TEST_CASE("Strang splitting is second order in the time step") {
  auto p = small_box(4.0, 5.0);
  p.trap_strength = 1.0;
  const SplitStepper stepper(p);
  const auto v = trap_potential(p);
  const auto run = [&](double dt, int steps) {
    auto s = modulated(p, 0.4, 2);
    for (int n = 0; n < steps; ++n) stepper.step(s, v, dt);
    return s.psi;
  };
  const auto ref = run(1e-4, 4000);
  const auto coarse = run(4e-3, 100);
  const auto fine = run(2e-3, 200);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    e1 += std::norm(coarse[j] - ref[j]);
    e2 += std::norm(fine[j] - ref[j]);
  }
  const double ratio = std::sqrt(e1 / e2);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("imaginary time lowers the energy monotonically") {
  auto p = small_box(4.0, 2.0);
  p.trap_strength = 2.0;
  const SplitStepper stepper(p);
  const auto v = trap_potential(p);
  auto s = modulated(p, 0.5, 1);
  double previous = stepper.energy(s, v);
  for (int n = 0; n < 2000; ++n) {
    stepper.step(s, v, cplx(0.0, -1e-3));
    const double e = stepper.energy(s, v);
    CHECK(e <= previous + 1e-14);
    previous = e;
  }
  CHECK(std::abs(s.norm() - 1.0) < 1e-13);
}

TEST_CASE("kinetic energy") {
  const auto p = small_box();
  CHECK(std::abs(kinetic_energy(homogeneous_state(p))) < 1e-15);
  // |psi|^2 = 1/L, q = 2 pi gives e_q = 1.
  CHECK(kinetic_energy(plane_wave(p, 4)) == doctest::Approx(1.0).epsilon(1e-13));

  const double eps = 0.2;
  const auto s = modulated(p, eps, 3);
  const double q = kTwoPi * 3 / p.box_length;
  // Undo the normalization constant to get psi' analytically.
  const cplx c = s.psi[0] / (1.0 + eps);
  const auto dpsi = [&](double x) {
    return c * (-eps * q * std::sin(q * x) + kI * 0.6 * eps * q * std::cos(2.0 * q * x));
  };
  CHECK(kinetic_energy(s) == doctest::Approx(oracle::kinetic_quadrature(dpsi, p.box_length, 4096)).epsilon(1e-8));
}

TEST_CASE("chemical potential of the homogeneous state in plane-wave light") {
  auto p = small_box(10.0, 1.5);
  const auto s = homogeneous_state(p);
  const double field2 = 0.8;  // |C|^2 per beam
  const std::vector<double> v(s.size(), -2.0 * field2);
  const auto cp = chemical_potential_and_residual(s, v, p);
  CHECK(cp.mu == doctest::Approx(1.5 / 10.0 - 2.0 * field2).epsilon(1e-13));
  CHECK(cp.residual < 1e-10);
  CHECK(std::abs(cp.mu_imag) < 1e-12);
}

TEST_CASE("harmonic trap ground state in imaginary time") {
  auto p = small_box(6.0, 0.0);
  p.trap_strength = 4.0 * (kTwoPi * kTwoPi);  // omega^2 / (2 pi)^2 scaled so omega = 2 pi * sqrt(2)/2
  const SplitStepper stepper(p);
  const auto v = trap_potential(p);
  auto s = modulated(p, 0.5, 1);
  for (int n = 0; n < 20000; ++n) stepper.step(s, v, cplx(0.0, -2e-4));
  const auto cp = stepper.chemical_potential(s, v);
  // H = -(1/(2pi)^2) d2 + (E/2) x^2 has ground energy (1/2) omega with omega = 2 sqrt(E) / (2 pi).
  const double omega = 2.0 * std::sqrt(p.trap_strength / 2.0) / kTwoPi;
  CHECK(cp.mu == doctest::Approx(0.5 * omega).epsilon(1e-5));
  CHECK(cp.residual < 1e-5);
}

TEST_CASE("hard-wall boundary") {
  auto p = small_box(4.0, 0.0);
  p.boundary = Boundary::hard_wall;
  const SplitStepper stepper(p);
  auto s = homogeneous_state(p);
  // sqrt(2/L) sin(pi x / L): kinetic energy (pi/L)^2 / (2 pi)^2.
  const double e1 = std::pow(kPi / p.box_length, 2) / (kTwoPi * kTwoPi);
  CHECK(stepper.kinetic_energy(s) == doctest::Approx(e1).epsilon(1e-12));
  const std::vector<double> v(s.size(), 0.0);
  const auto cp = stepper.chemical_potential(s, v);
  CHECK(cp.mu == doctest::Approx(e1).epsilon(1e-12));
  CHECK(cp.residual < 1e-10);
  const auto initial = s.psi;
  for (int n = 0; n < 200; ++n) stepper.step(s, v, 1e-2);
  const cplx phase = std::exp(-kI * e1 * 2.0);
  for (std::size_t j = 0; j < s.size(); j += 13) CHECK(std::abs(s.psi[j] - phase * initial[j]) < 1e-12);
  CHECK(s.psi[0] == cplx(0.0));
}

TEST_CASE("non-finite potential raises a numeric error with the step") {
  const auto p = small_box();
  const SplitStepper stepper(p);
  auto s = homogeneous_state(p);
  std::vector<double> v(s.size(), 0.0);
  v[5] = std::numeric_limits<double>::quiet_NaN();
  try {
    stepper.step(s, v, 1e-3, 42);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.step() == 42);
  }
  CHECK_THROWS_AS(stepper.step(s, std::vector<double>(3, 0.0), 1e-3), ConfigError);
}
