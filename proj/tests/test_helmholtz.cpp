#include <doctest.h>

#include <cmath>
#include <random>

#include "atomlight/errors.hpp"
#include "atomlight/helmholtz.hpp"
#include "atomlight/potential.hpp"
#include "oracles/oracles.hpp"

using namespace atomlight;

namespace {
const cplx kI{0.0, 1.0};

SusceptibilityProfile slab(double chi, double length, std::size_t ppw, std::size_t refinement) {
  const auto n = static_cast<std::size_t>(std::llround(length * static_cast<double>(ppw)));
  return SusceptibilityProfile::uniform(chi, length, n, refinement, 2 * ppw);
}

// Smooth random profile: a few Fourier modes with a smooth window, chi >= 0.
SusceptibilityProfile random_profile(std::mt19937_64& rng, double length, std::size_t refinement) {
  std::uniform_real_distribution<double> amp(0.0, 0.02), phase(0.0, kTwoPi), wav(1.0, 15.0);
  const double a0 = amp(rng), a1 = amp(rng), a2 = amp(rng);
  const double k1 = wav(rng), k2 = wav(rng), p1 = phase(rng), p2 = phase(rng);
  const auto n = static_cast<std::size_t>(std::llround(length * 64));
  return SusceptibilityProfile::sample(length, n, refinement, 64, [=](double x) {
    const double w = std::sin(kPi * x / length);
    return w * w * (a0 + a1 * (1.0 + std::cos(k1 * x + p1)) + a2 * (1.0 + std::sin(k2 * x + p2)));
  });
}
}  // namespace

TEST_CASE("vacuum plane wave") {
  const auto chi = slab(0.0, 10.0, 64, 32);
  const auto sol = integrate_helmholtz_ivp(chi, std::exp(kI * kTwoPi * chi.x(0)),
                                           kI * kTwoPi * std::exp(kI * kTwoPi * chi.x(0)),
                                           Direction::left_to_right);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.field.size(); ++i)
    err = std::max(err, std::abs(sol.field[i] - std::exp(kI * kTwoPi * chi.x(i))));
  CHECK(err < 1e-10);
}

TEST_CASE("uniform medium propagates with the effective wavenumber") {
  // zeta = 0.1, L = 100 gives chi = 1e-3 and k_eff = 2 pi sqrt(1.001).
  const double c = 1e-3;
  const double k = kTwoPi * std::sqrt(1.0 + c);
  // No padding: the whole domain is medium, so exp(i k x) is an exact solution.
  const auto inside = SusceptibilityProfile::uniform(c, 20.0, 20 * 64, 32, 0);
  const auto sol = integrate_helmholtz_ivp(inside, std::exp(kI * k * inside.x(0)),
                                           kI * k * std::exp(kI * k * inside.x(0)), Direction::left_to_right);
  double err = 0.0;
  for (std::size_t i = 0; i < sol.field.size(); ++i)
    err = std::max(err, std::abs(sol.field[i] - std::exp(kI * k * inside.x(i))));
  CHECK(err < 1e-9);
}

TEST_CASE("Wronskian of two solutions is conserved") {
  std::mt19937_64 rng(11);
  const auto chi = random_profile(rng, 20.0, 8);
  const auto a = integrate_helmholtz_ivp(chi, 1.0, 0.0, Direction::left_to_right);
  const auto b = integrate_helmholtz_ivp(chi, 0.0, 1.0, Direction::left_to_right);
  const cplx w0 = a.field[0] * b.derivative[0] - b.field[0] * a.derivative[0];
  double drift = 0.0;
  for (std::size_t i = 0; i < a.field.size(); ++i) {
    const cplx w = a.field[i] * b.derivative[i] - b.field[i] * a.derivative[i];
    drift = std::max(drift, std::abs(w - w0));
  }
  CHECK(drift < 1e-9);
}

TEST_CASE("vacuum has no reflection") {
  const auto c = scattering_coefficients(slab(0.0, 10.0, 64, 32));
  CHECK(std::abs(c.r) < 1e-12);
  CHECK(std::abs(c.t - 1.0) < 1e-9);
}

TEST_CASE("uniform slab matches the closed-form reflectance") {
  for (double chi : {1e-4, 1e-3, 1e-2}) {
    for (double length : {10.0, 100.0}) {
      CAPTURE(chi);
      CAPTURE(length);
      const auto c = scattering_coefficients(slab(chi, length, 64, 16));
      CHECK(std::abs(c.reflectance() - oracle::slab_reflectance(chi, length)) < 1e-8);
      CHECK(std::abs(c.reflectance() + c.transmittance() - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("RK4 is fourth order") {
  const double chi = 1e-2, length = 10.0;
  const auto fine = scattering_coefficients(slab(chi, length, 32, 64));
  const auto amp_err = [&](std::size_t refinement) {
    const auto c = scattering_coefficients(slab(chi, length, 32, refinement));
    return std::abs(c.r - fine.r) + std::abs(c.t - fine.t);
  };
  const double order = std::log2(amp_err(1) / amp_err(2));
  CHECK(order == doctest::Approx(4.0).epsilon(0.03));
  CHECK(std::log2(amp_err(2) / amp_err(4)) == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("flux conservation and reciprocity for random smooth profiles") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto chi = random_profile(rng, 15.0, 16);
    const auto left = scattering_coefficients(chi, Incidence::left);
    const auto right = scattering_coefficients(chi, Incidence::right);
    CHECK(std::abs(left.reflectance() + left.transmittance() - 1.0) < 1e-9);
    CHECK(std::abs(right.reflectance() + right.transmittance() - 1.0) < 1e-9);
    CHECK(std::abs(left.t - right.t) < 1e-9);
    CHECK(std::abs(left.reflectance() - right.reflectance()) < 1e-9);
  }
}

TEST_CASE("backward solve agrees with the two-pass construction") {
  for (double chi : {1e-3, 5e-2}) {
    const auto s = slab(chi, 10.0, 64, 8);
    const auto direct = scattering_coefficients(s);
    const auto oracle_rt = oracle::two_pass_coefficients(s);
    CHECK(std::abs(direct.r - oracle_rt.r) < 1e-9);
    CHECK(std::abs(direct.t - oracle_rt.t) < 1e-9);
  }
  // Symmetric structured profile.
  const auto symmetric = SusceptibilityProfile::sample(12.0, 12 * 64, 8, 64, [](double x) {
    return 0.05 * std::pow(std::cos(kTwoPi * (x - 6.0) * 1.003), 2) * std::exp(-std::pow((x - 6.0) / 4.0, 2));
  });
  const auto direct = scattering_coefficients(symmetric);
  const auto oracle_rt = oracle::two_pass_coefficients(symmetric);
  CHECK(direct.reflectance() > 1e-3);
  CHECK(std::abs(direct.r - oracle_rt.r) < 1e-9);
  CHECK(std::abs(direct.t - oracle_rt.t) < 1e-9);
}

TEST_CASE("padding without vacuum is rejected") {
  auto s = slab(1e-3, 10.0, 64, 1);
  s.nodes.front() = 1e-3;
  CHECK_THROWS_AS(scattering_coefficients(s), ConfigError);
}

TEST_CASE("absurd susceptibility overflows into a numeric error") {
  const auto s = SusceptibilityProfile::uniform(-1e8, 100.0, 3200, 1, 32);
  CHECK_THROWS_AS(scattering_coefficients(s), NumericError);
}

TEST_CASE("driven fields") {
  ModelParams p;
  p.zeta = 0.1;
  p.box_length = 20.0;
  p.intensity_left = p.intensity_right = 30.0;
  p.grid_points_per_wavelength = 64;
  p.field_refinement = 4;
  const auto chi = SusceptibilityProfile::sample(20.0, p.box_points(), 4, p.padding_points(),
                                                 [](double x) { return 1e-3 * (1.0 + 0.3 * std::cos(0.5 * (x - 10.0))); });
  const auto f = solve_driven_fields(chi, p);
  const double field2 = field_amplitude_squared(30.0, 0.1);

  SUBCASE("incoming amplitude and absence of a wave from the far side") {
    // Outgoing only on the right for E_L: |E_L| constant in the right padding.
    const std::size_t last = f.nodes() - 1;
    CHECK(std::abs(std::norm(f.e_left[last]) - std::norm(f.e_left[last - 7])) < 1e-10 * field2);
    CHECK(std::abs(std::norm(f.e_left[last]) - field2 * f.scattering.transmittance()) < 1e-9 * field2);
  }

  SUBCASE("mirror symmetry under equal drive") {
    const auto il = f.box_intensity_left();
    const auto ir = f.box_intensity_right();
    // Profile symmetric about L/2: I_L(x_j) = I_R(L - x_j).
    const std::size_t n = il.size();
    double err = 0.0;
    for (std::size_t j = 1; j < n; ++j) err = std::max(err, std::abs(il[j] - ir[n - j]));
    CHECK(err < 1e-9 * field2);
  }

  SUBCASE("optical potential") {
    const auto v = optical_potential(f, p);
    for (double x : v) CHECK(x <= 0.0);
  }
}

TEST_CASE("optical potential of plane waves") {
  const auto grid = slab(0.0, 10.0, 64, 1);
  ModelParams p;
  p.box_length = 10.0;
  const auto f = plane_wave_fields(grid, kTwoPi, 3.0, 3.0);
  for (double v : optical_potential(f, p)) CHECK(v == doctest::Approx(-6.0).epsilon(1e-14));
  const auto zero = plane_wave_fields(grid, kTwoPi, 0.0, 0.0);
  for (double v : optical_potential(zero, p)) CHECK(v == 0.0);
}

TEST_CASE("homogeneous condensate: edge ripple fades with system size") {
  // Interior |E_L|^2 deviates from the drive only through edge reflections,
  // |r| <= chi/2 with chi = zeta/L, so the ripple is at most about 2 zeta/L.
  for (double length : {10.0, 40.0, 160.0}) {
    ModelParams p;
    p.zeta = 0.1;
    p.box_length = length;
    p.intensity_left = 1.0 / (4.0 * 0.1);  // |E|^2 = 1
    // Fine enough that RK4 amplitude dissipation does not add a tilt.
    p.grid_points_per_wavelength = 64;
    p.field_refinement = 4;
    const auto chi = SusceptibilityProfile::uniform(p.zeta / length, length, p.box_points(), 4, p.padding_points());
    const auto il = solve_driven_fields(chi, p).box_intensity_left();
    const auto [lo, hi] = std::minmax_element(il.begin(), il.end());
    CAPTURE(length);
    CHECK(*hi - *lo < 2.1 * p.zeta / length);
  }
}
