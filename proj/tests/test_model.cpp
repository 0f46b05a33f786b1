#include <doctest.h>

#include <cmath>

#include "atomlight/condensate.hpp"
#include "atomlight/errors.hpp"
#include "atomlight/model.hpp"
#include "atomlight/potential.hpp"
#include "atomlight/susceptibility.hpp"
#include "oracles/oracles.hpp"

using namespace atomlight;

namespace {
ModelParams params_for(double zeta, double length, double g = 1.0) {
  ModelParams p;
  p.zeta = zeta;
  p.box_length = length;
  p.g_interaction = g;
  p.grid_points_per_wavelength = 32;
  return p;
}
}  // namespace

TEST_CASE("parameter validation names the offending key") {
  ModelParams p;
  p.intensity_left = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("intensity_left"), ConfigError);
  p = ModelParams{};
  p.grid_points_per_wavelength = 16;
  CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("grid_points_per_wavelength"), ConfigError);
  p = ModelParams{};
  p.zeta = -0.1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_NOTHROW(ModelParams{}.validate());
}

TEST_CASE("effective wavenumber") {
  CHECK(effective_wavenumber(params_for(0.0, 100), 0.01) == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(effective_wavenumber(params_for(0.1, 100), 0.01) ==
        doctest::Approx(kTwoPi * 1.000499875062461).epsilon(1e-14));
  CHECK(effective_wavenumber(params_for(0.2, 100), 0.01) ==
        doctest::Approx(kTwoPi * 1.000999500499376).epsilon(1e-14));
  CHECK_THROWS_AS(effective_wavenumber(params_for(0.1, 100), -1.0), DomainError);
}

TEST_CASE("lattice spacing") {
  CHECK(lattice_spacing(params_for(0.0, 100)) == 0.5);
  CHECK(lattice_spacing(params_for(0.1, 100)) == doctest::Approx(0.4997501873438866).epsilon(1e-14));
  CHECK(lattice_spacing(params_for(0.1, 10)) == doctest::Approx(0.49751859510499463).epsilon(1e-14));

  double previous = 0.5;
  for (double zeta : {0.01, 0.05, 0.1, 0.2, 0.4, 1.0}) {
    const auto p = params_for(zeta, 50);
    const double d = lattice_spacing(p);
    CHECK(d < previous);
    CHECK(d * effective_wavenumber(p, p.mean_density()) == doctest::Approx(kPi).epsilon(1e-15));
    previous = d;
  }
}

TEST_CASE("critical intensity: roton zero") {
  auto p = params_for(0.1, 120);
  const double ic = critical_intensity_closed_form(p);
  p.intensity_left = p.intensity_right = ic;
  const double k = effective_wavenumber(p, p.mean_density());
  const double q = 2.0 * k + kTwoPi / p.box_length;
  CHECK(std::abs(dispersion_squared(p, q)) < 1e-12);
}

TEST_CASE("critical intensity matches bisection on the dispersion relation") {
  const double zeta = 0.1, length = 120.0, g = 1.0;
  const double k = oracle::kTwoPi * std::sqrt(1.0 + zeta / length);
  const double q = 2.0 * k + oracle::kTwoPi / length;
  // Drive intensity I enters as |C|^2 = 4 zeta I.
  const double bisected = oracle::bisect(
      [&](double intensity) { return oracle::omega_squared(zeta, length, g, 4.0 * zeta * intensity, q); },
      0.0, 1e4, 1e-13);
  const double ic = critical_intensity_closed_form(params_for(zeta, length, g));
  CHECK(ic == doctest::Approx(bisected).epsilon(1e-8));
}

TEST_CASE("critical intensity scales as 1/zeta^2") {
  const double large = 1e9;
  const double i1 = critical_intensity_closed_form(params_for(0.1, large));
  const double i2 = critical_intensity_closed_form(params_for(0.2, large));
  CHECK(i1 / i2 == doctest::Approx(4.0).epsilon(1e-6));
  // Infinite-system value 1 / (2 zeta^2).
  CHECK(i1 == doctest::Approx(50.0).epsilon(1e-6));

  const double a = critical_intensity_closed_form(params_for(0.05, 120));
  const double b = critical_intensity_closed_form(params_for(0.4, 120));
  const double slope = std::log(b / a) / std::log(0.4 / 0.05);
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.02));

  CHECK_THROWS_AS(critical_intensity_closed_form(params_for(0.0, 120)), DomainError);
}

TEST_CASE("grid threshold lies below the continuum roton threshold") {
  const auto p = params_for(0.1, 100);
  const double k = effective_wavenumber(p, p.mean_density());
  const double dq = kTwoPi / p.box_length;
  const double q_grid = (std::floor(2.0 * k / dq) + 1.0) * dq;
  CHECK(critical_intensity_on_grid(p) == doctest::Approx(critical_intensity_at(p, q_grid)));
  CHECK(critical_intensity_on_grid(p) < critical_intensity_closed_form(p));
}

TEST_CASE("dispersion: light-off limit is the Bogoliubov spectrum") {
  auto p = params_for(0.1, 100, 1.0);
  for (double q : {0.1, 1.0, 5.0, 12.0, 20.0}) {
    const double e = q * q / (kTwoPi * kTwoPi);
    CHECK(dispersion_squared(p, q) == doctest::Approx(e * (e + 2.0 / 100.0)).epsilon(1e-14));
  }
  p.intensity_left = p.intensity_right = 10.0;
  const double k = effective_wavenumber(p, p.mean_density());
  CHECK_THROWS_AS(dispersion_squared(p, 2.0 * k), DomainError);
}

TEST_CASE("susceptibility profile") {
  auto p = params_for(0.1, 100);
  const auto psi0 = homogeneous_state(p);
  const auto chi = susceptibility_profile(psi0, p);
  for (std::size_t i = chi.box_begin; i < chi.box_end; ++i) {
    CHECK(chi.nodes[i] == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(chi.midpoints[i] == doctest::Approx(1e-3).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < chi.box_begin; ++i) CHECK(chi.nodes[i] == 0.0);
  CHECK(chi.integral() == doctest::Approx(0.1).epsilon(1e-12));

  auto decoupled = p;
  decoupled.zeta = 0.0;
  const auto zero = susceptibility_profile(homogeneous_state(decoupled), decoupled);
  for (double v : zero.nodes) CHECK(v == 0.0);

  auto mismatched = p;
  mismatched.box_length = 50.0;
  CHECK_THROWS_AS(susceptibility_profile(psi0, mismatched), ConfigError);
}

TEST_CASE("susceptibility integrates to zeta for a modulated state") {
  auto p = params_for(0.3, 20);
  p.field_refinement = 3;
  const auto noisy = seeded_state(p, 7, 0.3);
  const auto chi = susceptibility_profile(noisy, p);
  CHECK(chi.integral() == doctest::Approx(0.3).epsilon(1e-12));
  for (double v : chi.nodes) CHECK(v >= 0.0);
}

TEST_CASE("trap potential is centered") {
  auto p = params_for(0.1, 10);
  p.trap_strength = 1.0;
  const auto v = trap_potential(p);
  CHECK(v[p.box_points() / 2] == doctest::Approx(0.0));
  CHECK(v[0] == doctest::Approx(0.5 * 25.0));
}
