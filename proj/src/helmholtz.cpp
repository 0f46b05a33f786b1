#include "atomlight/helmholtz.hpp"

#include <cmath>

#include "atomlight/errors.hpp"

namespace atomlight {

namespace {
constexpr double kK0Squared = kVacuumWavenumber * kVacuumWavenumber;
const cplx kI{0.0, 1.0};

struct Pair {
  cplx e;
  cplx de;
};

// One RK4 step of (E, E')' = (E', -k0^2 (1 + chi) E) with chi sampled at the
// start, middle and end of the step.
inline Pair rk4_step(Pair y, double h, double chi_a, double chi_m, double chi_b) {
  const double wa = kK0Squared * (1.0 + chi_a);
  const double wm = kK0Squared * (1.0 + chi_m);
  const double wb = kK0Squared * (1.0 + chi_b);
  const cplx k1e = y.de, k1d = -wa * y.e;
  const cplx e2 = y.e + 0.5 * h * k1e, d2 = y.de + 0.5 * h * k1d;
  const cplx k2e = d2, k2d = -wm * e2;
  const cplx e3 = y.e + 0.5 * h * k2e, d3 = y.de + 0.5 * h * k2d;
  const cplx k3e = d3, k3d = -wm * e3;
  const cplx e4 = y.e + h * k3e, d4 = y.de + h * k3d;
  const cplx k4e = d4, k4d = -wb * e4;
  return {y.e + h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e),
          y.de + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)};
}

void require_vacuum_ends(const SusceptibilityProfile& chi) {
  if (chi.nodes.size() < 2 || chi.box_begin == 0 || chi.box_end + 1 > chi.nodes.size() - 1 ||
      chi.nodes.front() != 0.0 || chi.nodes.back() != 0.0 || chi.midpoints.front() != 0.0 ||
      chi.midpoints.back() != 0.0)
    throw ConfigError("plane-wave decomposition needs vacuum at the outermost grid nodes; increase padding");
}
}  // namespace

PlaneWaveAmplitudes decompose_plane_waves(cplx value, cplx derivative, double x) {
  const cplx ratio = derivative / (kI * kVacuumWavenumber);
  return {0.5 * (value + ratio) * std::exp(-kI * kVacuumWavenumber * x),
          0.5 * (value - ratio) * std::exp(kI * kVacuumWavenumber * x)};
}

HelmholtzSolution integrate_helmholtz_ivp(const SusceptibilityProfile& chi, cplx initial_value,
                                          cplx initial_derivative, Direction direction) {
  const std::size_t n = chi.intervals();
  if (n == 0 || chi.nodes.size() != n + 1) throw ConfigError("integrate_helmholtz_ivp: malformed profile");
  HelmholtzSolution sol;
  sol.field.resize(n + 1);
  sol.derivative.resize(n + 1);
  Pair y{initial_value, initial_derivative};
  if (direction == Direction::left_to_right) {
    sol.field[0] = y.e;
    sol.derivative[0] = y.de;
    for (std::size_t i = 0; i < n; ++i) {
      y = rk4_step(y, chi.step, chi.start_value(i), chi.midpoints[i], chi.end_value(i));
      sol.field[i + 1] = y.e;
      sol.derivative[i + 1] = y.de;
    }
  } else {
    sol.field[n] = y.e;
    sol.derivative[n] = y.de;
    for (std::size_t i = n; i-- > 0;) {
      y = rk4_step(y, -chi.step, chi.end_value(i), chi.midpoints[i], chi.start_value(i));
      sol.field[i] = y.e;
      sol.derivative[i] = y.de;
    }
  }
  const Pair last = direction == Direction::left_to_right ? Pair{sol.field[n], sol.derivative[n]}
                                                          : Pair{sol.field[0], sol.derivative[0]};
  if (!std::isfinite(std::abs(last.e)) || !std::isfinite(std::abs(last.de)))
    throw NumericError("Helmholtz integration produced non-finite values");
  return sol;
}

namespace {
// Unit outgoing wave on the far side, integrated back to the incidence side.
struct UnitSolve {
  HelmholtzSolution sol;
  PlaneWaveAmplitudes near;  // amplitudes on the incidence side
  ScatteringCoefficients coeff;
};

UnitSolve unit_solve(const SusceptibilityProfile& chi, Incidence incidence) {
  require_vacuum_ends(chi);
  const std::size_t last = chi.nodes.size() - 1;
  UnitSolve u;
  if (incidence == Incidence::left) {
    const double xr = chi.x(last);
    const cplx e = std::exp(kI * kVacuumWavenumber * xr);
    u.sol = integrate_helmholtz_ivp(chi, e, kI * kVacuumWavenumber * e, Direction::right_to_left);
    u.near = decompose_plane_waves(u.sol.field[0], u.sol.derivative[0], chi.x(0));
    u.coeff = {u.near.backward / u.near.forward, 1.0 / u.near.forward};
  } else {
    const double xl = chi.x(0);
    const cplx e = std::exp(-kI * kVacuumWavenumber * xl);
    u.sol = integrate_helmholtz_ivp(chi, e, -kI * kVacuumWavenumber * e, Direction::left_to_right);
    u.near = decompose_plane_waves(u.sol.field[last], u.sol.derivative[last], chi.x(last));
    u.coeff = {u.near.forward / u.near.backward, 1.0 / u.near.backward};
  }
  return u;
}

std::vector<cplx> box_samples(const FieldState& f, const std::vector<cplx>& e) {
  const std::size_t n = f.box_points();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = e[f.box_begin + j * f.refinement];
  return out;
}

std::vector<double> box_norm(const FieldState& f, const std::vector<cplx>& e) {
  const auto s = box_samples(f, e);
  std::vector<double> out(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out[j] = std::norm(s[j]);
  return out;
}

FieldState grid_shell(const SusceptibilityProfile& chi) {
  FieldState f;
  f.x_origin = chi.x_origin;
  f.step = chi.step;
  f.box_begin = chi.box_begin;
  f.box_end = chi.box_end;
  f.refinement = chi.refinement;
  return f;
}
}  // namespace

ScatteringCoefficients scattering_coefficients(const SusceptibilityProfile& chi, Incidence incidence) {
  return unit_solve(chi, incidence).coeff;
}

std::vector<cplx> FieldState::box_field_left() const { return box_samples(*this, e_left); }
std::vector<cplx> FieldState::box_field_right() const { return box_samples(*this, e_right); }
std::vector<double> FieldState::box_intensity_left() const { return box_norm(*this, e_left); }
std::vector<double> FieldState::box_intensity_right() const { return box_norm(*this, e_right); }

std::vector<double> FieldState::box_intensity_total() const {
  auto total = box_intensity_left();
  const auto right = box_intensity_right();
  for (std::size_t j = 0; j < total.size(); ++j) total[j] += right[j];
  return total;
}

FieldState plane_wave_fields(const SusceptibilityProfile& grid, double k, double field_squared_left,
                             double field_squared_right) {
  FieldState f = grid_shell(grid);
  const std::size_t n = grid.nodes.size();
  f.e_left.resize(n);
  f.e_right.resize(n);
  const double a = std::sqrt(field_squared_left), b = std::sqrt(field_squared_right);
  for (std::size_t i = 0; i < n; ++i) {
    f.e_left[i] = a * std::exp(kI * k * grid.x(i));
    f.e_right[i] = b * std::exp(-kI * k * grid.x(i));
  }
  f.scattering = {0.0, 1.0};
  f.scattering_right = {0.0, 1.0};
  f.drive_left = a;
  f.drive_right = b;
  return f;
}

FieldState solve_driven_fields(const SusceptibilityProfile& chi, const ModelParams& params) {
  FieldState f = grid_shell(chi);
  f.drive_left = std::sqrt(field_amplitude_squared(params.intensity_left, params.zeta));
  f.drive_right = std::sqrt(field_amplitude_squared(params.intensity_right, params.zeta));

  auto left = unit_solve(chi, Incidence::left);
  const cplx scale_left = f.drive_left / left.near.forward;
  f.e_left = std::move(left.sol.field);
  for (auto& v : f.e_left) v *= scale_left;
  f.scattering = left.coeff;

  auto right = unit_solve(chi, Incidence::right);
  const cplx scale_right = f.drive_right / right.near.backward;
  f.e_right = std::move(right.sol.field);
  for (auto& v : f.e_right) v *= scale_right;
  f.scattering_right = right.coeff;
  return f;
}

}  // namespace atomlight
