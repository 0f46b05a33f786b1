#include "atomlight/gpe.hpp"

#include <cmath>

#include "atomlight/errors.hpp"

namespace atomlight {

namespace {
const cplx kI{0.0, 1.0};

std::variant<Fft, SineTransform> make_transform(std::size_t n, Boundary b) {
  if (b == Boundary::periodic) return Fft(n);
  return SineTransform(n);
}
}  // namespace

SplitStepper::SplitStepper(const ModelParams& params)
    : SplitStepper((params.validate(), params.box_points()), params.box_length, params.g_interaction,
                   params.boundary) {}

SplitStepper::SplitStepper(std::size_t points, double box_length, double g, Boundary boundary)
    : n_(points),
      box_length_(box_length),
      g_(g),
      boundary_(boundary),
      transform_(make_transform(points, boundary)) {
  if (boundary_ == Boundary::periodic) {
    kinetic_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const double q = fft_momentum(k, n_, box_length_);
      kinetic_[k] = q * q / (kTwoPi * kTwoPi);
    }
  } else {
    kinetic_.resize(n_ - 1);
    for (std::size_t m = 1; m < n_; ++m) {
      const double q = kPi * static_cast<double>(m) / box_length_;
      kinetic_[m - 1] = q * q / (kTwoPi * kTwoPi);
    }
  }
}

void SplitStepper::check(const CondensateState& state) const {
  if (state.size() != n_ || state.boundary != boundary_)
    throw ConfigError("SplitStepper: state grid does not match the stepper");
}

template <class F>
void SplitStepper::kinetic_apply(std::vector<cplx>& psi, F&& multiplier) const {
  if (boundary_ == Boundary::periodic) {
    const auto& fft = std::get<Fft>(transform_);
    fft.forward(psi, psi);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) psi[k] *= multiplier(kinetic_[k]) * inv;
    fft.backward(psi, psi);
  } else {
    const auto& dst = std::get<SineTransform>(transform_);
    std::span<cplx> interior(psi.data() + 1, n_ - 1);
    dst.apply(interior);
    const double inv = 1.0 / (2.0 * static_cast<double>(n_));
    for (std::size_t m = 0; m + 1 < n_; ++m) interior[m] *= multiplier(kinetic_[m]) * inv;
    dst.apply(interior);
    psi[0] = 0.0;
  }
}

void SplitStepper::kinetic_propagate(std::vector<cplx>& psi, cplx dt) const {
  kinetic_apply(psi, [dt](double e) { return std::exp(-kI * dt * e); });
}

void SplitStepper::step(CondensateState& state, std::span<const double> potential, cplx dt,
                        std::size_t step_index) const {
  check(state);
  if (potential.size() != n_) throw ConfigError("SplitStepper: potential size mismatch");
  auto& psi = state.psi;
  const cplx half = -kI * dt * 0.5;
  for (std::size_t j = 0; j < n_; ++j) psi[j] *= std::exp(half * (potential[j] + g_ * std::norm(psi[j])));
  kinetic_propagate(psi, dt);
  for (std::size_t j = 0; j < n_; ++j) psi[j] *= std::exp(half * (potential[j] + g_ * std::norm(psi[j])));
  if (boundary_ == Boundary::hard_wall) psi[0] = 0.0;

  const double nrm = state.norm();
  if (!std::isfinite(nrm) || nrm == 0.0) throw NumericError("split step produced a non-finite state", step_index);
  if (dt.imag() != 0.0) {
    const double s = 1.0 / std::sqrt(nrm);
    for (auto& v : psi) v *= s;
  }
  state.time += dt.real() != 0.0 ? dt.real() : -dt.imag();
}

std::vector<cplx> SplitStepper::apply_kinetic(std::span<const cplx> psi) const {
  if (psi.size() != n_) throw ConfigError("apply_kinetic: size mismatch");
  std::vector<cplx> out(psi.begin(), psi.end());
  kinetic_apply(out, [](double e) { return cplx(e, 0.0); });
  return out;
}

ChemicalPotential SplitStepper::relax_step(CondensateState& state, std::span<const double> potential,
                                           std::size_t step_index) const {
  const auto cp = chemical_potential(state, potential);
  auto& psi = state.psi;
  std::vector<cplx> r = apply_kinetic(psi);
  double wmax = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const double w = potential[j] + g_ * std::norm(psi[j]) - cp.mu;
    r[j] += w * psi[j];  // r = (H - mu) psi
    wmax = std::max(wmax, std::abs(w));
  }
  const double shift = 2.0 * wmax + 1.0;
  kinetic_apply(r, [shift](double e) { return cplx(1.0 / (shift + e), 0.0); });
  for (std::size_t j = 0; j < n_; ++j) psi[j] -= r[j];
  if (boundary_ == Boundary::hard_wall) psi[0] = 0.0;
  const double nrm = state.norm();
  if (!std::isfinite(nrm) || nrm == 0.0) throw NumericError("relaxation step produced a non-finite state", step_index);
  const double s = 1.0 / std::sqrt(nrm);
  for (auto& v : psi) v *= s;
  state.time += 1.0 / shift;  // effective imaginary-time step for smooth modes
  return cp;
}

double SplitStepper::kinetic_energy(const CondensateState& state) const {
  check(state);
  std::vector<cplx> c(state.psi);
  double e = 0.0;
  if (boundary_ == Boundary::periodic) {
    std::get<Fft>(transform_).forward(c, c);
    // psi = sum_k c_k exp(i q x) with c_k = FFT_k / N; int |psi|^2 = L sum |c_k|^2.
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) e += kinetic_[k] * std::norm(c[k] * inv);
    return e * box_length_;
  }
  std::span<cplx> interior(c.data() + 1, n_ - 1);
  std::get<SineTransform>(transform_).apply(interior);
  // psi = sum_m s_m sin(q_m x) with s_m = DST_m / N; int |psi|^2 = (L/2) sum |s_m|^2.
  const double inv = 1.0 / static_cast<double>(n_);
  for (std::size_t m = 0; m + 1 < n_; ++m) e += kinetic_[m] * std::norm(interior[m] * inv);
  return e * 0.5 * box_length_;
}

double SplitStepper::energy(const CondensateState& state, std::span<const double> potential) const {
  double pot = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const double rho = std::norm(state.psi[j]);
    pot += potential[j] * rho + 0.5 * g_ * rho * rho;
  }
  return kinetic_energy(state) + pot * state.dx();
}

ChemicalPotential SplitStepper::chemical_potential(const CondensateState& state,
                                                   std::span<const double> potential) const {
  check(state);
  if (potential.size() != n_) throw ConfigError("chemical_potential: potential size mismatch");
  auto h_psi = apply_kinetic(state.psi);
  for (std::size_t j = 0; j < n_; ++j)
    h_psi[j] += (potential[j] + g_ * std::norm(state.psi[j])) * state.psi[j];
  const double dx = state.dx();
  cplx expect = 0.0;
  for (std::size_t j = 0; j < n_; ++j) expect += std::conj(state.psi[j]) * h_psi[j];
  expect *= dx;
  ChemicalPotential out;
  out.mu = expect.real();
  out.mu_imag = expect.imag();
  double res = 0.0;
  for (std::size_t j = 0; j < n_; ++j) res += std::norm(h_psi[j] - out.mu * state.psi[j]);
  out.residual = std::sqrt(res * dx);
  return out;
}

double kinetic_energy(const CondensateState& state) {
  return SplitStepper(state.size(), state.box_length, 0.0, state.boundary).kinetic_energy(state);
}

ChemicalPotential chemical_potential_and_residual(const CondensateState& state,
                                                  std::span<const double> potential,
                                                  const ModelParams& params) {
  return SplitStepper(params).chemical_potential(state, potential);
}

}  // namespace atomlight
