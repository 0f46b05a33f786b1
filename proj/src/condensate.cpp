#include "atomlight/condensate.hpp"

#include <cmath>
#include <random>

#include "atomlight/errors.hpp"
#include "atomlight/fft.hpp"

namespace atomlight {

double CondensateState::norm() const {
  double s = 0.0;
  for (const auto& v : psi) s += std::norm(v);
  return s * dx();
}

std::vector<double> CondensateState::density() const {
  std::vector<double> rho(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi[j]);
  return rho;
}

void CondensateState::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericError("cannot normalize state with norm " + std::to_string(n));
  const double s = 1.0 / std::sqrt(n);
  for (auto& v : psi) v *= s;
}

CondensateState homogeneous_state(const ModelParams& params) {
  params.validate();
  CondensateState st;
  st.box_length = params.box_length;
  st.boundary = params.boundary;
  const std::size_t n = params.box_points();
  if (params.boundary == Boundary::periodic) {
    st.psi.assign(n, cplx(1.0 / std::sqrt(params.box_length), 0.0));
  } else {
    st.psi.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      st.psi[j] = std::sqrt(2.0 / params.box_length) * std::sin(kPi * st.x(j) / params.box_length);
  }
  return st;
}

namespace {
// Uniform double in (0, 1) from raw engine output; avoids distribution classes
// whose algorithms differ between standard libraries.
double unit_uniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

cplx complex_gaussian(std::mt19937_64& rng) {
  const double r = std::sqrt(-2.0 * std::log(unit_uniform(rng)));
  const double phi = kTwoPi * unit_uniform(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}
}  // namespace

void add_seed_noise(CondensateState& st, unsigned long long seed, double relative_amplitude, double q_cutoff) {
  if (relative_amplitude == 0.0) return;
  const std::size_t n = st.size();
  std::mt19937_64 rng(seed);
  std::vector<cplx> noise(n, 0.0);
  if (st.boundary == Boundary::periodic) {
    std::vector<cplx> spec(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx draw = complex_gaussian(rng);
      if (std::abs(fft_momentum(k, n, st.box_length)) <= q_cutoff) spec[k] = draw;
    }
    Fft(n).backward(spec, noise);
  } else {
    std::vector<cplx> coeff(n - 1, 0.0);
    for (std::size_t m = 1; m < n; ++m) {
      const cplx draw = complex_gaussian(rng);
      if (kPi * static_cast<double>(m) / st.box_length <= q_cutoff) coeff[m - 1] = draw;
    }
    SineTransform(n).apply(coeff);
    for (std::size_t j = 1; j < n; ++j) noise[j] = coeff[j - 1];
  }
  double noise_norm = 0.0;
  for (const auto& v : noise) noise_norm += std::norm(v);
  noise_norm = std::sqrt(noise_norm * st.dx());
  if (noise_norm > 0.0) {
    const double s = relative_amplitude * std::sqrt(st.norm()) / noise_norm;
    for (std::size_t j = 0; j < n; ++j) st.psi[j] += s * noise[j];
  }
  st.normalize();
}

CondensateState seeded_state(const ModelParams& params, unsigned long long seed,
                             double relative_amplitude, double q_cutoff) {
  CondensateState st = homogeneous_state(params);
  add_seed_noise(st, seed, relative_amplitude, q_cutoff);
  return st;
}

}  // namespace atomlight
