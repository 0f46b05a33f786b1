#include "atomlight/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <utility>

#include "atomlight/errors.hpp"
#include "atomlight/model.hpp"

namespace atomlight {

namespace {
fftw_complex* as_fftw(const std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

fftw_plan make_plan(std::size_t n, int sign) {
  // In-place plan; execute() copies into the output first when buffers differ.
  std::vector<std::complex<double>> a(n);
  auto plan = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(a.data()), as_fftw(a.data()), sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw NumericError("FFTW plan creation failed");
  return plan;
}

void execute(void* plan, std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
             std::size_t n) {
  if (in.size() != n || out.size() != n) throw ConfigError("FFT size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(static_cast<fftw_plan>(plan), as_fftw(out.data()), as_fftw(out.data()));
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw ConfigError("FFT of size 0");
  forward_ = make_plan(n, FFTW_FORWARD);
  backward_ = make_plan(n, FFTW_BACKWARD);
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), forward_(std::exchange(other.forward_, nullptr)),
      backward_(std::exchange(other.backward_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    forward_ = std::exchange(other.forward_, nullptr);
    backward_ = std::exchange(other.backward_, nullptr);
  }
  return *this;
}

void Fft::release() noexcept {
  if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  forward_ = backward_ = nullptr;
}

void Fft::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
  execute(forward_, in, out, n_);
}

void Fft::backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const {
  execute(backward_, in, out, n_);
}

SineTransform::SineTransform(std::size_t n) : n_(n) {
  if (n < 2) throw ConfigError("sine transform needs at least 2 intervals");
  const int m = static_cast<int>(n - 1);
  std::vector<double> buf(2 * (n - 1));
  // Real and imaginary parts transformed as two interleaved real sequences.
  fftw_r2r_kind kind = FFTW_RODFT00;
  plan_ = fftw_plan_many_r2r(1, &m, 2, buf.data(), nullptr, 2, 1, buf.data(), nullptr, 2, 1, &kind,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw NumericError("FFTW sine plan creation failed");
}

SineTransform::~SineTransform() { release(); }

SineTransform::SineTransform(SineTransform&& other) noexcept
    : n_(other.n_), plan_(std::exchange(other.plan_, nullptr)) {}

SineTransform& SineTransform::operator=(SineTransform&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    plan_ = std::exchange(other.plan_, nullptr);
  }
  return *this;
}

void SineTransform::release() noexcept {
  if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  plan_ = nullptr;
}

void SineTransform::apply(std::span<std::complex<double>> interior) const {
  if (interior.size() != n_ - 1) throw ConfigError("sine transform size mismatch");
  double* p = reinterpret_cast<double*>(interior.data());
  fftw_execute_r2r(static_cast<fftw_plan>(plan_), p, p);
}

double fft_momentum(std::size_t k, std::size_t n, double box_length) {
  const auto signed_k = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  return kTwoPi * signed_k / box_length;
}

std::vector<std::complex<double>> upsample_periodic(std::span<const std::complex<double>> f,
                                                    std::size_t factor) {
  const std::size_t n = f.size();
  if (factor == 1) return {f.begin(), f.end()};
  const std::size_t m = n * factor;
  std::vector<std::complex<double>> spec(n);
  Fft(n).forward(f, spec);
  std::vector<std::complex<double>> padded(m, 0.0);
  const std::size_t half = n / 2;
  for (std::size_t k = 0; k < n; ++k) {
    if (n % 2 == 0 && k == half) {
      // Nyquist bin shared between +/- frequencies.
      padded[half] += 0.5 * spec[k];
      padded[m - half] += 0.5 * spec[k];
    } else if (k < half || (n % 2 == 1 && k == half)) {
      padded[k] = spec[k];
    } else {
      padded[m - (n - k)] = spec[k];
    }
  }
  std::vector<std::complex<double>> out(m);
  Fft(m).backward(padded, out);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<std::complex<double>> upsample_sine(std::span<const std::complex<double>> f,
                                                std::size_t factor) {
  const std::size_t n = f.size();
  if (factor == 1) return {f.begin(), f.end()};
  const std::size_t m = n * factor;
  std::vector<std::complex<double>> coeff(f.begin() + 1, f.end());
  SineTransform(n).apply(coeff);
  std::vector<std::complex<double>> fine(m - 1, 0.0);
  std::copy(coeff.begin(), coeff.end(), fine.begin());
  SineTransform(m).apply(fine);
  std::vector<std::complex<double>> out(m, 0.0);
  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (std::size_t j = 1; j < m; ++j) out[j] = fine[j - 1] * scale;
  return out;
}

}  // namespace atomlight
