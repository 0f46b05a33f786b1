#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace atomlight {

/// Owning handle for an unnormalized 1D complex FFTW plan pair (forward and
/// backward). Plans are built with FFTW_ESTIMATE so results are reproducible
/// run to run. Not safe to construct concurrently from several threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const { return n_; }
  /// out[k] = sum_j in[j] exp(-2 pi i j k / n). in and out may alias.
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  /// out[j] = sum_k in[k] exp(+2 pi i j k / n). No 1/n factor.
  void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

 private:
  void release() noexcept;
  std::size_t n_ = 0;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// Sine transform (DST-I) of the complex interior samples f[1..n-1] of a function
/// vanishing at j = 0 and j = n: out[m-1] = 2 sum_j f[j] sin(pi j m / n).
/// Applying it twice multiplies by 2n.
class SineTransform {
 public:
  explicit SineTransform(std::size_t n);
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;
  SineTransform(SineTransform&& other) noexcept;
  SineTransform& operator=(SineTransform&& other) noexcept;

  /// Number of intervals n; the transform acts on n - 1 interior values.
  std::size_t intervals() const { return n_; }
  void apply(std::span<std::complex<double>> interior) const;

 private:
  void release() noexcept;
  std::size_t n_ = 0;
  void* plan_ = nullptr;
};

/// Momentum of FFT bin k for a periodic box of length L and n points.
double fft_momentum(std::size_t k, std::size_t n, double box_length);

/// Band-limited interpolation of periodic samples onto a grid `factor` times finer.
std::vector<std::complex<double>> upsample_periodic(std::span<const std::complex<double>> f,
                                                    std::size_t factor);

/// Sine-series interpolation of samples f[0..n-1] (f[0] = 0, f(L) = 0) onto a
/// grid `factor` times finer; returns n * factor samples starting at x = 0.
std::vector<std::complex<double>> upsample_sine(std::span<const std::complex<double>> f,
                                                std::size_t factor);

}  // namespace atomlight
