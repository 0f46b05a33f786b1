#include "atomlight/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "atomlight/errors.hpp"
#include "atomlight/fft.hpp"

namespace atomlight {

double reflectivity(const FieldState& fields) {
  const double pl = std::norm(fields.drive_left), pr = std::norm(fields.drive_right);
  if (pl + pr == 0.0) return fields.scattering.reflectance();
  return (pl * fields.scattering.reflectance() + pr * fields.scattering_right.reflectance()) / (pl + pr);
}

double density_contrast(std::span<const double> density) {
  if (density.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(density.begin(), density.end());
  if (*hi + *lo <= 0.0) return 0.0;
  return (*hi - *lo) / (*hi + *lo);
}

double density_contrast(const CondensateState& state) {
  const auto rho = state.density();
  return density_contrast(rho);
}

LatticeMeasurement measure_lattice_spacing(std::span<const double> profile, double dx, double floor,
                                           double min_periods) {
  LatticeMeasurement out;
  const std::size_t n = profile.size();
  if (n < 16) {
    out.reason = "profile too short";
    return out;
  }
  const double mean = std::accumulate(profile.begin(), profile.end(), 0.0) / static_cast<double>(n);
  constexpr std::size_t pad = 8;
  const std::size_t m = n * pad;
  std::vector<cplx> buf(m, 0.0);
  double wsum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    buf[j] = w * (profile[j] - mean);
    wsum += w;
  }
  Fft(m).forward(buf, buf);
  // Skip the DC lobe of the window (two original bins wide) and anything
  // slower than min_periods across the profile.
  const std::size_t first = std::max<std::size_t>(3 * pad, static_cast<std::size_t>(std::ceil(min_periods * pad)));
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = first; k < m / 2; ++k) {
    const double mag = std::abs(buf[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  if (best == 0) {
    out.reason = "no spectral peak";
    return out;
  }
  if (best == first) {
    // Largest value on the edge of the search range: a leakage tail from
    // slower structure, not a lattice peak.
    out.reason = "no interior spectral peak";
    return out;
  }
  // Window main lobes are ~1.44 bins wide at half maximum, sidelobes ~0.5.
  std::size_t lo = best, hi = best;
  while (lo > 1 && std::abs(buf[lo - 1]) > 0.5 * best_mag) --lo;
  while (hi + 1 < m / 2 && std::abs(buf[hi + 1]) > 0.5 * best_mag) ++hi;
  if (hi - lo + 1 < pad) {
    out.reason = "no lattice peak (window sidelobe)";
    return out;
  }
  out.modulation = mean != 0.0 ? 2.0 * best_mag / (wsum * std::abs(mean)) : 0.0;
  if (out.modulation < floor) {
    out.reason = "modulation below detector floor";
    return out;
  }
  double offset = 0.0;
  if (best + 1 < m / 2) {
    const double a = std::log(std::abs(buf[best - 1]));
    const double b = std::log(best_mag);
    const double c = std::log(std::abs(buf[best + 1]));
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = 0.5 * (a - c) / denom;
  }
  const double length = dx * static_cast<double>(n);
  out.wavenumber = kTwoPi * (static_cast<double>(best) + offset) / (static_cast<double>(pad) * length);
  out.spacing = kTwoPi / out.wavenumber;
  out.found = true;
  return out;
}

std::vector<double> find_maxima(std::span<const double> profile, double dx, double threshold,
                                double merge_distance) {
  std::vector<double> peaks;
  const std::size_t n = profile.size();
  if (n < 3) return peaks;
  const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return peaks;

  struct Candidate {
    double x;
    double height;
  };
  std::vector<Candidate> kept;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double u = (profile[j] - *lo) / range;
    if (u <= threshold || profile[j] < profile[j - 1] || profile[j] <= profile[j + 1]) continue;
    const double a = profile[j - 1], b = profile[j], c = profile[j + 1];
    const double denom = a - 2.0 * b + c;
    Candidate cand{static_cast<double>(j) * dx, b};
    if (denom < 0.0) {
      cand.x += 0.5 * (a - c) / denom * dx;
      cand.height = b - (a - c) * (a - c) / (8.0 * denom);
    }
    if (!kept.empty() && cand.x - kept.back().x < merge_distance) {
      if (cand.height > kept.back().height) kept.back() = cand;
      continue;
    }
    kept.push_back(cand);
  }
  for (const auto& c : kept) peaks.push_back(c.x);
  return peaks;
}

std::vector<std::vector<double>> MaximaTrajectories::aligned() const {
  auto out = positions;
  for (auto& traj : out) {
    if (traj.empty()) continue;
    const double x0 = traj.front();
    for (auto& x : traj) x -= x0;
  }
  return out;
}

double MaximaTrajectories::mean_spacing(std::size_t frame) const {
  if (positions.size() < 2 || frame >= frames()) return 0.0;
  return (positions.back()[frame] - positions.front()[frame]) / static_cast<double>(positions.size() - 1);
}

MaximaTrajectories track_intensity_maxima(std::span<const double> times,
                                          const std::vector<std::vector<double>>& profiles, double dx,
                                          double threshold) {
  if (times.size() != profiles.size()) throw ConfigError("track_intensity_maxima: times and profiles differ in length");
  if (profiles.size() < 2) throw ConfigError("track_intensity_maxima: need at least two snapshots");
  MaximaTrajectories out;

  const auto merge_for = [&](std::span<const double> p) {
    const auto lattice = measure_lattice_spacing(p, dx);
    return lattice.found ? 0.5 * lattice.spacing : 0.25;
  };

  const auto first = find_maxima(profiles[0], dx, threshold, merge_for(profiles[0]));
  out.positions.assign(first.size(), {});
  for (std::size_t p = 0; p < first.size(); ++p) out.positions[p].push_back(first[p]);
  out.times.push_back(times[0]);
  if (first.size() < 2) {
    out.warnings.push_back("fewer than two maxima in the first frame");
    return out;
  }

  for (std::size_t f = 1; f < profiles.size(); ++f) {
    const auto peaks = find_maxima(profiles[f], dx, threshold, merge_for(profiles[f]));
    if (peaks.size() != first.size()) {
      out.warnings.push_back("peak count changed from " + std::to_string(first.size()) + " to " +
                             std::to_string(peaks.size()) + " at frame " + std::to_string(f) +
                             "; trajectories truncated");
      break;
    }
    // Nearest-neighbor link; ordered sets of equal size link in order unless a
    // peak jumped more than half the local spacing.
    bool ok = true;
    for (std::size_t p = 0; p < peaks.size() && ok; ++p) {
      const double prev = out.positions[p].back();
      const auto nearest = std::min_element(peaks.begin(), peaks.end(), [&](double a, double b) {
        return std::abs(a - prev) < std::abs(b - prev);
      });
      const double gap = p + 1 < peaks.size() ? peaks[p + 1] - peaks[p] : peaks[p] - peaks[p - 1];
      ok = static_cast<std::size_t>(nearest - peaks.begin()) == p && std::abs(peaks[p] - prev) < 0.5 * gap;
    }
    if (!ok) {
      out.warnings.push_back("ambiguous peak linkage at frame " + std::to_string(f) + "; trajectories truncated");
      break;
    }
    for (std::size_t p = 0; p < peaks.size(); ++p) out.positions[p].push_back(peaks[p]);
    out.times.push_back(times[f]);
  }
  return out;
}

Alignment align_translation(std::span<const double> a, std::span<const double> b, double dx) {
  const std::size_t n = a.size();
  if (b.size() != n || n == 0) throw ConfigError("align_translation: profiles differ in length");
  const double length = dx * static_cast<double>(n);
  Fft fft(n);
  std::vector<cplx> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  fft.forward(fa, fa);
  fft.forward(fb, fb);

  // C(s) = sum_k A_k conj(B_k) exp(i q_k s) / N, maximal at the best shift.
  std::vector<cplx> cross(n);
  for (std::size_t k = 0; k < n; ++k) cross[k] = fa[k] * std::conj(fb[k]);
  std::vector<cplx> corr(n);
  fft.backward(cross, corr);
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (corr[j].real() > corr[best].real()) best = j;
  double s = fft_momentum(best, n, 1.0) / kTwoPi * dx;  // signed integer shift times dx

  const bool even = n % 2 == 0;
  for (int it = 0; it < 30; ++it) {
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (even && k == n / 2) continue;
      const double q = fft_momentum(k, n, length);
      const cplx term = cross[k] * std::exp(cplx(0.0, q * s));
      d1 += -q * term.imag();
      d2 += -q * q * term.real();
    }
    if (d2 >= 0.0) break;
    const double delta = std::clamp(-d1 / d2, -0.5 * dx, 0.5 * dx);
    s += delta;
    if (std::abs(delta) < 1e-15 * length) break;
  }

  // Residual with b shifted by s.
  std::vector<cplx> shifted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double q = (even && k == n / 2) ? 0.0 : fft_momentum(k, n, length);
    shifted[k] = fb[k] * std::exp(cplx(0.0, -q * s)) / static_cast<double>(n);
  }
  if (even) shifted[n / 2] = fb[n / 2] * std::cos(kPi * s / dx) / static_cast<double>(n);
  fft.backward(shifted, shifted);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    num += std::pow(a[j] - shifted[j].real(), 2);
    den += a[j] * a[j];
  }
  return {s, den > 0.0 ? std::sqrt(num / den) : 0.0};
}

}  // namespace atomlight
