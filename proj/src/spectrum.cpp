#include "atomlight/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "atomlight/errors.hpp"
#include "atomlight/fft.hpp"
#include "atomlight/gpe.hpp"
#include "atomlight/potential.hpp"

namespace atomlight {

cplx homogeneous_dispersion(const ModelParams& params, double q) {
  const double w2 = dispersion_squared(params, q);
  return w2 >= 0.0 ? cplx(std::sqrt(w2), 0.0) : cplx(0.0, std::sqrt(-w2));
}

DispersionResult homogeneous_dispersion_curve(const ModelParams& params, std::span<const double> q_values) {
  DispersionResult out;
  out.q_values.assign(q_values.begin(), q_values.end());
  out.omega.reserve(q_values.size());
  for (double q : q_values) out.omega.push_back(homogeneous_dispersion(params, q));
  return out;
}

namespace {

using Eigen::MatrixXcd;

// Fourier coefficients f_d = (1/N) sum_j f(x_j) exp(-i k_d x_j), indexed d mod N.
std::vector<cplx> coefficients(std::vector<cplx> f) {
  const std::size_t n = f.size();
  Fft(n).forward(f, f);
  for (auto& c : f) c /= static_cast<double>(n);
  return f;
}

// Multiplication by f between plane-wave bases with integer momenta
// rows[0] + i and cols[0] + j (units of dq): M(i, j) = f_(row - col).
MatrixXcd multiplication(const std::vector<cplx>& fhat, long row0, long rows, long col0, long cols) {
  const long n = static_cast<long>(fhat.size());
  MatrixXcd m(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) {
      long d = (row0 + i) - (col0 + j);
      d = ((d % n) + n) % n;
      m(i, j) = fhat[static_cast<std::size_t>(d)];
    }
  return m;
}

// conj(X)_mn = (X_{-m,-n})^* on a symmetric basis.
MatrixXcd parity_conjugate(const MatrixXcd& x) {
  const long n = x.rows();
  MatrixXcd out(n, n);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) out(i, j) = std::conj(x(n - 1 - i, n - 1 - j));
  return out;
}

// Phase advance of the field across the box divided by L.
double carrier_wavenumber(std::span<const cplx> samples, double length) {
  double phase = 0.0;
  for (std::size_t j = 1; j < samples.size(); ++j) phase += std::arg(samples[j] / samples[j - 1]);
  return phase / length;
}

struct PseudoInverse {
  MatrixXcd matrix;
  std::size_t dropped = 0;
};

PseudoInverse pseudo_inverse(const MatrixXcd& q, double cutoff) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(q);
  if (es.info() != Eigen::Success) throw NumericError("spectrum: Q eigendecomposition failed");
  Eigen::VectorXd inv = es.eigenvalues();
  PseudoInverse out;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    if (std::abs(inv(i)) < cutoff) {
      inv(i) = 0.0;
      ++out.dropped;
    } else {
      inv(i) = 1.0 / inv(i);
    }
  }
  out.matrix = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
  return out;
}

}  // namespace

LinearizationMatrix build_linearization_matrix(const CondensateState& state, const FieldState& fields,
                                               const ModelParams& params, const SpectrumOptions& options) {
  params.validate();
  if (params.boundary != Boundary::periodic || state.boundary != Boundary::periodic)
    throw ConfigError("spectrum: the plane-wave basis needs periodic boundaries");
  const std::size_t n = params.box_points();
  if (state.size() != n || fields.box_points() != n)
    throw ConfigError("spectrum: state and fields do not match the configured grid");
  const double length = params.box_length;
  const double dq = kTwoPi / length;
  if (!(options.q_cutoff > 0.0) || !(options.aux_margin >= 0.0) || !(options.pinv_tolerance >= 0.0))
    throw ConfigError("spectrum: q_cutoff must be > 0, aux_margin and pinv_tolerance >= 0");
  const double ratio = options.q_cutoff / dq;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
    throw ConfigError("spectrum: q_cutoff must be a multiple of 2 pi / L");

  const long mc = std::lround(ratio);
  const long mx = mc + static_cast<long>(std::ceil(options.aux_margin / dq - 1e-9));
  const long nm = 2 * mc + 1, nx = 2 * mx + 1;
  if (2 * mx >= static_cast<long>(n) / 2)
    throw ConfigError("spectrum: q_cutoff plus aux_margin exceeds the grid bandwidth");

  LinearizationMatrix out;
  out.dq = dq;
  out.q_cutoff = static_cast<double>(mc) * dq;
  out.k_eff = effective_wavenumber(params, params.mean_density());
  for (long i = -mc; i <= mc; ++i) out.momenta.push_back(static_cast<double>(i) * dq);

  const SplitStepper stepper(params);
  const auto potential = total_potential(fields, params);
  const auto cp = stepper.chemical_potential(state, potential);
  out.mu = cp.mu;

  // Remove the global phase; a stationary state without currents is then real.
  std::vector<cplx> psi0 = state.psi;
  {
    cplx sq = 0.0;
    double top = 0.0;
    for (const cplx p : psi0) {
      sq += p * p;
      top = std::max(top, std::abs(p));
    }
    const cplx rot = std::abs(sq) > 0.0 ? std::exp(cplx(0.0, -0.5 * std::arg(sq))) : cplx(1.0);
    double imag = 0.0;
    for (auto& p : psi0) {
      p *= rot;
      imag = std::max(imag, std::abs(p.imag()));
    }
    out.reality_defect = top > 0.0 ? imag / top : 0.0;
    out.real_form = out.reality_defect <= kRealTolerance;
    if (out.real_form)
      for (auto& p : psi0) p = p.real();
  }

  const double g = params.g_interaction;
  std::vector<cplx> diag_term(n), pair_term(n), psi(n), psi_conj(n), k2(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx p = psi0[j];
    const double rho = std::norm(p);
    diag_term[j] = potential[j] + 2.0 * g * rho;
    pair_term[j] = g * p * p;
    psi[j] = p;
    psi_conj[j] = std::conj(p);
    k2[j] = kTwoPi * kTwoPi * (1.0 + params.zeta * rho);
  }

  out.kinetic = MatrixXcd::Zero(nm, nm);
  for (long i = 0; i < nm; ++i) out.kinetic(i, i) = std::pow(out.momenta[static_cast<std::size_t>(i)] / kTwoPi, 2);
  out.potential = multiplication(coefficients(diag_term), -mc, nm, -mc, nm);
  out.potential.diagonal().array() -= out.mu;
  out.interaction = multiplication(coefficients(pair_term), -mc, nm, -mc, nm);

  const auto psi_hat = coefficients(psi);
  const auto psic_hat = coefficients(psi_conj);
  const MatrixXcd psi_out = multiplication(psi_hat, -mc, nm, -mx, nx);   // aux -> condensate
  const MatrixXcd psic_in = multiplication(psic_hat, -mx, nx, -mc, nm);  // condensate -> aux
  const MatrixXcd psi_in = multiplication(psi_hat, -mx, nx, -mc, nm);
  const MatrixXcd k2_aux = multiplication(coefficients(k2), -mx, nx, -mx, nx);
  const double cutoff = options.pinv_tolerance * 2.0 * out.k_eff;
  const double coupling = kTwoPi * kTwoPi * params.zeta;

  out.a_block = out.kinetic + out.potential;
  out.b_block = out.interaction;
  const std::array<std::vector<cplx>, 2> beams{fields.box_field_left(), fields.box_field_right()};
  for (std::size_t b = 0; b < 2; ++b) {
    auto& bc = out.beams[b];
    const auto& e = beams[b];
    const bool dark = std::all_of(e.begin(), e.end(), [](cplx v) { return v == cplx(0.0); });
    if (dark) {
      bc.a = bc.a_tilde = bc.b = bc.b_tilde = MatrixXcd::Zero(nm, nm);
      continue;
    }
    // Envelope u = E exp(-i kappa x), with kappa fixed by the phase advance over
    // the box so that u is periodic in phase.
    std::vector<cplx> span_samples(e.begin(), e.end());
    span_samples.push_back(b == 0 ? fields.e_left[fields.box_end] : fields.e_right[fields.box_end]);
    bc.kappa = carrier_wavenumber(span_samples, length);
    std::vector<cplx> u(n), uc(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = e[j] * std::exp(cplx(0.0, -bc.kappa * state.x(j)));
      uc[j] = std::conj(u[j]);
    }
    const MatrixXcd mu_ = multiplication(coefficients(u), -mx, nx, -mx, nx);
    const MatrixXcd muc = multiplication(coefficients(uc), -mx, nx, -mx, nx);

    // Q_s(m, n) = -(s + k_m)^2 delta + K^2_(m-n), s = +-kappa.
    const auto q_matrix = [&](double s) {
      MatrixXcd q = k2_aux;
      for (long i = 0; i < nx; ++i) q(i, i) -= std::pow(s + static_cast<double>(i - mx) * dq, 2);
      return q;
    };
    const auto qm = pseudo_inverse(q_matrix(-bc.kappa), cutoff);
    const auto qp = pseudo_inverse(q_matrix(bc.kappa), cutoff);
    bc.dropped = qm.dropped + qp.dropped;

    const MatrixXcd left = coupling * psi_out;
    const MatrixXcd kernel_a = mu_ * qm.matrix * muc;   // E0 G E0*
    const MatrixXcd kernel_t = muc * qp.matrix * mu_;   // E0* G E0
    bc.a = left * kernel_a * psic_in;
    bc.a_tilde = left * kernel_t * psic_in;
    bc.b = left * kernel_a * psi_in;
    bc.b_tilde = left * kernel_t * psi_in;
    out.a_block += bc.a + bc.a_tilde;
    out.b_block += bc.b + bc.b_tilde;
  }

  out.r.resize(2 * nm, 2 * nm);
  out.r.topLeftCorner(nm, nm) = out.a_block;
  out.r.topRightCorner(nm, nm) = out.b_block;
  out.r.bottomLeftCorner(nm, nm) = -parity_conjugate(out.b_block);
  out.r.bottomRightCorner(nm, nm) = -parity_conjugate(out.a_block);
  if (!out.r.allFinite()) throw NumericError("spectrum: non-finite entries in the linearization matrix");
  return out;
}

namespace {

[[noreturn]] void eigensolver_failed(const LinearizationMatrix& matrix) {
  throw NumericError("spectrum: eigensolver did not converge (size " + std::to_string(matrix.r.rows()) +
                     ", |R|_F = " + std::to_string(matrix.r.norm()) + ", pseudoinverse drops " +
                     std::to_string(matrix.dropped()) + ")");
}

// Unitary map from the real basis (1, sqrt2 cos k_j x, sqrt2 sin k_j x) to the
// plane-wave coefficients; operators that keep real functions real become
// real matrices.
MatrixXcd real_basis(long mc) {
  const long n = 2 * mc + 1;
  MatrixXcd w = MatrixXcd::Zero(n, n);
  const double h = 1.0 / std::sqrt(2.0);
  w(mc, 0) = 1.0;
  for (long j = 1; j <= mc; ++j) {
    w(mc + j, 2 * j - 1) = h;
    w(mc - j, 2 * j - 1) = h;
    w(mc + j, 2 * j) = cplx(0.0, -h);
    w(mc - j, 2 * j) = cplx(0.0, h);
  }
  return w;
}

// omega u = A u + B v, -omega v = B u + A v with f = u + v, g = u - v:
// omega^2 f = (A - B)(A + B) f and omega g = (A + B) f.
std::vector<Mode> reduced_modes(const LinearizationMatrix& matrix) {
  const long nm = static_cast<long>(matrix.modes());
  const MatrixXcd w = real_basis((nm - 1) / 2);
  const Eigen::MatrixXd s = (w.adjoint() * (matrix.a_block + matrix.b_block) * w).real();
  const Eigen::MatrixXd d = (w.adjoint() * (matrix.a_block - matrix.b_block) * w).real();
  Eigen::EigenSolver<Eigen::MatrixXd> es(d * s, true);
  if (es.info() != Eigen::Success) eigensolver_failed(matrix);

  const double scale = std::sqrt(std::max(1.0, (d * s).cwiseAbs().maxCoeff()));
  std::vector<Mode> modes;
  modes.reserve(2 * static_cast<std::size_t>(nm));
  for (long i = 0; i < nm; ++i) {
    const cplx omega = std::sqrt(es.eigenvalues()(i));
    const Eigen::VectorXcd fr = es.eigenvectors().col(i);
    const Eigen::VectorXcd f = w * fr;
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(nm);
    if (std::abs(omega) > 1e-10 * scale) g = w * (s.cast<cplx>() * fr) / omega;
    Mode plus, minus;
    plus.omega = omega;
    minus.omega = -omega;
    plus.vector.resize(2 * nm);
    plus.vector << 0.5 * (f + g), 0.5 * (f - g);
    plus.vector.normalize();
    minus.vector.resize(2 * nm);
    minus.vector << plus.vector.tail(nm), plus.vector.head(nm);
    modes.push_back(std::move(plus));
    modes.push_back(std::move(minus));
  }
  return modes;
}

std::vector<Mode> full_modes(const LinearizationMatrix& matrix) {
  Eigen::ComplexEigenSolver<MatrixXcd> es(matrix.r, true);
  if (es.info() != Eigen::Success) eigensolver_failed(matrix);
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(es.eigenvalues().size()));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) modes.push_back({es.eigenvalues()(i), 0.0, es.eigenvectors().col(i)});
  return modes;
}

}  // namespace

std::vector<Mode> diagonalize_and_classify(const LinearizationMatrix& matrix, bool full_solve) {
  auto modes = matrix.real_form && !full_solve ? reduced_modes(matrix) : full_modes(matrix);
  const std::size_t nm = matrix.modes();
  for (auto& m : modes) {
    const auto dist = momentum_distribution(m, nm);
    const auto top = std::max_element(dist.begin(), dist.end()) - dist.begin();
    m.q_max = std::abs(matrix.momenta[static_cast<std::size_t>(top)]);
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.q_max != b.q_max) return a.q_max < b.q_max;
    return a.omega.real() < b.omega.real();
  });
  return modes;
}

std::vector<double> momentum_distribution(const Mode& mode, std::size_t modes) {
  if (static_cast<std::size_t>(mode.vector.size()) != 2 * modes)
    throw ConfigError("momentum_distribution: eigenvector size does not match the basis");
  std::vector<double> dist(modes);
  for (std::size_t i = 0; i < modes; ++i)
    dist[i] = std::norm(mode.vector(static_cast<Eigen::Index>(i))) +
              std::norm(mode.vector(static_cast<Eigen::Index>(modes + i)));
  return dist;
}

std::vector<Mode> positive_branch(const std::vector<Mode>& modes, double tol) {
  std::vector<Mode> out;
  for (const auto& m : modes)
    if (m.omega.real() > tol || (std::abs(m.omega.real()) <= tol && m.omega.imag() >= 0.0)) out.push_back(m);
  return out;
}

double max_growth_rate(const std::vector<Mode>& modes) {
  double g = 0.0;
  for (const auto& m : modes) g = std::max(g, m.omega.imag());
  return g;
}

PhononGap phonon_gap(const std::vector<Mode>& modes, const LatticeMeasurement& density_lattice, double zero_tol) {
  PhononGap out;
  if (!density_lattice.found) {
    out.reason = "no branch: no density lattice (" + density_lattice.reason + ")";
    return out;
  }
  const double k_ref = kPi / density_lattice.spacing;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : modes) {
    if (m.q_max <= 2.0 * k_ref || m.omega.real() <= zero_tol) continue;
    if (m.omega.real() < best) {
      best = m.omega.real();
      out.q_max = m.q_max;
    }
  }
  if (!std::isfinite(best)) {
    out.reason = "no branch: no modes with q_max above 2 k";
    return out;
  }
  out.found = true;
  out.gap = best;
  return out;
}

double phonon_gap_estimate(const ModelParams& params) {
  params.validate();
  const double n = params.mean_density();
  const double ek = std::pow(effective_wavenumber(params, n) / kTwoPi, 2);
  return std::sqrt(4.0 * ek * (2.0 * ek + params.g_interaction * n));
}

BandGap band_gap(const std::vector<Mode>& modes, double q0, double dq, double zero_tol) {
  if (!(dq > 0.0)) throw ConfigError("band_gap: dq must be > 0");
  std::map<long, double> lowest;
  for (const auto& m : modes) {
    const double w = m.omega.real();
    if (w <= zero_tol) continue;
    const long key = std::lround(m.q_max / dq);
    auto it = lowest.find(key);
    if (it == lowest.end() || w < it->second) lowest[key] = w;
  }
  const long below = static_cast<long>(std::floor(q0 / dq + 1e-9));
  std::array<double, 4> w{};
  for (long i = 0; i < 4; ++i) {
    const auto it = lowest.find(below - 1 + i);
    if (it == lowest.end())
      throw DomainError("band_gap: no modes at q_max = " + std::to_string(static_cast<double>(below - 1 + i) * dq));
    w[static_cast<std::size_t>(i)] = it->second;
  }
  const double slope_lo = w[1] - w[0], slope_hi = w[3] - w[2];
  return {(w[2] - w[1]) - 0.5 * (slope_lo + slope_hi), 0.5 * (std::abs(slope_lo) + std::abs(slope_hi))};
}

}  // namespace atomlight
