#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qgroove/field.hpp"
#include "qgroove/grid.hpp"
#include "qgroove/potential.hpp"
#include "qgroove/propagator.hpp"

namespace qgroove {

/// Lowest symmetric/antisymmetric eigenpair of the frozen double well at
/// z = 0, from a second-order finite-difference Hamiltonian.
struct DoubleWellSpectrum {
  Grid1D grid;
  std::vector<double> psi_S;  // even, normalized, psi_S(0) > 0
  std::vector<double> psi_A;  // odd, normalized, psi_A > 0 for x > 0
  double E_S = 0.0;
  double E_A = 0.0;
  std::vector<double> energies;  // lowest n_states eigenvalues

  double e_bar() const { return 0.5 * (E_A + E_S); }
  double splitting() const { return E_A - E_S; }                      // 2 hbar Omega
  double omega_split(double hbar) const { return splitting() / (2.0 * hbar); }
};

namespace detail {

inline double grid_norm(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s * dx);
}

/// Parity defect max_j |v(x_j) - sign * v(-x_j)| on a symmetric periodic grid
/// (point j mirrors to point n-j; j = 0 maps to itself at the far edge).
inline double parity_defect(const std::vector<double>& v, int sign) {
  const int n = static_cast<int>(v.size());
  double worst = 0.0;
  for (int j = 1; j < n; ++j) {
    worst = std::max(worst, std::abs(v[j] - sign * v[n - j]));
  }
  return worst;
}

}  // namespace detail

/// Solve the frozen double well U(x, 0) for the lowest n_states eigenpairs and
/// identify the ground doublet by parity. Throws if the two lowest states do
/// not come out with even/odd parity (degenerate or under-resolved grid).
inline DoubleWellSpectrum solve_double_well(const Grid1D& grid, const ChannelPotential& channel,
                                            double hbar, int n_states = 2) {
  if (n_states < 2) throw std::invalid_argument("solve_double_well: need n_states >= 2");
  const int n = grid.size();
  const double dx = grid.spacing();
  const double kin = hbar * hbar / (2.0 * dx * dx);

  Eigen::VectorXd diag(n), off(n - 1);
  for (int j = 0; j < n; ++j) diag(j) = 2.0 * kin + channel.frozen_value(grid.point(j), channel.d0);
  off.setConstant(-kin);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off);
  if (es.info() != Eigen::Success) throw std::runtime_error("solve_double_well: eigensolver failed");

  DoubleWellSpectrum spec{grid, {}, {}, 0.0, 0.0, {}};
  spec.energies.resize(n_states);
  for (int s = 0; s < n_states; ++s) spec.energies[s] = es.eigenvalues()(s);
  spec.E_S = es.eigenvalues()(0);
  spec.E_A = es.eigenvalues()(1);

  auto extract = [&](int col) {
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) v[j] = es.eigenvectors()(j, col);
    const double nm = detail::grid_norm(v, dx);
    for (auto& x : v) x /= nm;
    return v;
  };
  spec.psi_S = extract(0);
  spec.psi_A = extract(1);

  // Sign conventions: psi_S > 0 at x = 0, psi_A > 0 for x > 0.
  int j0 = 0;
  for (int j = 0; j < n; ++j) {
    if (std::abs(grid.point(j)) < std::abs(grid.point(j0))) j0 = j;
  }
  if (spec.psi_S[j0] < 0.0) {
    for (auto& x : spec.psi_S) x = -x;
  }
  double right_mass = 0.0;
  for (int j = 0; j < n; ++j) {
    if (grid.point(j) > 0.0) right_mass += spec.psi_A[j];
  }
  if (right_mass < 0.0) {
    for (auto& x : spec.psi_A) x = -x;
  }

  const double scale = std::max(std::abs(spec.psi_S[j0]), 1.0);
  if (detail::parity_defect(spec.psi_S, +1) > 1e-6 * scale ||
      detail::parity_defect(spec.psi_A, -1) > 1e-6 * scale) {
    throw std::runtime_error(
        "solve_double_well: lowest states are not an even/odd pair (grid failure)");
  }
  return spec;
}

struct LocalizedPair {
  Grid1D grid;
  std::vector<double> phi_L;  // <phi_L|x|phi_L> < 0
  std::vector<double> phi_R;
};

/// Localized well states (psi_S -/+ psi_A)/sqrt(2). With psi_A positive on the
/// right, the minus combination is the left state.
inline LocalizedPair localized_states(const DoubleWellSpectrum& spec) {
  const int n = spec.grid.size();
  LocalizedPair p{spec.grid, std::vector<double>(n), std::vector<double>(n)};
  const double inv_sqrt2 = 0.7071067811865476;
  for (int j = 0; j < n; ++j) {
    p.phi_L[j] = (spec.psi_S[j] - spec.psi_A[j]) * inv_sqrt2;
    p.phi_R[j] = (spec.psi_S[j] + spec.psi_A[j]) * inv_sqrt2;
  }
  return p;
}

/// Ground state by imaginary-time split-operator relaxation; independent
/// cross-check for the finite-difference solver. Returns the normalized state
/// and its energy estimate <H> on the spectral Hamiltonian.
struct ImaginaryTimeResult {
  WaveField state;
  double energy = 0.0;
  int iterations = 0;
};

inline ImaginaryTimeResult imaginary_time_ground_state(const Grid1D& grid,
                                                       const std::vector<double>& potential,
                                                       double hbar, double dtau = 2e-4,
                                                       int max_iters = 60000,
                                                       double tolerance = 1e-13) {
  const int n = grid.size();
  if (static_cast<int>(potential.size()) != n) {
    throw std::invalid_argument("imaginary_time_ground_state: potential size mismatch");
  }
  WaveField f(grid);
  for (int j = 0; j < n; ++j) {
    const double x = grid.point(j);
    f(j) = std::exp(-0.05 * x * x);  // broad symmetric seed
  }
  f.normalize();

  // exp(-T dtau / hbar) and exp(-U dtau / hbar), Strang-composed.
  std::vector<double> half_kin(n), pot(n);
  for (int j = 0; j < n; ++j) {
    const double k = grid.wavenumber(j);
    half_kin[j] = std::exp(-hbar * k * k * 0.25 * dtau) / n;
    pot[j] = std::exp(-potential[j] * dtau / hbar);
  }
  SpectralTransform fft(f.data(), n);
  double prev_energy = 1e300;
  int it = 0;
  for (; it < max_iters; ++it) {
    fft.forward();
    for (int j = 0; j < n; ++j) f(j) *= half_kin[j];
    fft.backward();
    for (int j = 0; j < n; ++j) f(j) *= pot[j];
    fft.forward();
    for (int j = 0; j < n; ++j) f(j) *= half_kin[j];
    fft.backward();
    f.normalize();
    if (it % 200 == 199) {
      // spectral <H>
      WaveField hk = f;
      SpectralTransform fk(hk.data(), n);
      fk.forward();
      for (int j = 0; j < n; ++j) {
        const double k = grid.wavenumber(j);
        hk(j) *= hbar * hbar * k * k * 0.5 / n;
      }
      fk.backward();
      double e = 0.0;
      for (int j = 0; j < n; ++j) {
        e += std::real(std::conj(f(j)) * (hk(j) + potential[j] * f(j)));
      }
      e *= grid.spacing();
      if (std::abs(e - prev_energy) < tolerance * std::max(1.0, std::abs(e))) {
        prev_energy = e;
        break;
      }
      prev_energy = e;
    }
  }
  return {std::move(f), prev_energy, it + 1};
}

/// The four two-particle Bell states built from the localized pair:
/// u1 = (LR + RL)/sqrt2, u2 = (LL + RR)/sqrt2, u3 = (LL - RR)/sqrt2,
/// u4 = (LR - RL)/sqrt2.
struct BellBasis {
  Grid1D grid;
  std::vector<double> u1, u2, u3, u4;  // row-major n*n

  int n() const { return grid.size(); }
};

inline BellBasis bell_basis(const LocalizedPair& p) {
  const int n = p.grid.size();
  BellBasis b{p.grid, {}, {}, {}, {}};
  const std::size_t total = std::size_t(n) * n;
  b.u1.resize(total);
  b.u2.resize(total);
  b.u3.resize(total);
  b.u4.resize(total);
  const double inv_sqrt2 = 0.7071067811865476;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = std::size_t(i) * n + j;
      const double LR = p.phi_L[i] * p.phi_R[j];
      const double RL = p.phi_R[i] * p.phi_L[j];
      const double LL = p.phi_L[i] * p.phi_L[j];
      const double RR = p.phi_R[i] * p.phi_R[j];
      b.u1[idx] = (LR + RL) * inv_sqrt2;
      b.u2[idx] = (LL + RR) * inv_sqrt2;
      b.u3[idx] = (LL - RR) * inv_sqrt2;
      b.u4[idx] = (LR - RL) * inv_sqrt2;
    }
  }
  return b;
}

/// Mean interaction energy shift of the doubly-occupied Bell states,
///   2 V_bar = 1/2 [(u2,Vu2) + (u3,Vu3) - (u1,Vu1) - (u4,Vu4)],
/// by 2D quadrature, plus the same-width-Gaussian approximation.
struct MeanInteraction {
  double v_bar_exact = 0.0;
  double v_bar_gaussian = 0.0;
  double element[4] = {0, 0, 0, 0};  // (u_i, V u_i)
};

inline MeanInteraction mean_interaction(const BellBasis& basis, const LocalizedPair& states,
                                        const PairInteraction& v, double separation_d0) {
  const int n = basis.n();
  const double dx = basis.grid.spacing();
  // V depends on |x_i - x_j| only; evaluate once per offset.
  std::vector<double> v_by_offset(n);
  for (int o = 0; o < n; ++o) v_by_offset[o] = v(o * dx);

  MeanInteraction out;
  const std::vector<double>* us[4] = {&basis.u1, &basis.u2, &basis.u3, &basis.u4};
  for (int s = 0; s < 4; ++s) {
    double acc = 0.0;
    const auto& u = *us[s];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double uv = u[std::size_t(i) * n + j];
        acc += uv * uv * v_by_offset[std::abs(i - j)];
      }
    }
    out.element[s] = acc * dx * dx;
  }
  out.v_bar_exact =
      0.25 * (out.element[1] + out.element[2] - out.element[0] - out.element[3]);

  // Gaussian approximation: replace phi_L/phi_R by Gaussians of the same RMS
  // width separated by d0; reduces to 1D integrals over the relative
  // coordinate u with density N(0, 2 sigma^2) resp. N(d0, 2 sigma^2).
  double mean = 0.0, mom2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = basis.grid.point(j);
    mean += x * states.phi_L[j] * states.phi_L[j];
    mom2 += x * x * states.phi_L[j] * states.phi_L[j];
  }
  mean *= dx;
  mom2 *= dx;
  const double sigma2 = mom2 - mean * mean;
  const double d0 = separation_d0;
  const double var_rel = 2.0 * sigma2;
  const int nq = 2001;
  const double umax = std::abs(d0) + 12.0 * std::sqrt(var_rel);
  const double du = 2.0 * umax / (nq - 1);
  double same = 0.0, cross = 0.0;
  for (int q = 0; q < nq; ++q) {
    const double u = -umax + q * du;
    const double w = (q == 0 || q == nq - 1) ? 0.5 : 1.0;
    const double g0 = std::exp(-u * u / (2.0 * var_rel));
    const double gd = std::exp(-(u - d0) * (u - d0) / (2.0 * var_rel));
    const double vv = v(std::abs(u));
    same += w * g0 * vv;
    cross += w * gd * vv;
  }
  const double norm = du / std::sqrt(2.0 * 3.141592653589793 * var_rel);
  out.v_bar_gaussian = 0.5 * (same - cross) * norm;
  return out;
}

}  // namespace qgroove
