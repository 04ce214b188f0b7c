#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace qgroove {

enum class Statistics { boson, fermion };

struct BeamSplitterOutput {
  double both_in_a = 0.0;
  double both_in_b = 0.0;
  double one_each = 0.0;
};

/// 50-50 beam splitter mode matrix (1/sqrt2) [[1, -i], [-i, 1]].
inline std::array<std::array<std::complex<double>, 2>, 2> beamsplitter_matrix() {
  const double s = 1.0 / std::numbers::sqrt2;
  const std::complex<double> mi(0.0, -1.0);
  return {{{s, s * mi}, {s * mi, s}}};
}

/// Output statistics for one particle per input port: bosons bunch, fermions
/// antibunch.
inline BeamSplitterOutput beamsplitter_statistics(Statistics stats) {
  if (stats == Statistics::boson) return {0.5, 0.5, 0.0};
  return {0.0, 0.0, 1.0};
}

/// Two-level flipping between the localized well states, starting from phi_L:
/// amplitudes (cos Omega t, i sin Omega t) up to the global E_bar phase.
inline std::pair<std::complex<double>, std::complex<double>> two_level_evolution(double t,
                                                                                 double omega) {
  return {std::cos(omega * t), std::complex<double>(0.0, std::sin(omega * t))};
}

/// Detuned flipping rate, Omega_eff = (1/2) sqrt(4 Omega^2 + V_bar^2/hbar^2).
inline double omega_eff(double omega, double v_bar, double hbar) {
  const double d = v_bar / hbar;
  return 0.5 * std::sqrt(4.0 * omega * omega + d * d);
}

/// State in the Bell basis u1..u4 with the parameters that govern its
/// evolution.
struct BellState4 {
  std::array<std::complex<double>, 4> a{};

  double norm() const {
    double s = 0.0;
    for (const auto& c : a) s += std::norm(c);
    return s;
  }
};

/// Exact evolution under the 4x4 Bell-basis Hamiltonian: the u1-u2 block
/// carries the coupling -2 hbar Omega and the detuning 2 V_bar on u2 and u3;
/// u3 and u4 acquire phases only. Computed from the closed-form 2x2 solution,
/// not a numerical integrator. e_bar adds the constant 2 E_bar shift of the
/// full form; it changes populations by nothing.
inline BellState4 bell4_evolve(const BellState4& initial, double t, double omega, double v_bar,
                               double hbar, double e_bar = 0.0) {
  // Reduced Hamiltonian on (a1, a2): -V_bar sigma_z - 2 hbar Omega sigma_x,
  // after splitting off the scalar part 2 e_bar + v_bar.
  const double gx = -2.0 * hbar * omega;  // sigma_x coefficient
  const double gz = -v_bar;               // sigma_z coefficient
  const double g = std::sqrt(gx * gx + gz * gz);
  const double theta = g * t / hbar;
  std::complex<double> m11, m12, m22;
  if (g == 0.0) {
    m11 = m22 = 1.0;
    m12 = 0.0;
  } else {
    const double c = std::cos(theta), s = std::sin(theta);
    m11 = std::complex<double>(c, -s * gz / g);
    m22 = std::complex<double>(c, +s * gz / g);
    m12 = std::complex<double>(0.0, -s * gx / g);
  }
  const std::complex<double> scalar = std::polar(1.0, -(2.0 * e_bar + v_bar) * t / hbar);
  BellState4 out;
  out.a[0] = scalar * (m11 * initial.a[0] + m12 * initial.a[1]);
  out.a[1] = scalar * (m12 * initial.a[0] + m22 * initial.a[1]);
  out.a[2] = scalar * std::polar(1.0, -v_bar * t / hbar) * initial.a[2];
  out.a[3] = scalar * std::polar(1.0, +v_bar * t / hbar) * initial.a[3];
  return out;
}

/// Analytic same-channel probability of the square-pulse two-level model:
/// start in u1, couple for the time that gives a complete u1 -> u2 transfer
/// at V_bar = 0 (Omega t = pi/4), and read |a2|^2. two_hbar_omega fixes the
/// splitting scale; an explicit coupling_time overrides the calibration.
inline double analytic_universality_point(double v_bar, double two_hbar_omega = 8.0,
                                          double hbar = 6.0,
                                          std::optional<double> coupling_time = std::nullopt) {
  if (!(two_hbar_omega > 0.0)) {
    throw std::invalid_argument("analytic_universality_point: two_hbar_omega must be positive");
  }
  const double omega = two_hbar_omega / (2.0 * hbar);
  const double t = coupling_time.value_or(std::numbers::pi / (4.0 * omega));
  BellState4 s;
  s.a[0] = 1.0;
  return std::norm(bell4_evolve(s, t, omega, v_bar, hbar).a[1]);
}

}  // namespace qgroove
