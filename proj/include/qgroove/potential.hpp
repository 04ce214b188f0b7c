#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qgroove/quadrature.hpp"

namespace qgroove {

/// Double-well channel geometry: two harmonic grooves of frequency omega whose
/// separation d(z) = 2 + d0 - 2/cosh(z/eta) narrows to d0 at z = 0.
struct ChannelPotential {
  double omega;  // dimensionless transverse frequency
  double d0;     // minimum well separation
  double eta;    // width of the approach region

  static constexpr double asymptotic_gap = 2.0;

  ChannelPotential(double omega_, double d0_, double eta_)
      : omega(omega_), d0(d0_), eta(eta_) {
    if (!(omega > 0.0) || !(d0 > 0.0) || !(eta > 0.0)) {
      throw std::invalid_argument("ChannelPotential: omega, d0 and eta must be positive");
    }
  }

  double separation(double z) const {
    return asymptotic_gap + d0 - 2.0 / std::cosh(z / eta);
  }

  /// Product-over-sum combination of the two harmonic wells. The removable
  /// singularity at x = 0, d = 0 is defined as 0.
  double value(double x, double z) const {
    return frozen_value(x, separation(z));
  }

  /// Potential cross section at fixed well separation d.
  double frozen_value(double x, double d) const {
    const double lp = x + 0.5 * d;
    const double lm = x - 0.5 * d;
    const double a = lp * lp;
    const double b = lm * lm;
    const double den = a + b;
    if (den == 0.0) return 0.0;
    return 0.5 * omega * omega * a * b / den;
  }

  /// Barrier height between the wells at closest approach, omega^2 d0^2 / 16.
  double barrier_height() const { return frozen_value(0.0, d0); }
};

enum class InteractionKind { coulomb, lennard_jones };

/// Regularized two-body interaction, finite at r = 0 through
/// r_eps = sqrt(r^2 + eps^2).
struct InteractionPotential {
  InteractionKind kind;
  double v0;       // strength, either sign
  double epsilon;  // regularization length
  double b;        // Lennard-Jones range (ignored for Coulomb)

  InteractionPotential(InteractionKind kind_, double v0_, double epsilon_, double b_ = 0.25)
      : kind(kind_), v0(v0_), epsilon(epsilon_), b(b_) {
    if (!(epsilon > 0.0)) {
      throw std::invalid_argument("InteractionPotential: epsilon must be positive");
    }
    if (kind == InteractionKind::lennard_jones && !(b > 0.0)) {
      throw std::invalid_argument("InteractionPotential: Lennard-Jones b must be positive");
    }
  }

  double value(double r) const {
    const double re = std::sqrt(r * r + epsilon * epsilon);
    if (kind == InteractionKind::coulomb) return v0 / re;
    const double q = b / re;
    const double q6 = q * q * q * q * q * q;
    return v0 * (q6 * q6 - q6);
  }
};

inline double interaction(double r, const InteractionPotential& v) { return v.value(r); }

/// Effective transverse pair potential for the paraxial two-particle runs.
///
/// The paraxial reduction removes both longitudinal coordinates, but the pair
/// distance still carries the longitudinal separation of the packets. With
/// both particles in co-moving Gaussian z-packets of width sigma_z, tracing
/// over z averages the bare kernel over dz ~ N(0, 2 sigma_z^2):
///
///   V_eff(s) = E_dz[ V(sqrt(s^2 + dz^2)) ]
///
/// sigma_z = 0 reduces exactly to the bare V(|x1 - x2|).
class PairInteraction {
 public:
  PairInteraction(InteractionPotential bare, double sigma_z = 0.0, int quadrature_points = 41)
      : bare_(bare), sigma_z_(sigma_z) {
    if (sigma_z < 0.0) throw std::invalid_argument("PairInteraction: sigma_z must be >= 0");
    if (sigma_z_ > 0.0) {
      GaussHermiteRule gh(quadrature_points);
      nodes_ = gh.nodes;
      weights_ = gh.weights;
      // E[f(dz)], dz ~ N(0, 2 sigma_z^2): dz = 2 sigma_z t with weight e^{-t^2}/sqrt(pi).
      const double inv_sqrt_pi = 0.5641895835477563;
      for (auto& w : weights_) w *= inv_sqrt_pi;
      for (auto& t : nodes_) t *= 2.0 * sigma_z_;
    }
  }

  double operator()(double s) const {
    if (sigma_z_ == 0.0) return bare_.value(s);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      acc += weights_[i] * bare_.value(std::sqrt(s * s + nodes_[i] * nodes_[i]));
    }
    return acc;
  }

  const InteractionPotential& bare() const { return bare_; }
  double sigma_z() const { return sigma_z_; }

 private:
  InteractionPotential bare_;
  double sigma_z_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace qgroove
