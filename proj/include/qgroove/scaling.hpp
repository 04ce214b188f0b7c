#pragma once

#include <cmath>
#include <stdexcept>

#include "qgroove/constants.hpp"

namespace qgroove {

/// The (xi, tau, m) scaling triple. Everything downstream of this type works
/// in dimensionless variables; this is the only unit boundary in the library.
struct ScaledUnits {
  double length_m;  // xi
  double time_s;    // tau
  double mass_kg;   // m

  ScaledUnits(double xi, double tau, double mass)
      : length_m(xi), time_s(tau), mass_kg(mass) {
    if (!(xi > 0.0) || !(tau > 0.0) || !(mass > 0.0)) {
      throw std::invalid_argument("ScaledUnits: xi, tau and m must all be positive");
    }
  }
};

/// Effective dimensionless Planck constant hbar*tau/(m*xi^2).
inline double hbar_eff(const ScaledUnits& u) {
  return constants::hbar_si * u.time_s / (u.mass_kg * u.length_m * u.length_m);
}

struct PhysicalPoint {
  double x = 0.0;  // m
  double z = 0.0;  // m
  double t = 0.0;  // s
  double p = 0.0;  // kg m/s
};

struct ScaledPoint {
  double x = 0.0;
  double z = 0.0;
  double t = 0.0;
  double p = 0.0;
};

inline ScaledPoint to_dimensionless(const PhysicalPoint& q, const ScaledUnits& u) {
  return {q.x / u.length_m, q.z / u.length_m, q.t / u.time_s,
          u.time_s * q.p / (u.mass_kg * u.length_m)};
}

inline PhysicalPoint to_physical(const ScaledPoint& q, const ScaledUnits& u) {
  return {q.x * u.length_m, q.z * u.length_m, q.t * u.time_s,
          q.p * u.mass_kg * u.length_m / u.time_s};
}

}  // namespace qgroove
