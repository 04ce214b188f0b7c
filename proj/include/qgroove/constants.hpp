#pragma once

namespace qgroove::constants {

// CODATA 2018 values, compiled in for reproducibility.
inline constexpr double hbar_si = 1.054571817e-34;     // J s
inline constexpr double electron_mass_kg = 9.1093837015e-31;
inline constexpr double rb87_mass_kg = 1.443e-25;

}  // namespace qgroove::constants
