#pragma once

// Gaussian (cgs) constants used throughout the library.
namespace causal::constants {

inline constexpr double speed_of_light = 2.99792458e10;  // cm/s
inline constexpr double electron_charge = 4.8032e-10;    // esu
inline constexpr double electron_mass = 9.1094e-28;      // g

}  // namespace causal::constants
