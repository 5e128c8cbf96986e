#pragma once

#include <numbers>

// CODATA 2018 exact SI defining constants.
namespace mwqi::constants {

inline constexpr double planck_h = 6.62607015e-34;                       // J s
inline constexpr double hbar = planck_h / (2.0 * std::numbers::pi);      // J s
inline constexpr double boltzmann = 1.380649e-23;                        // J / K
inline constexpr double speed_of_light = 299792458.0;                    // m / s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace mwqi::constants
