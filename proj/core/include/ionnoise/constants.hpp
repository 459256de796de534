#pragma once

// CODATA 2018 values, SI units.

#include <numbers>

namespace ionnoise::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double planck = 6.62607015e-34;               // J s
inline constexpr double boltzmann = 1.380649e-23;              // J/K
inline constexpr double epsilon0 = 8.8541878128e-12;           // F/m
inline constexpr double mu0 = 1.25663706212e-6;                // N/A^2
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double electron_volt = 1.602176634e-19;       // J
inline constexpr double debye = 3.33564e-30;                   // C m

}  // namespace ionnoise::constants

namespace ionnoise {

// Interfaces take Hz; everything inside is angular.
constexpr double hz_to_rad(double f) { return 2.0 * constants::pi * f; }
constexpr double rad_to_hz(double omega) { return omega / (2.0 * constants::pi); }

constexpr double ev_to_joule(double ev) { return ev * constants::electron_volt; }
constexpr double joule_to_ev(double j) { return j / constants::electron_volt; }
constexpr double debye_to_cm(double d) { return d * constants::debye; }

// Convert a double-sided spectral density to the single-sided convention used throughout.
constexpr double single_sided(double double_sided) { return 2.0 * double_sided; }

}  // namespace ionnoise
