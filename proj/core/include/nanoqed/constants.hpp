#pragma once

// CODATA 2018 exact values (SI).
namespace nanoqed::constants {

inline constexpr double planck_h = 6.62607015e-34;       // J s
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double boltzmann_kB = 1.380649e-23;     // J/K
inline constexpr double epsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double pi = 3.14159265358979323846;

} // namespace nanoqed::constants
