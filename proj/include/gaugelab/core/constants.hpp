#pragma once

namespace gaugelab {

/// Speed of light in Hartree atomic units.
inline constexpr double speed_of_light = 137.035999;

/// Default central-difference step (a.u.).
inline constexpr double default_fd_step = 1e-4;

/// Default absolute tolerance for comparisons built on analytic derivatives.
inline constexpr double default_analytic_tolerance = 1e-8;

inline constexpr double pi = 3.14159265358979323846;

}  // namespace gaugelab
