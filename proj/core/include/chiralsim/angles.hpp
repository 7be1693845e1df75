#pragma once

#include <cmath>

// Angle utilities. Angles are radians internally and degrees at tool
// boundaries. The sinpi/cospi pair evaluates on "turns" with exact folding so
// that the quarter- and half-turn landmarks come out bit-exact; the naive
// sin(x)+cos(x) route leaves ~1e-16 residue at the 3/4-turn zero.

namespace chiralsim {

inline constexpr double kTwoPi = 2.0 * M_PI;

inline double deg_to_rad(double deg) { return (deg / 180.0) * M_PI; }
inline double rad_to_deg(double rad) { return (rad / M_PI) * 180.0; }

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double rad) {
    double r = std::fmod(rad, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

/// Wraps a value in turns into [0, 1).
inline double wrap_turns(double u) {
    u -= std::floor(u);
    if (u >= 1.0) u = 0.0;
    return u;
}

namespace detail {

// v in [0, 0.5]; the 0.5 - v fold is exact by Sterbenz for v >= 0.25.
inline double sinpi_half(double v) {
    return (v <= 0.25) ? std::sin(M_PI * v) : std::cos(M_PI * (0.5 - v));
}

// The quarter point goes through sin so that sinpi_half(0.25) and
// cospi_half(0.25) are the same double and their difference is exactly zero.
inline double cospi_half(double v) {
    return (v < 0.25) ? std::cos(M_PI * v) : std::sin(M_PI * (0.5 - v));
}

} // namespace detail

/// sin(pi * u) for u in [0, 1).
inline double sinpi_turn(double u) {
    return (u <= 0.5) ? detail::sinpi_half(u) : detail::sinpi_half(1.0 - u);
}

/// cos(pi * u) for u in [0, 1).
inline double cospi_turn(double u) {
    return (u <= 0.5) ? detail::cospi_half(u) : -detail::cospi_half(1.0 - u);
}

/// sin(2*pi * u) for u in [0, 1).
inline double sin2pi_turn(double u) {
    double v = 2.0 * u;
    return (v < 1.0) ? sinpi_turn(v) : -sinpi_turn(v - 1.0);
}

/// cos(2*pi * u) for u in [0, 1).
inline double cos2pi_turn(double u) {
    double v = 2.0 * u;
    return (v < 1.0) ? cospi_turn(v) : -cospi_turn(v - 1.0);
}

} // namespace chiralsim
