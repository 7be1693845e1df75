#pragma once

#include <optional>

#include "chiralsim/errors.hpp"

// Coupling model for a pair of chiral split-ring resonators sharing a
// microstrip line, plus an optional third evanescent mode.
//
// The inter-resonator coupling factorizes into a dimensionless angular factor
// set by the relative orientation of the split gaps and an exponential decay
// in the spacing. The third mode couples to the pair through cos^2/sin^2
// projections of the same orientation angle, and its resonance follows an
// affine law in the spacing.

namespace chiralsim {

/// Relative orientation and spacing of the resonator pair.
struct ChiralGeometry {
    /// Wraps delta_phi into [0, 2*pi); requires d >= 0 mm and d0 > 0 mm.
    ChiralGeometry(double delta_phi_rad, double d_mm, double d0_mm);

    double delta_phi; ///< relative gap orientation, rad, canonical in [0, 2*pi)
    double d;         ///< edge-to-edge spacing, mm
    double d0;        ///< characteristic decay length, mm

    void validate() const;
};

/// Third-mode coupling amplitudes and its resonance line.
struct ThirdModeParams {
    double j1 = 0.0;                ///< GHz, scales the cos^2 projection
    double j2 = 0.0;                ///< GHz, scales the sin^2 projection
    double omega_c_slope = 0.0;     ///< GHz per mm
    double omega_c_intercept = 0.0; ///< GHz
    double gamma = 0.0;             ///< GHz, internal dissipation of the mode

    void validate() const;
};

/// Full coupling configuration of a mode system.
struct CouplingParams {
    ChiralGeometry geometry;
    double g0 = 1.0; ///< GHz, overall scale of the pair coupling
    std::optional<ThirdModeParams> third;

    void validate() const;
};

/// Dimensionless angular factor (u)(sin pi u)(sin pi u + cos pi u) with
/// u = delta_phi / 2pi reduced into [0, 1). Total and 2*pi-periodic; zero at
/// 0 and 3*pi/2 exactly, 1/2 at pi exactly, negative on (3*pi/2, 2*pi).
double angular_factor(double delta_phi_rad);

/// Pair coupling rate g0 * angular_factor(delta_phi) * exp(-d/d0), GHz.
/// Negative in the inverted-coupling band of delta_phi.
double coupling_ab(const CouplingParams& params);

/// Third-mode coupling j1 * cos^2(delta_phi), GHz.
double coupling_ac(const ThirdModeParams& third, double delta_phi_rad);

/// Third-mode coupling j2 * sin^2(delta_phi), GHz.
double coupling_bc(const ThirdModeParams& third, double delta_phi_rad);

/// Third-mode resonance omega_c_slope * d + omega_c_intercept, GHz.
/// Throws ConfigError when the line evaluates to a non-positive frequency.
double third_mode_frequency(const ThirdModeParams& third, double d_mm);

} // namespace chiralsim
