#pragma once

#include <array>
#include <string>
#include <string_view>

// Named device configurations P/Q/R/S: the four gap orientations with their
// fitted third-mode couplings, omega_c lines, and the spacings at which
// samples were fabricated.

namespace chiralsim {

struct Preset {
    std::string_view name;
    double delta_phi_deg;
    double j1;                ///< GHz
    double j2;                ///< GHz
    double omega_c_slope;     ///< GHz per mm
    double omega_c_intercept; ///< GHz
    double gamma;             ///< GHz, third-mode dissipation
    std::array<double, 8> distances; ///< mm, fabricated spacings
};

/// All four presets, in P, Q, R, S order.
const std::array<Preset, 4>& all_presets();

/// Lookup by name ("P".."S", case-insensitive); throws ConfigError.
const Preset& preset(std::string_view name);

} // namespace chiralsim
