#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "chiralsim/transmission.hpp"

// Run configuration: a flat JSON object of model parameters with optional
// preset expansion. Angles are degrees at this boundary and radians inside
// the engines. Precedence: defaults < preset fields < explicit JSON keys
// (callers may apply further overrides before finalize()).

namespace chiralsim {

struct RunConfig {
    std::optional<std::string> preset;

    // Two-mode parameters. The defaults are desk-scale tuning knobs, not
    // measured values.
    double omega_r = 9.0;   ///< GHz, bare resonance of both resonators
    double alpha = 0.01;    ///< GHz, internal loss of mode A
    double beta_diss = 0.01;///< GHz, internal loss of mode B
    double beta_a = 0.05;   ///< GHz, line coupling of mode A
    double beta_b = 0.05;   ///< GHz, line coupling of mode B
    double g0 = 1.0;        ///< GHz, coupling scale
    double d0 = 2.0;        ///< mm, decay length
    double d = 1.0;         ///< mm, spacing
    std::optional<double> delta_phi_deg; ///< required; no physical default

    // Third mode (opt-in).
    bool third_enabled = false;
    std::optional<double> j1, j2;          ///< GHz
    std::optional<double> omega_c_slope;   ///< GHz per mm
    std::optional<double> omega_c_intercept; ///< GHz
    std::optional<double> gamma;           ///< GHz
    std::optional<double> beta_c;          ///< GHz; defaults to beta_a / 2

    // Drive phases, degrees.
    double theta_a_deg = 0.0;
    double theta_b_deg = 0.0;
    double theta_c_deg = 0.0;

    double beta_c_value() const { return beta_c.value_or(0.5 * beta_a); }

    /// Checks requiredness and value invariants; names the offending key.
    void finalize() const;
};

/// Applies a preset's fields (delta_phi and the third-mode block) onto cfg.
void apply_preset(RunConfig& cfg, std::string_view name);

/// Parses a JSON object with known keys only, expanding `preset` first so
/// explicit keys override it. Does not finalize, so callers can layer
/// command-line overrides on top.
RunConfig parse_config(std::string_view json_text);

/// parse_config + finalize.
RunConfig load_config(const std::filesystem::path& path);

/// Builds the engine inputs. Requires a finalized config.
ModeSystem to_mode_system(const RunConfig& cfg);
DriveSpec to_drive(const RunConfig& cfg);

} // namespace chiralsim
