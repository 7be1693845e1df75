#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chiralsim/modes.hpp"

// Parameter extraction from peak data: affine resonance lines, the coupling
// decay length, and the third-mode coupling amplitudes.

namespace chiralsim {

/// Ordinary least-squares line.
struct LineFit {
    double slope = 0.0;        ///< GHz per mm
    double intercept = 0.0;    ///< GHz
    double residual_rms = 0.0; ///< GHz
    std::size_t n_points = 0;
};

/// Exponential-decay fit of splitting-vs-distance, done in log space.
struct DecayFit {
    double d0_hat = 0.0;       ///< mm
    double g0_theta_hat = 0.0; ///< GHz, fitted amplitude g0 * angular factor
    double residual_rms = 0.0; ///< dimensionless (log space)
    std::size_t n_points = 0;
};

/// Result of the third-mode coupling search.
struct JFit {
    double j1_hat = 0.0; ///< GHz
    double j2_hat = 0.0; ///< GHz
    double residual_rms = 0.0; ///< GHz
    /// Best residual after the grid stage and after each descent sweep;
    /// non-increasing by construction.
    std::vector<double> residual_trace;
};

/// Fixed model parameters behind the (j1, j2) search.
struct JFitBase {
    ResonatorMode mode_a;
    ResonatorMode mode_b;
    double g0 = 1.0;                ///< GHz
    double d0 = 2.0;                ///< mm
    double omega_c_slope = 0.0;     ///< GHz per mm
    double omega_c_intercept = 0.0; ///< GHz
    double gamma = 0.0;             ///< GHz
    double j_min = 0.0;             ///< search bracket, GHz
    double j_max = 0.2;
};

/// OLS on (x, y); exact on collinear input. Throws FitError for fewer than
/// two points or a degenerate x column.
LineFit fit_line(const std::vector<std::pair<double, double>>& points);

/// Fits splitting(d) = 2 * amplitude * exp(-d/d0) by a line through
/// ln(split/2) vs d. Requires >= 2 points with positive splittings that
/// actually decay (negative fitted slope).
DecayFit fit_decay(const std::vector<std::pair<double, double>>& splittings);

/// Real part of the model eigenvalue tracking the third mode: the eigenvalue
/// whose real part is nearest the bare omega_c line at the system's spacing.
double third_branch_frequency(const ModeSystem& system);

/// Least-squares (j1, j2) against observed third-branch frequencies, keyed by
/// orientation delta_phi (rad) with (d, f_third) samples per orientation.
/// Coarse grid over [j_min, j_max]^2 followed by step-halving coordinate
/// descent. The input must constrain both amplitudes: at least one
/// cos^2-dominated and one sin^2-dominated orientation.
JFit fit_j_parameters(const std::map<double, std::vector<std::pair<double, double>>>& peaks_by_delta_phi,
                      const JFitBase& base);

// Flat key-value reports (one `key=value` per line).
std::string line_fit_report(const LineFit& fit);
std::string decay_fit_report(const DecayFit& fit);
std::string j_fit_report(const JFit& fit);

} // namespace chiralsim
