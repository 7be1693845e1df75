#pragma once

#include <vector>

#include "chiralsim/modes.hpp"

// Frequency-domain solve of the driven, damped coupled-mode equations and the
// forward transmission S21 = P_out/P_in - 1. Per mode X the steady state
// obeys
//
//   [i(w - w~_X) - b_X] X - sum_Y [sqrt(b_X b_Y) + i K_XY] Y
//       = i sqrt(b_X) e^{i theta_X} P_in,
//
// where b_X is the line coupling, K_XY the coupling-matrix off-diagonal and
// w~_X the complex mode frequency. The output field is
// P_out = P_in - 2i sum_X sqrt(b_X) X.

namespace chiralsim {

/// Per-port drive phases, radians. Only relative phases are physical; the
/// canonical form shifts theta_a to zero.
struct DriveSpec {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double theta_c = 0.0;

    DriveSpec canonical() const {
        return {0.0, theta_b - theta_a, theta_c - theta_a};
    }
};

/// One evaluated transmission sample.
struct TransmissionPoint {
    double frequency = 0.0;   ///< GHz
    Complex s21{};            ///< dimensionless
    double s21_mag_db = 0.0;  ///< 20*log10|s21|
};

/// Steady-state mode amplitudes (A, B[, C]) at drive frequency omega for
/// input amplitude p_in. Throws DegeneracyError when the linear system is
/// singular at omega (requires an exact degeneracy with zero damping).
std::vector<Complex> mode_amplitudes(const ModeSystem& system, const DriveSpec& drive,
                                     double omega_ghz, double p_in = 1.0);

/// Transmission coefficient at a single frequency, per the definition above.
/// Magnitudes above one are legitimate for this convention.
TransmissionPoint s21(const ModeSystem& system, const DriveSpec& drive, double omega_ghz);

/// n_points >= 2 uniformly spaced samples over [f_min, f_max], endpoints
/// included exactly. Deterministic; errors carry the offending frequency.
std::vector<TransmissionPoint> spectrum(const ModeSystem& system, const DriveSpec& drive,
                                        double f_min, double f_max, int n_points);

/// Uniform grid over [lo, hi] inclusive of both endpoints; n >= 1
/// (n == 1 yields {lo} and requires lo == hi).
std::vector<double> uniform_grid(double lo, double hi, int n);

} // namespace chiralsim
