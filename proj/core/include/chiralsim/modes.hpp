#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "chiralsim/coupling.hpp"

// Non-Hermitian coupled-mode matrices and their hybridized eigenfrequencies.
// Eigenvalues are complex: the real part is the resonance position in GHz,
// the imaginary part is minus the decay rate.

namespace chiralsim {

using Complex = std::complex<double>;

/// Hybridized eigenfrequency; real part in GHz, imaginary part <= 0 for
/// passive modes (it is minus the decay rate).
using ComplexFrequency = Complex;

/// One resonator mode: bare resonance, internal loss, and line coupling rate.
struct ResonatorMode {
    double omega_r = 0.0;       ///< GHz, bare resonance
    double dissipation = 0.0;   ///< GHz, internal loss rate
    double line_coupling = 0.0; ///< GHz, external rate into the shared line

    void validate() const;

    /// omega_r - i * dissipation.
    Complex complex_frequency() const { return {omega_r, -dissipation}; }
};

/// Two coupled modes plus an optional third evanescent mode.
struct ModeSystem {
    ResonatorMode mode_a;
    ResonatorMode mode_b;
    std::optional<ResonatorMode> mode_c;
    CouplingParams coupling;

    bool has_third() const { return mode_c.has_value(); }
    std::size_t mode_count() const { return mode_c ? 3 : 2; }

    /// Member validity plus: mode_c present iff coupling.third present.
    void validate() const;
};

/// Rebinds a system to a new spacing: updates the geometry and, when a third
/// mode is present, recomputes its resonance from the omega_c line.
ModeSystem with_distance(ModeSystem system, double d_mm);

/// Dense complex square matrix of fixed capacity 3; used for the 2x2 and 3x3
/// coupling matrices and the frequency-domain dynamics.
class CouplingMatrix {
public:
    explicit CouplingMatrix(std::size_t n);

    std::size_t size() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[3 * i + j]; }
    Complex operator()(std::size_t i, std::size_t j) const { return a_[3 * i + j]; }

    Complex trace() const;

private:
    std::size_t n_;
    std::array<Complex, 9> a_{};
};

/// Complex symmetric coupling matrix of the system, in GHz.
///
/// Two modes:  [ w_a - i alpha     D_ab        ]
///             [ D_ab              w_b - i beta ]
///
/// Three modes append the C row/column with diagonal w_c - i gamma and
/// off-diagonals (A,C) = coupling_bc, (B,C) = coupling_ac. That placement is
/// deliberate; see eigenfrequencies() callers and the config docs.
CouplingMatrix coupling_matrix(const ModeSystem& system);

/// Closed-form eigenfrequencies of a two-mode system,
///   (w_a + w_b)/2 +- sqrt(D_ab^2 + ((w_a - w_b)/2)^2),
/// ordered by descending real part (ties: descending imaginary part).
std::pair<ComplexFrequency, ComplexFrequency> eigenfrequencies_two_mode(const ModeSystem& system);

/// All eigenvalues of a 2x2 or 3x3 complex matrix, ordered by descending real
/// part (ties: descending imaginary part). Direct solve: quadratic formula for
/// n = 2, shifted Cardano cubic with one Newton polish per root for n = 3.
/// Exact zero off-diagonal blocks are peeled off first so decoupled systems
/// come out bit-exact.
std::vector<ComplexFrequency> eigenfrequencies(const CouplingMatrix& matrix);

} // namespace chiralsim
