#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chiralsim/transmission.hpp"

// Frequency-distance transmission grids, coupling phase diagrams, and peak
// extraction with branch tracking.

namespace chiralsim {

/// Uniform axis description: `points` samples over [min, max] inclusive.
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int points = 0;

    std::vector<double> values() const { return uniform_grid(min, max, points); }
};

/// |S21| in dB (and optionally complex S21) over frequency x distance.
struct SpectrumGrid {
    std::vector<double> freq_axis; ///< GHz, ascending, uniform
    std::vector<double> dist_axis; ///< mm, ascending
    /// values[i][j] = 20*log10|S21| at (dist_axis[i], freq_axis[j])
    std::vector<std::vector<double>> values;
    std::optional<std::vector<std::vector<Complex>>> complex_values;
};

enum class Branch { lower, upper, third, single };

std::string_view branch_name(Branch b);
Branch branch_from_name(std::string_view name);

/// One extracted resonance peak.
struct Peak {
    double d = 0.0;      ///< mm
    double f = 0.0;      ///< GHz, parabolically refined
    double mag_db = 0.0; ///< refined height
    Branch branch = Branch::single;
};

/// Peaks sorted by (d, f); at most one peak per (d, branch).
struct PeakSet {
    std::vector<Peak> peaks;
};

/// coupling[i][j] = pair coupling at (d_axis[i], phi_axis[j]), GHz.
struct PhaseDiagram {
    std::vector<double> d_axis;   ///< mm
    std::vector<double> phi_axis; ///< rad
    std::vector<std::vector<double>> coupling;
};

struct SweepOptions {
    int threads = 0;           ///< 0 = hardware concurrency
    bool keep_complex = false; ///< also store complex S21 per cell
};

/// Evaluates the spectrum at every distance, rebuilding the couplings (and
/// the third-mode resonance) per row. Rows may be computed concurrently; the
/// result is byte-identical for any thread count.
SpectrumGrid grid_sweep(const ModeSystem& system_template, const DriveSpec& drive,
                        const AxisSpec& freq_range, const AxisSpec& dist_range,
                        const SweepOptions& options = {});

/// Same, over an explicit ascending distance list (e.g. measured spacings).
SpectrumGrid grid_sweep(const ModeSystem& system_template, const DriveSpec& drive,
                        const AxisSpec& freq_range, std::vector<double> distances,
                        const SweepOptions& options = {});

/// Local |S21| maxima per distance row within [f_min, f_max] whose topographic
/// prominence exceeds prominence_db, with 3-point parabolic refinement of the
/// peak frequency. The first populated row is labeled by frequency ordering
/// (one peak: single; two: lower/upper; three: lower/upper/third); later rows
/// inherit labels by greedy nearest-frequency matching against the previous
/// row, so labels may swap through an anti-crossing. A peak without a
/// predecessor takes the third label when free (the evanescent branch is the
/// one that wanders in and out of the window), else a positional one. Rows
/// with more than three peaks keep the three most prominent. An empty result
/// is not an error; a window outside the grid is.
PeakSet find_peaks(const SpectrumGrid& grid, double f_min, double f_max, double prominence_db);

/// Dense evaluation of the pair coupling over distance x orientation.
PhaseDiagram phase_diagram(double g0, double d0, const AxisSpec& d_range,
                           const AxisSpec& phi_range);

// --- serialization ---------------------------------------------------------

/// Long-form CSV `d_mm,frequency_ghz,s21_mag_db`, d-major, 9 significant
/// digits, LF line endings.
std::string grid_to_csv(const SpectrumGrid& grid);
SpectrumGrid grid_from_csv(std::string_view text);

/// CSV `d_mm,frequency_ghz,mag_db,branch`.
std::string peaks_to_csv(const PeakSet& peaks);
PeakSet peaks_from_csv(std::string_view text);

/// Binary PGM (P5, maxval 255), one pixel per cell, row 0 = smallest
/// distance, linear dB mapping min->0 max->255; min/max are recorded on the
/// comment line.
std::string grid_to_pgm(const SpectrumGrid& grid);

/// Long-form CSV `d_mm,delta_phi_deg,delta_ab_ghz`, d-major.
std::string phase_diagram_to_csv(const PhaseDiagram& diagram);

/// PGM of the coupling values, same conventions as grid_to_pgm.
std::string phase_diagram_to_pgm(const PhaseDiagram& diagram);

} // namespace chiralsim
