#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Measured-spectrum ingestion: Touchstone v1 two-port files (.s2p) and plain
// spectrum CSV, normalized to GHz / complex S21 for peak extraction and
// fitting. All text is ASCII; LF and CRLF are both accepted, LF is emitted.

namespace chiralsim {

/// One Touchstone data row, frequencies normalized to GHz.
struct TouchstoneRecord {
    double frequency = 0.0; ///< GHz
    std::complex<double> s11, s21, s12, s22;
};

/// A parsed transmission trace.
struct MeasuredSpectrum {
    /// (frequency GHz, complex S21), strictly increasing in frequency.
    std::vector<std::pair<double, std::complex<double>>> points;
    /// Provenance: source name plus format tag.
    std::string source;
};

/// Parses a Touchstone v1 2-port file: optional '!' comments, one option line
/// `# <Hz|kHz|MHz|GHz> S <RI|MA|DB> R <resistance>` (case-insensitive), then
/// data lines of 9 numbers (f, then S11 S21 S12 S22 pairs). MA pairs are
/// magnitude/angle-in-degrees, DB pairs are 20*log10 magnitude/angle. The
/// reference resistance is accepted and ignored. Errors carry line numbers.
std::vector<TouchstoneRecord> parse_touchstone(std::string_view text);

/// Touchstone writer restricted to `# GHz S RI R 50`.
std::string to_touchstone(const std::vector<TouchstoneRecord>& records);

/// S21 trace of parsed Touchstone records.
MeasuredSpectrum to_measured(const std::vector<TouchstoneRecord>& records,
                             std::string_view source_name);

/// Parses spectrum CSV with header `frequency_ghz,s21_re,s21_im` or
/// `frequency_ghz,s21_mag_db`; magnitude-only input stores zero phase.
MeasuredSpectrum parse_spectrum_csv(std::string_view text, std::string_view source_name = "csv");

/// CSV in the RI header format, 9 significant digits; parse . serialize is
/// the identity at that precision.
std::string serialize_spectrum(const MeasuredSpectrum& spectrum);

} // namespace chiralsim
