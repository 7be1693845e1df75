#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chiralsim {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or configuration value violates an invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input text; carries the 1-based line number of the offense.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// The frequency-domain linear system was singular at a drive frequency.
/// Only reachable at an exact complex degeneracy with zero damping.
class DegeneracyError : public Error {
public:
    explicit DegeneracyError(double omega_ghz, const std::string& detail = "")
        : Error("singular mode system at " + std::to_string(omega_ghz) + " GHz" +
                (detail.empty() ? "" : ": " + detail)),
          omega_ghz_(omega_ghz) {}

    double omega_ghz() const noexcept { return omega_ghz_; }

private:
    double omega_ghz_;
};

/// Calibration failed: degenerate data or unidentifiable parameters.
class FitError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace chiralsim
