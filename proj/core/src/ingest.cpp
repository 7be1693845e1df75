#include "chiralsim/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "chiralsim/angles.hpp"
#include "chiralsim/errors.hpp"
#include "chiralsim/text_io.hpp"

namespace chiralsim {

namespace {

enum class PairFormat { ri, ma, db };

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::complex<double> decode_pair(PairFormat fmt, double first, double second) {
    switch (fmt) {
    case PairFormat::ri: return {first, second};
    case PairFormat::ma: {
        double angle = deg_to_rad(second);
        return {first * std::cos(angle), first * std::sin(angle)};
    }
    case PairFormat::db: {
        double mag = std::pow(10.0, first / 20.0);
        double angle = deg_to_rad(second);
        return {mag * std::cos(angle), mag * std::sin(angle)};
    }
    }
    return {};
}

std::string_view strip_comment(std::string_view line) {
    std::size_t bang = line.find('!');
    return (bang == std::string_view::npos) ? line : line.substr(0, bang);
}

} // namespace

std::vector<TouchstoneRecord> parse_touchstone(std::string_view text) {
    auto lines = split_lines(text);

    bool have_option = false;
    double freq_divisor = 1.0; // input unit -> GHz
    PairFormat fmt = PairFormat::ri;

    std::vector<TouchstoneRecord> records;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const std::size_t line_no = k + 1;
        std::string_view body = strip_comment(lines[k]);
        auto tokens = split_ws(body);
        if (tokens.empty()) continue;

        if (tokens[0] == "#") {
            if (have_option) throw ParseError(line_no, "duplicate option line");
            if (tokens.size() != 6)
                throw ParseError(line_no,
                                 "option line must be '# <freq-unit> S <format> R <resistance>'");
            std::string unit = lower(tokens[1]);
            if (unit == "hz") freq_divisor = 1e9;
            else if (unit == "khz") freq_divisor = 1e6;
            else if (unit == "mhz") freq_divisor = 1e3;
            else if (unit == "ghz") freq_divisor = 1.0;
            else throw ParseError(line_no, "unknown frequency unit '" + std::string(tokens[1]) + "'");
            if (lower(tokens[2]) != "s")
                throw ParseError(line_no, "expected parameter type 'S', got '" +
                                              std::string(tokens[2]) + "'");
            std::string f = lower(tokens[3]);
            if (f == "ri") fmt = PairFormat::ri;
            else if (f == "ma") fmt = PairFormat::ma;
            else if (f == "db") fmt = PairFormat::db;
            else throw ParseError(line_no, "unknown data format '" + std::string(tokens[3]) + "'");
            if (lower(tokens[4]) != "r")
                throw ParseError(line_no, "expected 'R <resistance>', got '" +
                                              std::string(tokens[4]) + "'");
            double resistance;
            if (!parse_double(tokens[5], resistance))
                throw ParseError(line_no, "non-numeric reference resistance '" +
                                              std::string(tokens[5]) + "'");
            have_option = true;
            continue;
        }

        if (!have_option) throw ParseError(line_no, "data before the '#' option line");
        if (tokens.size() != 9)
            throw ParseError(line_no, "expected 9 numbers per 2-port data line, got " +
                                          std::to_string(tokens.size()));
        std::array<double, 9> v{};
        for (std::size_t i = 0; i < 9; ++i)
            if (!parse_double(tokens[i], v[i]))
                throw ParseError(line_no, "non-numeric field '" + std::string(tokens[i]) + "'");

        TouchstoneRecord rec;
        rec.frequency = v[0] / freq_divisor;
        rec.s11 = decode_pair(fmt, v[1], v[2]);
        rec.s21 = decode_pair(fmt, v[3], v[4]);
        rec.s12 = decode_pair(fmt, v[5], v[6]);
        rec.s22 = decode_pair(fmt, v[7], v[8]);
        if (!(rec.frequency > 0.0))
            throw ParseError(line_no, "frequency must be positive");
        if (!records.empty() && !(rec.frequency > records.back().frequency))
            throw ParseError(line_no, "frequencies must be strictly increasing");
        records.push_back(rec);
    }

    if (!have_option) throw ParseError(lines.size() + 1, "missing '#' option line");
    if (records.empty()) throw ParseError(lines.size() + 1, "no data rows");
    return records;
}

std::string to_touchstone(const std::vector<TouchstoneRecord>& records) {
    std::string out = "# GHz S RI R 50\n";
    for (const TouchstoneRecord& r : records) {
        out += format_g9(r.frequency);
        for (const std::complex<double>& s : {r.s11, r.s21, r.s12, r.s22}) {
            out += ' ';
            out += format_g9(s.real());
            out += ' ';
            out += format_g9(s.imag());
        }
        out += '\n';
    }
    return out;
}

MeasuredSpectrum to_measured(const std::vector<TouchstoneRecord>& records,
                             std::string_view source_name) {
    MeasuredSpectrum spec;
    spec.source = std::string(source_name) + " (touchstone)";
    spec.points.reserve(records.size());
    for (const TouchstoneRecord& r : records) spec.points.emplace_back(r.frequency, r.s21);
    return spec;
}

MeasuredSpectrum parse_spectrum_csv(std::string_view text, std::string_view source_name) {
    auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, "missing header");

    bool magnitude_only;
    if (lines[0] == "frequency_ghz,s21_re,s21_im") magnitude_only = false;
    else if (lines[0] == "frequency_ghz,s21_mag_db") magnitude_only = true;
    else
        throw ParseError(1, "unknown header '" + std::string(lines[0]) +
                                "'; expected 'frequency_ghz,s21_re,s21_im' or "
                                "'frequency_ghz,s21_mag_db'");

    MeasuredSpectrum spec;
    spec.source = std::string(source_name) + (magnitude_only ? " (csv db)" : " (csv ri)");
    const std::size_t want = magnitude_only ? 2 : 3;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto fields = split_csv(lines[k]);
        if (fields.size() != want)
            throw ParseError(k + 1, "expected " + std::to_string(want) + " fields, got " +
                                        std::to_string(fields.size()));
        std::array<double, 3> v{};
        for (std::size_t i = 0; i < want; ++i)
            if (!parse_double(fields[i], v[i]))
                throw ParseError(k + 1, "non-numeric field '" + std::string(fields[i]) + "'");
        double f = v[0];
        std::complex<double> s21 = magnitude_only
                                       ? std::complex<double>(std::pow(10.0, v[1] / 20.0), 0.0)
                                       : std::complex<double>(v[1], v[2]);
        if (!spec.points.empty() && !(f > spec.points.back().first))
            throw ParseError(k + 1, "frequencies must be strictly increasing");
        spec.points.emplace_back(f, s21);
    }
    if (spec.points.empty()) throw ParseError(lines.size() + 1, "no data rows");
    return spec;
}

std::string serialize_spectrum(const MeasuredSpectrum& spectrum) {
    std::string out = "frequency_ghz,s21_re,s21_im\n";
    for (const auto& [f, s21] : spectrum.points) {
        out += format_g9(f);
        out += ',';
        out += format_g9(s21.real());
        out += ',';
        out += format_g9(s21.imag());
        out += '\n';
    }
    return out;
}

} // namespace chiralsim
