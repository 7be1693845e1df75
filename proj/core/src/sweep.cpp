#include "chiralsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "chiralsim/angles.hpp"
#include "chiralsim/text_io.hpp"

namespace chiralsim {

std::string_view branch_name(Branch b) {
    switch (b) {
    case Branch::lower: return "lower";
    case Branch::upper: return "upper";
    case Branch::third: return "third";
    case Branch::single: return "single";
    }
    return "single";
}

Branch branch_from_name(std::string_view name) {
    if (name == "lower") return Branch::lower;
    if (name == "upper") return Branch::upper;
    if (name == "third") return Branch::third;
    if (name == "single") return Branch::single;
    throw ConfigError("unknown branch label '" + std::string(name) + "'");
}

namespace {

void require_ascending(const std::vector<double>& axis, const char* what) {
    if (axis.empty()) throw ConfigError(std::string(what) + " axis is empty");
    for (std::size_t i = 1; i < axis.size(); ++i)
        if (!(axis[i] > axis[i - 1]))
            throw ConfigError(std::string(what) + " axis must be strictly increasing");
}

void require_rectangular(const SpectrumGrid& grid) {
    require_ascending(grid.freq_axis, "frequency");
    require_ascending(grid.dist_axis, "distance");
    if (grid.values.size() != grid.dist_axis.size())
        throw ConfigError("grid has " + std::to_string(grid.values.size()) + " value rows for " +
                          std::to_string(grid.dist_axis.size()) + " distances");
    for (const auto& row : grid.values)
        if (row.size() != grid.freq_axis.size())
            throw ConfigError("grid rows must match the frequency axis length");
}

} // namespace

SpectrumGrid grid_sweep(const ModeSystem& system_template, const DriveSpec& drive,
                        const AxisSpec& freq_range, const AxisSpec& dist_range,
                        const SweepOptions& options) {
    return grid_sweep(system_template, drive, freq_range, dist_range.values(), options);
}

SpectrumGrid grid_sweep(const ModeSystem& system_template, const DriveSpec& drive,
                        const AxisSpec& freq_range, std::vector<double> distances,
                        const SweepOptions& options) {
    system_template.validate();
    require_ascending(distances, "distance");

    SpectrumGrid grid;
    grid.freq_axis = freq_range.values();
    grid.dist_axis = std::move(distances);
    const std::size_t rows = grid.dist_axis.size();
    const std::size_t cols = grid.freq_axis.size();
    grid.values.assign(rows, std::vector<double>(cols));
    if (options.keep_complex)
        grid.complex_values.emplace(rows, std::vector<Complex>(cols));

    auto compute_row = [&](std::size_t r) {
        ModeSystem sys = with_distance(system_template, grid.dist_axis[r]);
        std::vector<TransmissionPoint> row;
        try {
            row = spectrum(sys, drive, freq_range.min, freq_range.max, freq_range.points);
        } catch (const DegeneracyError& e) {
            throw DegeneracyError(e.omega_ghz(),
                                  "row d = " + format_g9(grid.dist_axis[r]) + " mm");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            grid.values[r][c] = row[c].s21_mag_db;
            if (grid.complex_values) (*grid.complex_values)[r][c] = row[c].s21;
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t threads = options.threads > 0 ? static_cast<std::size_t>(options.threads)
                                              : std::max(1u, hw);
    threads = std::min(threads, rows);
    if (threads <= 1) {
        for (std::size_t r = 0; r < rows; ++r) compute_row(r);
        return grid;
    }

    // Contiguous row chunks; each row writes only its own slot, so the grid
    // bytes cannot depend on the thread count.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::size_t chunk = (rows + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(rows, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, t, lo, hi] {
            try {
                for (std::size_t r = lo; r < hi; ++r) compute_row(r);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return grid;
}

namespace {

struct Candidate {
    std::size_t bin;
    double f;
    double mag;
    double prominence;
};

// Topographic prominence: height above the higher of the two interval minima,
// where each interval runs from the peak to the nearest higher sample on that
// side (or to the window edge).
double prominence_at(const std::vector<double>& y, std::size_t lo, std::size_t hi, std::size_t i) {
    double left = y[i];
    for (std::size_t j = i; j-- > lo;) {
        if (y[j] > y[i]) break;
        left = std::min(left, y[j]);
    }
    double right = y[i];
    for (std::size_t j = i + 1; j <= hi; ++j) {
        if (y[j] > y[i]) break;
        right = std::min(right, y[j]);
    }
    return y[i] - std::max(left, right);
}

std::vector<Candidate> row_candidates(const std::vector<double>& y,
                                      const std::vector<double>& freq, std::size_t lo,
                                      std::size_t hi, double prominence_db) {
    std::vector<Candidate> found;
    if (hi - lo < 2) return found;
    for (std::size_t i = lo + 1; i < hi; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        double prom = prominence_at(y, lo, hi, i);
        if (!(prom > prominence_db)) continue;
        Candidate c{i, freq[i], y[i], prom};
        double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
        if (den < 0.0) {
            double shift = 0.5 * (y[i - 1] - y[i + 1]) / den;
            shift = std::clamp(shift, -0.5, 0.5);
            double bin_width = freq[i + 1] - freq[i];
            c.f = freq[i] + shift * bin_width;
            c.mag = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift;
        }
        found.push_back(c);
    }
    if (found.size() > 3) {
        std::stable_sort(found.begin(), found.end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.prominence > b.prominence;
                         });
        found.resize(3);
        std::sort(found.begin(), found.end(),
                  [](const Candidate& a, const Candidate& b) { return a.f < b.f; });
    }
    return found;
}

std::vector<Branch> canonical_labels(std::size_t count) {
    switch (count) {
    case 1: return {Branch::single};
    case 2: return {Branch::lower, Branch::upper};
    default: return {Branch::lower, Branch::upper, Branch::third};
    }
}

} // namespace

PeakSet find_peaks(const SpectrumGrid& grid, double f_min, double f_max, double prominence_db) {
    require_rectangular(grid);
    if (!(prominence_db > 0.0))
        throw ConfigError("prominence_db must be > 0, got " + std::to_string(prominence_db));
    if (!(f_min < f_max))
        throw ConfigError("peak window requires f_min < f_max");
    if (f_min < grid.freq_axis.front() || f_max > grid.freq_axis.back())
        throw ConfigError("peak window [" + format_g9(f_min) + ", " + format_g9(f_max) +
                          "] falls outside the grid frequency range");

    std::size_t lo = 0;
    while (grid.freq_axis[lo] < f_min) ++lo;
    std::size_t hi = grid.freq_axis.size() - 1;
    while (grid.freq_axis[hi] > f_max) --hi;
    if (hi < lo) return {}; // window sits between two grid samples

    PeakSet out;
    std::vector<std::pair<double, Branch>> previous; // (f, label) of the last row
    for (std::size_t r = 0; r < grid.dist_axis.size(); ++r) {
        std::vector<Candidate> cand =
            row_candidates(grid.values[r], grid.freq_axis, lo, hi, prominence_db);
        std::vector<Branch> labels(cand.size());
        if (previous.empty()) {
            if (!cand.empty()) labels = canonical_labels(cand.size());
        } else {
            // Carry labels by greedy nearest-frequency matching; labels may
            // swap through an anti-crossing, which is expected behaviour.
            struct Pairing {
                double gap;
                std::size_t prev, next;
            };
            std::vector<Pairing> pairs;
            for (std::size_t p = 0; p < previous.size(); ++p)
                for (std::size_t n = 0; n < cand.size(); ++n)
                    pairs.push_back({std::fabs(previous[p].first - cand[n].f), p, n});
            std::sort(pairs.begin(), pairs.end(), [](const Pairing& a, const Pairing& b) {
                if (a.gap != b.gap) return a.gap < b.gap;
                if (a.prev != b.prev) return a.prev < b.prev;
                return a.next < b.next;
            });
            std::vector<bool> prev_used(previous.size(), false), matched(cand.size(), false);
            for (const Pairing& p : pairs) {
                if (prev_used[p.prev] || matched[p.next]) continue;
                prev_used[p.prev] = matched[p.next] = true;
                labels[p.next] = previous[p.prev].second;
            }

            // New arrivals (the row gained peaks) prefer the free third
            // label: the evanescent branch is the one that wanders in and out
            // of the window. Position breaks the remaining ties.
            double f_lo = 1e300;
            std::vector<bool> used(4, false);
            for (std::size_t n = 0; n < cand.size(); ++n) {
                if (!matched[n]) continue;
                used[static_cast<std::size_t>(labels[n])] = true;
                f_lo = std::min(f_lo, cand[n].f);
            }
            auto take = [&](Branch want, std::size_t n) {
                if (used[static_cast<std::size_t>(want)]) return false;
                used[static_cast<std::size_t>(want)] = true;
                labels[n] = want;
                return true;
            };
            for (std::size_t n = 0; n < cand.size(); ++n) {
                if (matched[n]) continue;
                if (take(Branch::third, n)) continue;
                if (cand[n].f < f_lo && take(Branch::lower, n)) continue;
                if (take(Branch::upper, n) || take(Branch::lower, n) ||
                    take(Branch::single, n))
                    continue;
            }
        }

        previous.clear();
        for (std::size_t n = 0; n < cand.size(); ++n) {
            out.peaks.push_back({grid.dist_axis[r], cand[n].f, cand[n].mag, labels[n]});
            previous.emplace_back(cand[n].f, labels[n]);
        }
    }
    return out;
}

PhaseDiagram phase_diagram(double g0, double d0, const AxisSpec& d_range,
                           const AxisSpec& phi_range) {
    PhaseDiagram diagram;
    diagram.d_axis = d_range.values();
    diagram.phi_axis = phi_range.values();
    diagram.coupling.assign(diagram.d_axis.size(),
                            std::vector<double>(diagram.phi_axis.size()));
    for (std::size_t i = 0; i < diagram.d_axis.size(); ++i)
        for (std::size_t j = 0; j < diagram.phi_axis.size(); ++j)
            diagram.coupling[i][j] = coupling_ab(
                {ChiralGeometry(diagram.phi_axis[j], diagram.d_axis[i], d0), g0, std::nullopt});
    return diagram;
}

// --- serialization ----------------------------------------------------------

namespace {

constexpr std::string_view kGridHeader = "d_mm,frequency_ghz,s21_mag_db";
constexpr std::string_view kPeakHeader = "d_mm,frequency_ghz,mag_db,branch";

std::string pgm_of(const std::vector<std::vector<double>>& cells, std::size_t rows,
                   std::size_t cols, std::string_view value_name) {
    double mn = cells[0][0], mx = cells[0][0];
    for (const auto& row : cells)
        for (double v : row) {
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
    std::string out;
    out += "P5\n# ";
    out += value_name;
    out += " min=" + format_g9(mn) + " max=" + format_g9(mx) + "\n";
    out += std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
    out.reserve(out.size() + rows * cols);
    const double span = mx - mn;
    for (const auto& row : cells)
        for (double v : row) {
            int pixel = (span > 0.0) ? static_cast<int>(std::lround((v - mn) / span * 255.0)) : 0;
            out.push_back(static_cast<char>(std::clamp(pixel, 0, 255)));
        }
    return out;
}

double field_as_double(std::string_view field, std::size_t line_no, const char* what) {
    double v;
    if (!parse_double(field, v))
        throw ParseError(line_no, std::string("non-numeric ") + what + " field '" +
                                      std::string(field) + "'");
    return v;
}

} // namespace

std::string grid_to_csv(const SpectrumGrid& grid) {
    std::string out{kGridHeader};
    out += "\n";
    for (std::size_t i = 0; i < grid.dist_axis.size(); ++i) {
        const std::string d = format_g9(grid.dist_axis[i]);
        for (std::size_t j = 0; j < grid.freq_axis.size(); ++j) {
            out += d;
            out += ',';
            out += format_g9(grid.freq_axis[j]);
            out += ',';
            out += format_g9(grid.values[i][j]);
            out += '\n';
        }
    }
    return out;
}

SpectrumGrid grid_from_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kGridHeader)
        throw ParseError(1, "expected header '" + std::string(kGridHeader) + "'");

    SpectrumGrid grid;
    std::vector<double> row_values;
    std::vector<double> row_freqs;
    bool have_d = false;
    double current_d = 0.0;

    auto flush_row = [&](std::size_t line_no) {
        if (!have_d) return;
        if (grid.freq_axis.empty()) {
            grid.freq_axis = row_freqs;
        } else if (row_freqs != grid.freq_axis) {
            throw ParseError(line_no, "inconsistent frequency axis between distance rows");
        }
        grid.dist_axis.push_back(current_d);
        grid.values.push_back(row_values);
        row_values.clear();
        row_freqs.clear();
    };

    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto fields = split_csv(lines[k]);
        if (fields.size() != 3)
            throw ParseError(k + 1, "expected 3 fields, got " + std::to_string(fields.size()));
        double d = field_as_double(fields[0], k + 1, "d_mm");
        double f = field_as_double(fields[1], k + 1, "frequency_ghz");
        double v = field_as_double(fields[2], k + 1, "s21_mag_db");
        if (!have_d || d != current_d) {
            flush_row(k + 1);
            if (!grid.dist_axis.empty() && !(d > grid.dist_axis.back()))
                throw ParseError(k + 1, "distance axis must be strictly increasing");
            current_d = d;
            have_d = true;
        } else if (!row_freqs.empty() && !(f > row_freqs.back())) {
            throw ParseError(k + 1, "frequency axis must be strictly increasing");
        }
        row_freqs.push_back(f);
        row_values.push_back(v);
    }
    flush_row(lines.size() + 1);
    if (grid.dist_axis.empty()) throw ParseError(2, "no data rows");
    return grid;
}

std::string peaks_to_csv(const PeakSet& peaks) {
    std::string out{kPeakHeader};
    out += "\n";
    for (const Peak& p : peaks.peaks) {
        out += format_g9(p.d);
        out += ',';
        out += format_g9(p.f);
        out += ',';
        out += format_g9(p.mag_db);
        out += ',';
        out += branch_name(p.branch);
        out += '\n';
    }
    return out;
}

PeakSet peaks_from_csv(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kPeakHeader)
        throw ParseError(1, "expected header '" + std::string(kPeakHeader) + "'");
    PeakSet set;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto fields = split_csv(lines[k]);
        if (fields.size() != 4)
            throw ParseError(k + 1, "expected 4 fields, got " + std::to_string(fields.size()));
        Peak p;
        p.d = field_as_double(fields[0], k + 1, "d_mm");
        p.f = field_as_double(fields[1], k + 1, "frequency_ghz");
        p.mag_db = field_as_double(fields[2], k + 1, "mag_db");
        try {
            p.branch = branch_from_name(fields[3]);
        } catch (const ConfigError& e) {
            throw ParseError(k + 1, e.what());
        }
        set.peaks.push_back(p);
    }
    return set;
}

std::string grid_to_pgm(const SpectrumGrid& grid) {
    require_rectangular(grid);
    return pgm_of(grid.values, grid.dist_axis.size(), grid.freq_axis.size(), "s21_mag_db");
}

std::string phase_diagram_to_csv(const PhaseDiagram& diagram) {
    std::string out = "d_mm,delta_phi_deg,delta_ab_ghz\n";
    for (std::size_t i = 0; i < diagram.d_axis.size(); ++i) {
        const std::string d = format_g9(diagram.d_axis[i]);
        for (std::size_t j = 0; j < diagram.phi_axis.size(); ++j) {
            out += d;
            out += ',';
            out += format_g9(rad_to_deg(diagram.phi_axis[j]));
            out += ',';
            out += format_g9(diagram.coupling[i][j]);
            out += '\n';
        }
    }
    return out;
}

std::string phase_diagram_to_pgm(const PhaseDiagram& diagram) {
    require_ascending(diagram.d_axis, "distance");
    require_ascending(diagram.phi_axis, "orientation");
    return pgm_of(diagram.coupling, diagram.d_axis.size(), diagram.phi_axis.size(),
                  "delta_ab_ghz");
}

} // namespace chiralsim
