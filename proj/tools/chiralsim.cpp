// Command-line front end: simulation, sweeps, peak extraction, calibration,
// and measured-data ingestion. Artifacts are written atomically; identical
// inputs produce byte-identical outputs. Exit codes: 0 success, 1 I/O or
// numerical failure, 2 validation error.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chiralsim/angles.hpp"
#include "chiralsim/calibration.hpp"
#include "chiralsim/config.hpp"
#include "chiralsim/ingest.hpp"
#include "chiralsim/presets.hpp"
#include "chiralsim/sweep.hpp"
#include "chiralsim/text_io.hpp"

namespace cs = chiralsim;

namespace {

struct CommonOpts {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::optional<double> d;
    std::optional<double> theta_a, theta_b, theta_c;
    std::optional<bool> third;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file (flat RunConfig object)");
    cmd->add_option("--preset", opts.preset, "device preset: P, Q, R or S");
    cmd->add_option("--d", opts.d, "inter-resonator spacing, mm (default 1.0)");
    cmd->add_option("--theta-a", opts.theta_a, "drive phase at mode A, degrees (default 0)");
    cmd->add_option("--theta-b", opts.theta_b, "drive phase at mode B, degrees (default 0)");
    cmd->add_option("--theta-c", opts.theta_c, "drive phase at mode C, degrees (default 0)");
    cmd->add_flag("--third,!--no-third", opts.third, "include the third evanescent mode");
    cmd->add_option("--out", opts.out, "output file (stdout when omitted)");
}

// Precedence: built-in defaults < config file < --preset < explicit flags.
cs::RunConfig effective_config(const CommonOpts& opts) {
    cs::RunConfig cfg;
    if (opts.config_path) cfg = cs::parse_config(cs::read_file(*opts.config_path));
    if (opts.preset) cs::apply_preset(cfg, *opts.preset);
    if (opts.d) cfg.d = *opts.d;
    if (opts.theta_a) cfg.theta_a_deg = *opts.theta_a;
    if (opts.theta_b) cfg.theta_b_deg = *opts.theta_b;
    if (opts.theta_c) cfg.theta_c_deg = *opts.theta_c;
    if (opts.third) cfg.third_enabled = *opts.third;
    return cfg;
}

void emit(const std::optional<std::string>& out, std::string_view content) {
    if (out) {
        cs::write_file_atomic(*out, content);
    } else {
        std::fwrite(content.data(), 1, content.size(), stdout);
    }
}

struct WindowOpt {
    double lo = 0.0, hi = 0.0;
    bool set = false;
};

void parse_window(const std::string& text, WindowOpt& w) {
    std::size_t colon = text.find(':');
    double lo, hi;
    if (colon == std::string::npos || !cs::parse_double(text.substr(0, colon), lo) ||
        !cs::parse_double(text.substr(colon + 1), hi))
        throw cs::ConfigError("--window expects '<fmin>:<fmax>', got '" + text + "'");
    w = {lo, hi, true};
}

cs::MeasuredSpectrum ingest_file(const std::string& path, const std::string& format) {
    std::string fmt = format;
    if (fmt == "auto") {
        std::string ext = std::filesystem::path(path).extension().string();
        for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == ".s2p") fmt = "s2p";
        else if (ext == ".csv") fmt = "csv";
        else
            throw cs::ConfigError("cannot infer format of '" + path +
                                  "' from its extension; pass --format s2p|csv");
    }
    std::string text = cs::read_file(path);
    std::string name = std::filesystem::path(path).filename().string();
    if (fmt == "s2p") return cs::to_measured(cs::parse_touchstone(text), name);
    return cs::parse_spectrum_csv(text, name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chiralsim: coupled chiral resonator transmission simulator and calibrator"};
    app.require_subcommand(1);
    app.fallthrough(false);
    app.footer("Model defaults (desk-scale tuning knobs, override via --config JSON keys):\n"
               "  omega_r 9 GHz, alpha 0.01 GHz, beta_diss 0.01 GHz, beta_a 0.05 GHz,\n"
               "  beta_b 0.05 GHz, beta_c beta_a/2, g0 1 GHz, d0 2 mm, d 1 mm, gamma 0.1 GHz.\n"
               "delta_phi has no default: set it or pick a preset. Angles are degrees at\n"
               "this boundary; frequencies GHz; distances mm.");

    // spectrum ---------------------------------------------------------------
    CommonOpts spectrum_opts;
    double fmin = 5.0, fmax = 10.0;
    int points = 2001;
    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "complex S21 over a frequency range at one spacing");
    add_common(cmd_spectrum, spectrum_opts);
    cmd_spectrum->add_option("--fmin", fmin, "GHz")->capture_default_str();
    cmd_spectrum->add_option("--fmax", fmax, "GHz")->capture_default_str();
    cmd_spectrum->add_option("--points", points, "frequency samples")->capture_default_str();

    // eigen ------------------------------------------------------------------
    CommonOpts eigen_opts;
    auto* cmd_eigen =
        app.add_subcommand("eigen", "hybridized eigenfrequencies as re_ghz,im_ghz rows");
    add_common(cmd_eigen, eigen_opts);

    // sweep ------------------------------------------------------------------
    CommonOpts sweep_opts;
    double s_fmin = 5.0, s_fmax = 10.0, dmin = 0.0, dmax = 10.0;
    int s_points = 2001, dsteps = 100, threads = 0;
    std::string heatmap;
    auto* cmd_sweep = app.add_subcommand("sweep", "|S21| grid over frequency x distance (CSV)");
    add_common(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--fmin", s_fmin, "GHz")->capture_default_str();
    cmd_sweep->add_option("--fmax", s_fmax, "GHz")->capture_default_str();
    cmd_sweep->add_option("--points", s_points, "frequency samples")->capture_default_str();
    cmd_sweep->add_option("--dmin", dmin, "mm")->capture_default_str();
    cmd_sweep->add_option("--dmax", dmax, "mm")->capture_default_str();
    cmd_sweep->add_option("--dsteps", dsteps, "distance samples")->capture_default_str();
    cmd_sweep->add_option("--threads", threads, "row workers (0 = all cores)")
        ->capture_default_str();
    cmd_sweep->add_option("--heatmap", heatmap, "also write a PGM heatmap to this path");

    // phasediagram -------------------------------------------------------------
    CommonOpts phase_opts;
    double p_dmin = 0.0, p_dmax = 10.0, phimin = 0.0, phimax = 360.0;
    int p_dsteps = 100, phisteps = 361;
    std::string phase_heatmap;
    auto* cmd_phase = app.add_subcommand(
        "phasediagram", "pair coupling over distance x orientation (CSV)");
    add_common(cmd_phase, phase_opts);
    cmd_phase->add_option("--dmin", p_dmin, "mm")->capture_default_str();
    cmd_phase->add_option("--dmax", p_dmax, "mm")->capture_default_str();
    cmd_phase->add_option("--dsteps", p_dsteps, "distance samples")->capture_default_str();
    cmd_phase->add_option("--phimin", phimin, "degrees")->capture_default_str();
    cmd_phase->add_option("--phimax", phimax, "degrees")->capture_default_str();
    cmd_phase->add_option("--phisteps", phisteps, "orientation samples")->capture_default_str();
    cmd_phase->add_option("--heatmap", phase_heatmap, "also write a PGM heatmap to this path");

    // peaks --------------------------------------------------------------------
    CommonOpts peak_opts;
    std::string peaks_in;
    std::string window_text;
    double prominence_db = 1.0;
    double k_fmin = 5.0, k_fmax = 10.0, k_dmin = 0.0, k_dmax = 10.0;
    int k_points = 2001, k_dsteps = 100, k_threads = 0;
    auto* cmd_peaks = app.add_subcommand(
        "peaks", "extract resonance peaks from a grid CSV (--in) or a fresh sweep");
    add_common(cmd_peaks, peak_opts);
    cmd_peaks->add_option("--in", peaks_in, "grid CSV produced by 'sweep'");
    cmd_peaks->add_option("--window", window_text,
                          "frequency window '<fmin>:<fmax>' GHz (default: full grid)");
    cmd_peaks->add_option("--prominence-db", prominence_db, "minimum peak prominence, dB")
        ->capture_default_str();
    cmd_peaks->add_option("--fmin", k_fmin, "GHz (sweep mode)")->capture_default_str();
    cmd_peaks->add_option("--fmax", k_fmax, "GHz (sweep mode)")->capture_default_str();
    cmd_peaks->add_option("--points", k_points, "frequency samples (sweep mode)")
        ->capture_default_str();
    cmd_peaks->add_option("--dmin", k_dmin, "mm (sweep mode)")->capture_default_str();
    cmd_peaks->add_option("--dmax", k_dmax, "mm (sweep mode)")->capture_default_str();
    cmd_peaks->add_option("--dsteps", k_dsteps, "distance samples (sweep mode)")
        ->capture_default_str();
    cmd_peaks->add_option("--threads", k_threads, "row workers (sweep mode)")
        ->capture_default_str();

    // fit-line -------------------------------------------------------------------
    CommonOpts fitline_opts;
    std::string fitline_in, fitline_branch = "third";
    auto* cmd_fitline =
        app.add_subcommand("fit-line", "least-squares line through one branch of a peak CSV");
    add_common(cmd_fitline, fitline_opts);
    cmd_fitline->add_option("--in", fitline_in, "peak CSV produced by 'peaks'")->required();
    cmd_fitline->add_option("--branch", fitline_branch, "branch to fit")->capture_default_str();

    // fit-decay ---------------------------------------------------------------
    CommonOpts fitdecay_opts;
    std::string fitdecay_in;
    auto* cmd_fitdecay = app.add_subcommand(
        "fit-decay", "decay length from lower/upper splitting vs distance in a peak CSV");
    add_common(cmd_fitdecay, fitdecay_opts);
    cmd_fitdecay->add_option("--in", fitdecay_in, "peak CSV produced by 'peaks'")->required();

    // fit-j ---------------------------------------------------------------------
    CommonOpts fitj_opts;
    std::vector<std::string> fitj_peaks;
    auto* cmd_fitj = app.add_subcommand(
        "fit-j", "third-mode couplings (j1, j2) from third-branch peaks of several orientations");
    add_common(cmd_fitj, fitj_opts);
    cmd_fitj
        ->add_option("--peaks", fitj_peaks,
                     "'<delta_phi_deg>:<peaks.csv>'; repeat for each orientation")
        ->required();

    // ingest ----------------------------------------------------------------------
    CommonOpts ingest_opts;
    std::string ingest_path, ingest_format = "auto";
    auto* cmd_ingest =
        app.add_subcommand("ingest", "parse a Touchstone .s2p or spectrum CSV to canonical CSV");
    add_common(cmd_ingest, ingest_opts);
    cmd_ingest->add_option("input", ingest_path, "measured data file")->required();
    cmd_ingest->add_option("--format", ingest_format, "s2p, csv or auto")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "chiralsim: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_spectrum)) {
            cs::RunConfig cfg = effective_config(spectrum_opts);
            auto pts = cs::spectrum(cs::to_mode_system(cfg), cs::to_drive(cfg), fmin, fmax, points);
            cs::MeasuredSpectrum out;
            out.source = "simulated";
            for (const auto& p : pts) out.points.emplace_back(p.frequency, p.s21);
            emit(spectrum_opts.out, cs::serialize_spectrum(out));
        } else if (app.got_subcommand(cmd_eigen)) {
            cs::RunConfig cfg = effective_config(eigen_opts);
            cs::ModeSystem system = cs::to_mode_system(cfg);
            std::vector<cs::ComplexFrequency> eig;
            if (system.has_third()) {
                eig = cs::eigenfrequencies(cs::coupling_matrix(system));
            } else {
                auto [hi, lo] = cs::eigenfrequencies_two_mode(system);
                eig = {hi, lo};
            }
            std::string text = "re_ghz,im_ghz\n";
            for (const auto& e : eig)
                text += cs::format_g9(e.real()) + "," + cs::format_g9(e.imag()) + "\n";
            emit(eigen_opts.out, text);
        } else if (app.got_subcommand(cmd_sweep)) {
            cs::RunConfig cfg = effective_config(sweep_opts);
            cs::SpectrumGrid grid = cs::grid_sweep(
                cs::to_mode_system(cfg), cs::to_drive(cfg), {s_fmin, s_fmax, s_points},
                cs::AxisSpec{dmin, dmax, dsteps}, {threads, false});
            emit(sweep_opts.out, cs::grid_to_csv(grid));
            if (!heatmap.empty()) cs::write_file_atomic(heatmap, cs::grid_to_pgm(grid));
        } else if (app.got_subcommand(cmd_phase)) {
            cs::RunConfig cfg = effective_config(phase_opts);
            if (!(cfg.g0 > 0.0)) throw cs::ConfigError("g0 must be > 0");
            if (!(cfg.d0 > 0.0)) throw cs::ConfigError("d0 must be > 0");
            cs::PhaseDiagram diagram = cs::phase_diagram(
                cfg.g0, cfg.d0, {p_dmin, p_dmax, p_dsteps},
                {cs::deg_to_rad(phimin), cs::deg_to_rad(phimax), phisteps});
            emit(phase_opts.out, cs::phase_diagram_to_csv(diagram));
            if (!phase_heatmap.empty())
                cs::write_file_atomic(phase_heatmap, cs::phase_diagram_to_pgm(diagram));
        } else if (app.got_subcommand(cmd_peaks)) {
            cs::SpectrumGrid grid;
            if (!peaks_in.empty()) {
                grid = cs::grid_from_csv(cs::read_file(peaks_in));
            } else {
                cs::RunConfig cfg = effective_config(peak_opts);
                grid = cs::grid_sweep(cs::to_mode_system(cfg), cs::to_drive(cfg),
                                      {k_fmin, k_fmax, k_points},
                                      cs::AxisSpec{k_dmin, k_dmax, k_dsteps}, {k_threads, false});
            }
            WindowOpt window;
            if (!window_text.empty()) parse_window(window_text, window);
            double lo = window.set ? window.lo : grid.freq_axis.front();
            double hi = window.set ? window.hi : grid.freq_axis.back();
            emit(peak_opts.out, cs::peaks_to_csv(cs::find_peaks(grid, lo, hi, prominence_db)));
        } else if (app.got_subcommand(cmd_fitline)) {
            cs::PeakSet peaks = cs::peaks_from_csv(cs::read_file(fitline_in));
            cs::Branch branch = cs::branch_from_name(fitline_branch);
            std::vector<std::pair<double, double>> pts;
            for (const cs::Peak& p : peaks.peaks)
                if (p.branch == branch) pts.emplace_back(p.d, p.f);
            if (pts.size() < 2)
                throw cs::FitError("found " + std::to_string(pts.size()) + " '" + fitline_branch +
                                   "' peaks in " + fitline_in + "; need at least 2");
            emit(fitline_opts.out, cs::line_fit_report(cs::fit_line(pts)));
        } else if (app.got_subcommand(cmd_fitdecay)) {
            cs::PeakSet peaks = cs::peaks_from_csv(cs::read_file(fitdecay_in));
            std::map<double, std::pair<std::optional<double>, std::optional<double>>> rows;
            for (const cs::Peak& p : peaks.peaks) {
                if (p.branch == cs::Branch::lower) rows[p.d].first = p.f;
                if (p.branch == cs::Branch::upper) rows[p.d].second = p.f;
            }
            std::vector<std::pair<double, double>> splittings;
            for (const auto& [d, pair] : rows)
                if (pair.first && pair.second)
                    splittings.emplace_back(d, *pair.second - *pair.first);
            if (splittings.size() < 2)
                throw cs::FitError("need lower/upper peak pairs at >= 2 distances, found " +
                                   std::to_string(splittings.size()));
            emit(fitdecay_opts.out, cs::decay_fit_report(cs::fit_decay(splittings)));
        } else if (app.got_subcommand(cmd_fitj)) {
            cs::RunConfig cfg = effective_config(fitj_opts);
            if (!cfg.omega_c_slope || !cfg.omega_c_intercept || !cfg.gamma)
                throw cs::ConfigError(
                    "fit-j requires omega_c_slope, omega_c_intercept and gamma "
                    "(set them directly or via a preset)");
            std::map<double, std::vector<std::pair<double, double>>> data;
            for (const std::string& entry : fitj_peaks) {
                std::size_t colon = entry.find(':');
                double deg;
                if (colon == std::string::npos || !cs::parse_double(entry.substr(0, colon), deg))
                    throw cs::ConfigError("--peaks expects '<delta_phi_deg>:<path>', got '" +
                                          entry + "'");
                std::string path = entry.substr(colon + 1);
                cs::PeakSet peaks = cs::peaks_from_csv(cs::read_file(path));
                auto& pts = data[cs::deg_to_rad(deg)];
                for (const cs::Peak& p : peaks.peaks)
                    if (p.branch == cs::Branch::third) pts.emplace_back(p.d, p.f);
                if (pts.empty())
                    throw cs::FitError("no 'third' branch peaks in " + path);
            }
            cs::JFitBase base{cs::ResonatorMode{cfg.omega_r, cfg.alpha, cfg.beta_a},
                              cs::ResonatorMode{cfg.omega_r, cfg.beta_diss, cfg.beta_b},
                              cfg.g0,
                              cfg.d0,
                              *cfg.omega_c_slope,
                              *cfg.omega_c_intercept,
                              *cfg.gamma};
            emit(fitj_opts.out, cs::j_fit_report(cs::fit_j_parameters(data, base)));
        } else if (app.got_subcommand(cmd_ingest)) {
            emit(ingest_opts.out, cs::serialize_spectrum(ingest_file(ingest_path, ingest_format)));
        }
    } catch (const cs::IoError& e) {
        std::cerr << "chiralsim: " << e.what() << "\n";
        return 1;
    } catch (const cs::DegeneracyError& e) {
        std::cerr << "chiralsim: " << e.what() << "\n";
        return 1;
    } catch (const cs::Error& e) {
        std::cerr << "chiralsim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "chiralsim: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
