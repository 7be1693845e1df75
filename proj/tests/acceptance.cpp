// Acceptance suite: one check per release criterion, each printed as a
// single pass/fail line with its runtime. Exits nonzero if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chiralsim/angles.hpp"
#include "chiralsim/calibration.hpp"
#include "chiralsim/config.hpp"
#include "chiralsim/ingest.hpp"
#include "chiralsim/presets.hpp"
#include "chiralsim/sweep.hpp"

using namespace chiralsim;

namespace {

struct Check {
    std::string failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures += (failures.empty() ? "" : "; ") + what;
    }
    void require_close(double got, double want, double tol, const std::string& what) {
        if (!(std::fabs(got - want) <= tol))
            require(false, what + ": got " + std::to_string(got) + ", want " +
                               std::to_string(want) + " +- " + std::to_string(tol));
    }
};

ModeSystem default_two_mode(double delta_phi_deg, double d) {
    return {ResonatorMode{9.0, 0.01, 0.05}, ResonatorMode{9.0, 0.01, 0.05}, std::nullopt,
            CouplingParams{ChiralGeometry(deg_to_rad(delta_phi_deg), d, 2.0), 1.0, std::nullopt}};
}

// --- criteria ---------------------------------------------------------------

void criterion_1_angular_landmarks(Check& c) {
    c.require_close(angular_factor(deg_to_rad(0.0)), 0.0, 1e-6, "theta(0)");
    c.require_close(angular_factor(deg_to_rad(90.0)), 0.25, 1e-6, "theta(90)");
    c.require_close(angular_factor(deg_to_rad(180.0)), 0.5, 1e-6, "theta(180)");
    c.require_close(angular_factor(deg_to_rad(270.0)), 0.0, 1e-6, "theta(270)");
    c.require_close(angular_factor(deg_to_rad(300.0)), -0.1525104, 1e-6, "theta(300)");
    // qualitative splitting ordering P < Q < R, with the S null
    c.require(angular_factor(0.0) < angular_factor(deg_to_rad(90.0)) &&
                  angular_factor(deg_to_rad(90.0)) < angular_factor(deg_to_rad(180.0)),
              "ordering P < Q < R");
    c.require(angular_factor(deg_to_rad(270.0)) == 0.0, "S null");
}

void criterion_2_sign_inversion(Check& c) {
    // 100 x 360 grid; the sampled orientations sit strictly inside the open
    // intervals so every value must be strictly signed.
    std::vector<double> d_axis = uniform_grid(0.0, 10.0, 100);
    for (int k = 0; k < 360; ++k) {
        double phi_deg = 0.5 + k;
        for (double d : d_axis) {
            double dab =
                coupling_ab({ChiralGeometry(deg_to_rad(phi_deg), d, 2.0), 1.0, std::nullopt});
            bool ok = (phi_deg < 270.0) ? (dab > 0.0) : (dab < 0.0);
            if (!ok) {
                c.require(false, "sign of delta_ab at phi = " + std::to_string(phi_deg) +
                                     " deg, d = " + std::to_string(d));
                return;
            }
        }
    }
}

void criterion_3_spectrum_eigenvalue_consistency(Check& c) {
    const Preset& r = preset("R");
    const int n_points = 4001;
    const double fmin = 8.0, fmax = 10.0;
    const double half_bin = 0.5 * (fmax - fmin) / (n_points - 1);

    double previous_split = 1e300;
    double previous_peak = 1e300;
    for (double d : r.distances) {
        ModeSystem sys = default_two_mode(r.delta_phi_deg, d);
        auto [hi, lo] = eigenfrequencies_two_mode(sys);

        SpectrumGrid grid = grid_sweep(sys, {}, {fmin, fmax, n_points}, std::vector<double>{d});
        PeakSet peaks = find_peaks(grid, fmin, fmax, 1.0);
        c.require(!peaks.peaks.empty(), "no peak found at d = " + std::to_string(d));
        for (const Peak& p : peaks.peaks) {
            double err = std::min(std::fabs(p.f - hi.real()), std::fabs(p.f - lo.real()));
            c.require(err <= half_bin, "peak at d = " + std::to_string(d) + " off by " +
                                           std::to_string(err / (2.0 * half_bin)) + " bins");
        }

        double split = hi.real() - lo.real();
        c.require(split < previous_split,
                  "splitting not strictly decreasing at d = " + std::to_string(d));
        previous_split = split;
        if (!peaks.peaks.empty()) {
            double f = peaks.peaks.back().f; // bright branch
            c.require(f < previous_peak,
                      "bright peak not converging at d = " + std::to_string(d));
            previous_peak = f;
        }
    }
}

void criterion_4_trace_and_solver_oracles(Check& c) {
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> wr(5.0, 10.0), loss(0.0, 0.1), cpl(-0.2, 0.2);
    double worst_trace = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        CouplingMatrix m(3);
        for (std::size_t i = 0; i < 3; ++i) m(i, i) = Complex(wr(rng), -loss(rng));
        m(0, 1) = m(1, 0) = cpl(rng);
        m(0, 2) = m(2, 0) = cpl(rng);
        m(1, 2) = m(2, 1) = cpl(rng);
        auto lam = eigenfrequencies(m);
        worst_trace = std::max(worst_trace, std::abs(lam[0] + lam[1] + lam[2] - m.trace()));
    }
    c.require(worst_trace <= 1e-9,
              "trace mismatch up to " + std::to_string(worst_trace) + " GHz");

    std::uniform_real_distribution<double> line(0.0, 0.08), phi(0.0, kTwoPi), dist(0.0, 4.0),
        freq(7.5, 10.5), phase(0.0, kTwoPi);
    const Complex I(0.0, 1.0);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        ModeSystem sys{ResonatorMode{wr(rng), loss(rng), line(rng)},
                       ResonatorMode{wr(rng), loss(rng), line(rng)}, std::nullopt,
                       CouplingParams{ChiralGeometry(phi(rng), dist(rng), 2.0), 1.0,
                                      std::nullopt}};
        DriveSpec drive{phase(rng), phase(rng), 0.0};
        double w = freq(rng);
        auto amps = mode_amplitudes(sys, drive, w);

        // closed-form 2x2 inversion
        double ba = sys.mode_a.line_coupling, bb = sys.mode_b.line_coupling;
        Complex m00 = I * (w - sys.mode_a.complex_frequency()) - ba;
        Complex m11 = I * (w - sys.mode_b.complex_frequency()) - bb;
        Complex off = -(std::sqrt(ba * bb) + I * coupling_ab(sys.coupling));
        Complex r0 = I * std::sqrt(ba) * std::exp(I * drive.theta_a);
        Complex r1 = I * std::sqrt(bb) * std::exp(I * drive.theta_b);
        Complex det = m00 * m11 - off * off;
        Complex a0 = (r0 * m11 - off * r1) / det;
        Complex a1 = (m00 * r1 - off * r0) / det;
        double scale = std::abs(a0) + std::abs(a1) + 1e-300;
        worst_rel = std::max(worst_rel,
                             std::max(std::abs(amps[0] - a0), std::abs(amps[1] - a1)) / scale);
    }
    c.require(worst_rel <= 1e-10,
              "solver vs closed form relative error " + std::to_string(worst_rel));
}

void criterion_5_omega_c_lines(Check& c) {
    ThirdModeParams p_line{0.0, 0.0, -0.516, 10.02, 0.0};
    c.require(third_mode_frequency(p_line, 2.0) == 8.988, "omega_c(2) != 8.988 exactly");
    c.require(third_mode_frequency(p_line, 0.0) == 10.02, "omega_c(0) != 10.02 exactly");

    std::vector<std::pair<double, double>> pts;
    for (double d : preset("P").distances) pts.emplace_back(d, -0.516 * d + 10.02);
    LineFit fit = fit_line(pts);
    c.require(std::fabs(fit.slope - (-0.516)) <= 1e-9, "slope recovery");
    c.require(std::fabs(fit.intercept - 10.02) <= 1e-9, "intercept recovery");
}

void criterion_6_generate_and_recover(Check& c) {
    // decay fit
    for (auto [amp, d0] : std::vector<std::pair<double, double>>{
             {0.5, 2.0}, {0.25, 0.7}, {5.0, 6.0}}) {
        std::vector<std::pair<double, double>> data;
        for (double d : {0.0, 0.8, 1.6, 3.2, 4.8})
            data.emplace_back(d, 2.0 * amp * std::exp(-d / d0));
        DecayFit fit = fit_decay(data);
        c.require(std::fabs(fit.d0_hat - d0) / d0 <= 1e-9, "d0 recovery");
        c.require(std::fabs(fit.g0_theta_hat - amp) / amp <= 1e-9, "amplitude recovery");
    }

    // j fit against the three-mode eigenvalue model, preset R values
    const Preset& r = preset("R");
    JFitBase base{ResonatorMode{9.0, 0.01, 0.05}, ResonatorMode{9.0, 0.01, 0.05}, 1.0, 2.0,
                  r.omega_c_slope, r.omega_c_intercept, r.gamma};
    std::map<double, std::vector<std::pair<double, double>>> data;
    for (double phi : {M_PI, M_PI / 2.0}) {
        for (double d : r.distances) {
            ThirdModeParams third{r.j1, r.j2, r.omega_c_slope, r.omega_c_intercept, r.gamma};
            ModeSystem sys{base.mode_a, base.mode_b,
                           ResonatorMode{third_mode_frequency(third, d), r.gamma, 0.0},
                           CouplingParams{ChiralGeometry(phi, d, 2.0), 1.0, third}};
            data[phi].emplace_back(d, third_branch_frequency(sys));
        }
    }
    JFit fit = fit_j_parameters(data, base);
    c.require(std::fabs(fit.j1_hat - r.j1) <= 1e-4,
              "j1 recovery: got " + std::to_string(fit.j1_hat));
    c.require(std::fabs(fit.j2_hat - r.j2) <= 1e-4,
              "j2 recovery: got " + std::to_string(fit.j2_hat));
}

void criterion_7_bright_dark_switching(Check& c) {
    ModeSystem sys = default_two_mode(300.0, 1.0);
    auto asymmetry = [&](double theta_deg) {
        auto amps = mode_amplitudes(sys, {0.0, deg_to_rad(theta_deg), 0.0}, 9.0);
        double a = std::abs(amps[0]), b = std::abs(amps[1]);
        return std::fabs((a - b) / (a + b));
    };
    double bright = asymmetry(180.0);
    double dark = asymmetry(270.0);
    c.require(dark >= 3.0 * bright, "occupancy asymmetry " + std::to_string(dark) +
                                        " not 3x above " + std::to_string(bright));
}

void criterion_8_ingest_round_trips(Check& c) {
    const double re = 0.31234567, im = -0.71234567;
    double mag = std::hypot(re, im), ang = std::atan2(im, re) * 180.0 / M_PI;
    char ri[160], ma[160], db[160];
    std::snprintf(ri, sizeof ri, "# GHz S RI R 50\n9 0 0 %.17g %.17g 0 0 0 0\n", re, im);
    std::snprintf(ma, sizeof ma, "# GHz S MA R 50\n9 0 0 %.17g %.17g 0 0 0 0\n", mag, ang);
    std::snprintf(db, sizeof db, "# GHz S DB R 50\n9 0 0 %.17g %.17g 0 0 0 0\n",
                  20.0 * std::log10(mag), ang);
    auto a = parse_touchstone(ri)[0].s21;
    auto b = parse_touchstone(ma)[0].s21;
    auto d = parse_touchstone(db)[0].s21;
    c.require(std::abs(a - b) <= 1e-9, "RI vs MA");
    c.require(std::abs(a - d) <= 1e-9, "RI vs DB");

    MeasuredSpectrum s;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int i = 0; i < 64; ++i)
        s.points.emplace_back(5.0 + 0.07 * i, Complex(val(rng), val(rng)));
    std::string once = serialize_spectrum(s);
    std::string twice = serialize_spectrum(parse_spectrum_csv(once));
    c.require(once == twice, "CSV parse-serialize identity");
}

void criterion_9_colormap_performance(Check& c) {
    RunConfig cfg = parse_config(R"({"preset":"R","third_enabled":true})");
    ModeSystem sys = to_mode_system(cfg);
    DriveSpec drive = to_drive(cfg);
    AxisSpec freq{5.0, 10.0, 2001};
    AxisSpec dist{0.0, 10.0, 100};

    auto t0 = std::chrono::steady_clock::now();
    SpectrumGrid first = grid_sweep(sys, drive, freq, dist, {0, false});
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(seconds < 10.0, "sweep took " + std::to_string(seconds) + " s");

    std::string reference = grid_to_csv(first);
    c.require(grid_to_csv(grid_sweep(sys, drive, freq, dist, {0, false})) == reference,
              "rerun not byte-identical");
    c.require(grid_to_csv(grid_sweep(sys, drive, freq, dist, {1, false})) == reference,
              "1-thread run not byte-identical");
    c.require(grid_to_csv(grid_sweep(sys, drive, freq, dist, {4, false})) == reference,
              "4-thread run not byte-identical");
}

struct Criterion {
    int id;
    const char* label;
    double budget_seconds;
    std::function<void(Check&)> body;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "angular-factor landmark values", 1e-3, criterion_1_angular_landmarks},
        {2, "coupling sign inversion beyond 270 deg", 1.0, criterion_2_sign_inversion},
        {3, "peak/eigenvalue consistency and merging, preset R", 5.0,
         criterion_3_spectrum_eigenvalue_consistency},
        {4, "trace identity and solver oracle agreement", 5.0,
         criterion_4_trace_and_solver_oracles},
        {5, "omega_c line values and regression recovery", 1e-3, criterion_5_omega_c_lines},
        {6, "generate-and-recover calibration", 30.0, criterion_6_generate_and_recover},
        {7, "bright/dark switching by relative drive phase", 1.0,
         criterion_7_bright_dark_switching},
        {8, "ingest format agreement and round-trip", 1.0, criterion_8_ingest_round_trips},
        {9, "config-R colormap speed and determinism", 10.0, criterion_9_colormap_performance},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds > criterion.budget_seconds)
            check.require(false, "runtime " + std::to_string(seconds) + " s exceeds " +
                                     std::to_string(criterion.budget_seconds) + " s");
        bool pass = check.failures.empty();
        failed += pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s (%.3f ms)%s%s\n", pass ? "PASS" : "FAIL",
                    criterion.id, criterion.label, seconds * 1e3, pass ? "" : " -- ",
                    pass ? "" : check.failures.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
