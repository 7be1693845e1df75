#include "chiralsim/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "chiralsim/angles.hpp"
#include "chiralsim/text_io.hpp"

namespace chiralsim {

LineFit fit_line(const std::vector<std::pair<double, double>>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw FitError("line fit needs at least 2 points, got " + std::to_string(n));
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw FitError("line fit is degenerate: all x values are equal");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    fit.n_points = n;
    return fit;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& splittings) {
    if (splittings.size() < 2)
        throw FitError("decay fit needs at least 2 points, got " +
                       std::to_string(splittings.size()));
    std::vector<std::pair<double, double>> logged;
    logged.reserve(splittings.size());
    for (const auto& [d, split] : splittings) {
        if (!(split > 0.0))
            throw FitError("decay fit requires positive splittings; got " + format_g9(split) +
                           " at d = " + format_g9(d) + " mm");
        logged.emplace_back(d, std::log(split / 2.0));
    }
    LineFit line = fit_line(logged);
    if (!(line.slope < 0.0))
        throw FitError("splittings do not decay with distance (fitted slope " +
                       format_g9(line.slope) + " >= 0)");
    DecayFit fit;
    fit.d0_hat = -1.0 / line.slope;
    fit.g0_theta_hat = std::exp(line.intercept);
    fit.residual_rms = line.residual_rms;
    fit.n_points = line.n_points;
    return fit;
}

double third_branch_frequency(const ModeSystem& system) {
    if (!system.has_third())
        throw ConfigError("third_branch_frequency requires a three-mode system");
    double bare =
        third_mode_frequency(*system.coupling.third, system.coupling.geometry.d);
    std::vector<ComplexFrequency> lam = eigenfrequencies(coupling_matrix(system));
    double best = lam[0].real();
    double best_gap = std::fabs(best - bare);
    for (std::size_t k = 1; k < lam.size(); ++k) {
        double gap = std::fabs(lam[k].real() - bare);
        if (gap < best_gap) {
            best_gap = gap;
            best = lam[k].real();
        }
    }
    return best;
}

namespace {

struct JObjective {
    const std::map<double, std::vector<std::pair<double, double>>>& data;
    const JFitBase& base;
    std::size_t n_points;

    double rms(double j1, double j2) const {
        ThirdModeParams third{j1, j2, base.omega_c_slope, base.omega_c_intercept, base.gamma};
        double ss = 0.0;
        for (const auto& [delta_phi, points] : data) {
            for (const auto& [d, f_obs] : points) {
                ModeSystem sys{base.mode_a,
                               base.mode_b,
                               ResonatorMode{third_mode_frequency(third, d), base.gamma, 0.0},
                               CouplingParams{ChiralGeometry(delta_phi, d, base.d0), base.g0,
                                              third}};
                double r = f_obs - third_branch_frequency(sys);
                ss += r * r;
            }
        }
        return std::sqrt(ss / static_cast<double>(n_points));
    }
};

} // namespace

JFit fit_j_parameters(
    const std::map<double, std::vector<std::pair<double, double>>>& peaks_by_delta_phi,
    const JFitBase& base) {
    if (!(base.j_max > base.j_min) || !(base.j_min >= 0.0))
        throw ConfigError("j search bracket must satisfy 0 <= j_min < j_max");

    std::size_t n_points = 0;
    bool cos_regime = false, sin_regime = false;
    for (const auto& [delta_phi, points] : peaks_by_delta_phi) {
        n_points += points.size();
        double u = wrap_turns(delta_phi / kTwoPi);
        double c = cos2pi_turn(u), s = sin2pi_turn(u);
        if (c * c > s * s) cos_regime = true;
        if (s * s > c * c) sin_regime = true;
    }
    if (n_points == 0) throw FitError("no third-branch peaks supplied");
    if (!cos_regime)
        throw FitError("third-branch peaks cover no cos^2-dominated orientation; "
                       "j1 is unconstrained");
    if (!sin_regime)
        throw FitError("third-branch peaks cover no sin^2-dominated orientation; "
                       "j2 is unconstrained");

    JObjective objective{peaks_by_delta_phi, base, n_points};

    // Stage 1: coarse grid over the bracket.
    const int grid_n = 21;
    const double span = base.j_max - base.j_min;
    double best_j1 = base.j_min, best_j2 = base.j_min;
    double best = objective.rms(best_j1, best_j2);
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            double j1 = base.j_min + span * i / (grid_n - 1);
            double j2 = base.j_min + span * j / (grid_n - 1);
            double r = objective.rms(j1, j2);
            if (r < best) {
                best = r;
                best_j1 = j1;
                best_j2 = j2;
            }
        }
    }

    JFit fit;
    fit.residual_trace.push_back(best);

    // Stage 2: step-halving coordinate descent.
    double step = span / (grid_n - 1);
    while (step > 1e-8) {
        bool improved = false;
        for (int dim = 0; dim < 2; ++dim) {
            for (double sign : {-1.0, 1.0}) {
                double j1 = best_j1 + (dim == 0 ? sign * step : 0.0);
                double j2 = best_j2 + (dim == 1 ? sign * step : 0.0);
                if (j1 < base.j_min || j2 < base.j_min || j1 > base.j_max || j2 > base.j_max)
                    continue;
                double r = objective.rms(j1, j2);
                if (r < best) {
                    best = r;
                    best_j1 = j1;
                    best_j2 = j2;
                    improved = true;
                }
            }
        }
        fit.residual_trace.push_back(best);
        if (!improved) step *= 0.5;
    }

    fit.j1_hat = best_j1;
    fit.j2_hat = best_j2;
    fit.residual_rms = best;
    return fit;
}

std::string line_fit_report(const LineFit& fit) {
    return "slope_ghz_per_mm=" + format_g9(fit.slope) + "\nintercept_ghz=" +
           format_g9(fit.intercept) + "\nresidual_rms=" + format_g9(fit.residual_rms) +
           "\nn_points=" + std::to_string(fit.n_points) + "\n";
}

std::string decay_fit_report(const DecayFit& fit) {
    return "d0_mm=" + format_g9(fit.d0_hat) + "\ng0_theta_ghz=" + format_g9(fit.g0_theta_hat) +
           "\nresidual_rms=" + format_g9(fit.residual_rms) +
           "\nn_points=" + std::to_string(fit.n_points) + "\n";
}

std::string j_fit_report(const JFit& fit) {
    return "j1_ghz=" + format_g9(fit.j1_hat) + "\nj2_ghz=" + format_g9(fit.j2_hat) +
           "\nresidual_rms=" + format_g9(fit.residual_rms) + "\n";
}

} // namespace chiralsim
