#include "chiralsim/transmission.hpp"

#include <cmath>
#include <string>

namespace chiralsim {

namespace {

constexpr Complex kI(0.0, 1.0);

// Gaussian elimination with partial pivoting on the tiny dynamics matrix.
std::vector<Complex> solve_dense(CouplingMatrix m, std::vector<Complex> rhs, double omega_ghz) {
    const std::size_t n = m.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) norm = std::max(norm, std::abs(m(i, j)));
    const double tiny = (norm > 0.0) ? 1e-14 * norm : 0.0;

    std::array<std::size_t, 3> perm = {0, 1, 2};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(perm[r], col)) > std::abs(m(perm[piv], col))) piv = r;
        std::swap(perm[col], perm[piv]);
        Complex pivot = m(perm[col], col);
        if (!(std::abs(pivot) > tiny))
            throw DegeneracyError(omega_ghz, "zero pivot in the mode dynamics solve");
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex factor = m(perm[r], col) / pivot;
            if (factor == Complex(0.0)) continue;
            for (std::size_t c = col; c < n; ++c) m(perm[r], c) -= factor * m(perm[col], c);
            rhs[perm[r]] -= factor * rhs[perm[col]];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t col = n; col-- > 0;) {
        Complex acc = rhs[perm[col]];
        for (std::size_t c = col + 1; c < n; ++c) acc -= m(perm[col], c) * x[c];
        x[col] = acc / m(perm[col], col);
    }
    return x;
}

} // namespace

std::vector<Complex> mode_amplitudes(const ModeSystem& system, const DriveSpec& drive,
                                     double omega_ghz, double p_in) {
    if (!(omega_ghz > 0.0))
        throw ConfigError("drive frequency must be > 0 GHz, got " + std::to_string(omega_ghz));
    CouplingMatrix ham = coupling_matrix(system); // validates the system
    const std::size_t n = ham.size();

    std::array<double, 3> beta = {system.mode_a.line_coupling, system.mode_b.line_coupling,
                                  system.mode_c ? system.mode_c->line_coupling : 0.0};
    std::array<double, 3> theta = {drive.theta_a, drive.theta_b, drive.theta_c};

    CouplingMatrix dyn(n);
    std::vector<Complex> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        dyn(i, i) = kI * (omega_ghz - ham(i, i)) - beta[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            dyn(i, j) = -(std::sqrt(beta[i] * beta[j]) + kI * ham(i, j));
        }
        rhs[i] = kI * std::sqrt(beta[i]) * std::exp(kI * theta[i]) * p_in;
    }
    return solve_dense(dyn, std::move(rhs), omega_ghz);
}

TransmissionPoint s21(const ModeSystem& system, const DriveSpec& drive, double omega_ghz) {
    std::vector<Complex> amps = mode_amplitudes(system, drive, omega_ghz, 1.0);
    std::array<double, 3> beta = {system.mode_a.line_coupling, system.mode_b.line_coupling,
                                  system.mode_c ? system.mode_c->line_coupling : 0.0};
    Complex radiated = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) radiated += std::sqrt(beta[i]) * amps[i];
    TransmissionPoint point;
    point.frequency = omega_ghz;
    point.s21 = -2.0 * kI * radiated; // (P_out - P_in) / P_in at unit input
    point.s21_mag_db = 20.0 * std::log10(std::abs(point.s21));
    return point;
}

std::vector<TransmissionPoint> spectrum(const ModeSystem& system, const DriveSpec& drive,
                                        double f_min, double f_max, int n_points) {
    if (!(f_min < f_max))
        throw ConfigError("spectrum requires f_min < f_max, got [" + std::to_string(f_min) + ", " +
                          std::to_string(f_max) + "]");
    if (n_points < 2)
        throw ConfigError("spectrum requires n_points >= 2, got " + std::to_string(n_points));
    std::vector<TransmissionPoint> out;
    out.reserve(static_cast<std::size_t>(n_points));
    for (double f : uniform_grid(f_min, f_max, n_points)) out.push_back(s21(system, drive, f));
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("grid needs at least one point, got " + std::to_string(n));
    if (n == 1) {
        if (lo != hi) throw ConfigError("single-point grid requires lo == hi");
        return {lo};
    }
    if (!(lo < hi)) throw ConfigError("grid requires lo < hi, got [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
    std::vector<double> g(static_cast<std::size_t>(n));
    g.front() = lo;
    g.back() = hi;
    for (int i = 1; i + 1 < n; ++i)
        g[static_cast<std::size_t>(i)] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    return g;
}

} // namespace chiralsim
