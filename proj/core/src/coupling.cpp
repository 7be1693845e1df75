#include "chiralsim/coupling.hpp"

#include <cmath>
#include <string>

#include "chiralsim/angles.hpp"

namespace chiralsim {

ChiralGeometry::ChiralGeometry(double delta_phi_rad, double d_mm, double d0_mm)
    : delta_phi(wrap_angle(delta_phi_rad)), d(d_mm), d0(d0_mm) {
    validate();
}

void ChiralGeometry::validate() const {
    if (!(d >= 0.0)) throw ConfigError("d must be >= 0 mm, got " + std::to_string(d));
    if (!(d0 > 0.0)) throw ConfigError("d0 must be > 0 mm, got " + std::to_string(d0));
}

void ThirdModeParams::validate() const {
    if (!(j1 >= 0.0)) throw ConfigError("j1 must be >= 0 GHz, got " + std::to_string(j1));
    if (!(j2 >= 0.0)) throw ConfigError("j2 must be >= 0 GHz, got " + std::to_string(j2));
    if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0 GHz, got " + std::to_string(gamma));
}

void CouplingParams::validate() const {
    geometry.validate();
    if (!(g0 > 0.0)) throw ConfigError("g0 must be > 0 GHz, got " + std::to_string(g0));
    if (third) third->validate();
}

double angular_factor(double delta_phi_rad) {
    double u = wrap_turns(delta_phi_rad / kTwoPi);
    double s = sinpi_turn(u); // sin(delta_phi / 2)
    double c = cospi_turn(u); // cos(delta_phi / 2)
    return u * s * (s + c);
}

double coupling_ab(const CouplingParams& params) {
    params.validate();
    const ChiralGeometry& g = params.geometry;
    return params.g0 * angular_factor(g.delta_phi) * std::exp(-g.d / g.d0);
}

double coupling_ac(const ThirdModeParams& third, double delta_phi_rad) {
    third.validate();
    double c = cos2pi_turn(wrap_turns(delta_phi_rad / kTwoPi));
    return third.j1 * c * c;
}

double coupling_bc(const ThirdModeParams& third, double delta_phi_rad) {
    third.validate();
    double s = sin2pi_turn(wrap_turns(delta_phi_rad / kTwoPi));
    return third.j2 * s * s;
}

double third_mode_frequency(const ThirdModeParams& third, double d_mm) {
    if (!(d_mm >= 0.0)) throw ConfigError("d must be >= 0 mm, got " + std::to_string(d_mm));
    double omega = third.omega_c_slope * d_mm + third.omega_c_intercept;
    if (!(omega > 0.0)) {
        throw ConfigError("omega_c line gives " + std::to_string(omega) + " GHz at d = " +
                          std::to_string(d_mm) + " mm; must stay positive over the d range");
    }
    return omega;
}

} // namespace chiralsim
