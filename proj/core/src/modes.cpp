#include "chiralsim/modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chiralsim {

void ResonatorMode::validate() const {
    if (!(omega_r > 0.0))
        throw ConfigError("omega_r must be > 0 GHz, got " + std::to_string(omega_r));
    if (!(dissipation >= 0.0))
        throw ConfigError("dissipation must be >= 0 GHz, got " + std::to_string(dissipation));
    if (!(line_coupling >= 0.0))
        throw ConfigError("line_coupling must be >= 0 GHz, got " + std::to_string(line_coupling));
}

void ModeSystem::validate() const {
    mode_a.validate();
    mode_b.validate();
    coupling.validate();
    if (mode_c.has_value() != coupling.third.has_value())
        throw ConfigError("mode_c and coupling.third must be present together");
    if (mode_c) mode_c->validate();
}

ModeSystem with_distance(ModeSystem system, double d_mm) {
    if (!(d_mm >= 0.0)) throw ConfigError("d must be >= 0 mm, got " + std::to_string(d_mm));
    system.coupling.geometry.d = d_mm;
    if (system.mode_c)
        system.mode_c->omega_r = third_mode_frequency(*system.coupling.third, d_mm);
    return system;
}

CouplingMatrix::CouplingMatrix(std::size_t n) : n_(n) {
    if (n != 2 && n != 3)
        throw ConfigError("coupling matrix size must be 2 or 3, got " + std::to_string(n));
}

Complex CouplingMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

CouplingMatrix coupling_matrix(const ModeSystem& system) {
    system.validate();
    CouplingMatrix m(system.mode_count());
    m(0, 0) = system.mode_a.complex_frequency();
    m(1, 1) = system.mode_b.complex_frequency();
    double d_ab = coupling_ab(system.coupling);
    m(0, 1) = m(1, 0) = d_ab;
    if (system.mode_c) {
        const ThirdModeParams& third = *system.coupling.third;
        double phi = system.coupling.geometry.delta_phi;
        m(2, 2) = system.mode_c->complex_frequency();
        m(0, 2) = m(2, 0) = coupling_bc(third, phi);
        m(1, 2) = m(2, 1) = coupling_ac(third, phi);
    }
    return m;
}

namespace {

bool descending(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

// Roots of x^2 + b x + c, picking the sqrt branch that avoids cancellation.
std::array<Complex, 2> quadratic_roots(Complex b, Complex c) {
    Complex s = std::sqrt(b * b - 4.0 * c);
    if (std::real(std::conj(b) * s) < 0.0) s = -s;
    Complex q = -0.5 * (b + s);
    Complex r1 = (std::abs(q) > 0.0) ? c / q : Complex(0.0);
    return {q, r1};
}

std::array<Complex, 2> eig2(Complex m00, Complex m01, Complex m10, Complex m11) {
    std::array<Complex, 2> r;
    if (m01 * m10 == Complex(0.0)) {
        r = {m00, m11}; // triangular: the diagonal is exact
    } else {
        r = quadratic_roots(-(m00 + m11), m00 * m11 - m01 * m10);
    }
    if (!descending(r[0], r[1])) std::swap(r[0], r[1]);
    return r;
}

std::vector<Complex> cubic_roots(Complex t2, Complex t1, Complex t0) {
    // Monic cubic x^3 + t2 x^2 + t1 x + t0, via the depressed form
    // t^3 + p t + q with x = t - t2/3.
    const Complex shift = -t2 / 3.0;
    const Complex p = t1 - t2 * t2 / 3.0;
    const Complex q = t0 - t2 * t1 / 3.0 + 2.0 * t2 * t2 * t2 / 27.0;
    Complex w = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex s1 = -q / 2.0 + w;
    Complex s2 = -q / 2.0 - w;
    Complex s = (std::abs(s1) >= std::abs(s2)) ? s1 : s2;

    std::vector<Complex> roots(3);
    if (std::abs(s) == 0.0) {
        roots[0] = roots[1] = roots[2] = shift; // triple root
        return roots;
    }
    Complex u = std::pow(s, 1.0 / 3.0);
    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        roots[k] = u - p / (3.0 * u) + shift;
        u *= omega;
    }
    return roots;
}

} // namespace

std::pair<ComplexFrequency, ComplexFrequency> eigenfrequencies_two_mode(const ModeSystem& system) {
    system.validate();
    if (system.has_third())
        throw ConfigError("eigenfrequencies_two_mode requires a system without a third mode");
    Complex wa = system.mode_a.complex_frequency();
    Complex wb = system.mode_b.complex_frequency();
    double d_ab = coupling_ab(system.coupling);
    Complex hi, lo;
    if (d_ab == 0.0) {
        hi = wa; // decoupled limit: the bare frequencies, untouched
        lo = wb;
    } else {
        Complex half_gap = (wa - wb) / 2.0;
        Complex split = std::sqrt(Complex(d_ab * d_ab) + half_gap * half_gap);
        Complex mean = (wa + wb) / 2.0;
        hi = mean + split;
        lo = mean - split;
    }
    if (!descending(hi, lo)) std::swap(hi, lo);
    return {hi, lo};
}

std::vector<ComplexFrequency> eigenfrequencies(const CouplingMatrix& m) {
    std::vector<Complex> lam;
    if (m.size() == 2) {
        auto r = eig2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
        lam.assign(r.begin(), r.end());
        std::sort(lam.begin(), lam.end(), descending);
        return lam;
    }

    // Peel off exactly decoupled modes so diagonal and block-diagonal inputs
    // reproduce their entries bit-exactly.
    auto zero_pair = [&](std::size_t i, std::size_t j) {
        return m(i, j) == Complex(0.0) && m(j, i) == Complex(0.0);
    };
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
        if (zero_pair(k, i) && zero_pair(k, j)) {
            auto r = eig2(m(i, i), m(i, j), m(j, i), m(j, j));
            lam = {m(k, k), r[0], r[1]};
            std::sort(lam.begin(), lam.end(), descending);
            return lam;
        }
    }

    const Complex tr = m.trace();
    const Complex minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) +
                           m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                           m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const Complex det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                        m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                        m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    lam = cubic_roots(-tr, minors, -det);

    // One Newton step per root on the characteristic polynomial. Simple roots
    // land at ~1e-11 GHz. A coupled exact double root is limited to
    // ~sqrt(eps)*scale by its conditioning, which every fixed-precision
    // method shares; the trace identity degrades to that level there too.
    for (Complex& l : lam) {
        Complex f = ((l - tr) * l + minors) * l - det;
        Complex fp = (3.0 * l - 2.0 * tr) * l + minors;
        if (std::abs(fp) > 1e-300) l -= f / fp;
    }

    std::sort(lam.begin(), lam.end(), descending);
    return lam;
}

} // namespace chiralsim
