#include <cmath>
#include <random>

#include <doctest.h>

#include "chiralsim/errors.hpp"
#include "chiralsim/ingest.hpp"

using namespace chiralsim;

TEST_CASE("touchstone RI passthrough") {
    auto recs = parse_touchstone("! a comment\n"
                                 "# GHz S RI R 50\n"
                                 "9.0 0 0 0.5 0 0 0 0 0\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].frequency == 9.0);
    CHECK(recs[0].s21 == std::complex<double>(0.5, 0.0));
    CHECK(recs[0].s11 == std::complex<double>(0.0, 0.0));
}

TEST_CASE("touchstone MA with MHz frequencies") {
    auto recs = parse_touchstone("# MHz S MA R 50\n"
                                 "9000 0 0 1 90 0 0 0 0\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].frequency == 9.0);
    CHECK(std::abs(recs[0].s21 - std::complex<double>(0.0, 1.0)) < 1e-15);
}

TEST_CASE("touchstone DB decoding") {
    auto recs = parse_touchstone("# GHz S DB R 50\n"
                                 "9.0 0 0 -20 0 0 0 0 0\n");
    CHECK(std::abs(recs[0].s21 - std::complex<double>(0.1, 0.0)) < 1e-15);
}

TEST_CASE("touchstone option line handling") {
    CHECK_NOTHROW(parse_touchstone("# ghz s ri r 50\n9 0 0 0 0 0 0 0 0\n")); // case-insensitive
    CHECK_THROWS_AS(parse_touchstone("9 0 0 0 0 0 0 0 0\n"), ParseError);    // data first
    CHECK_THROWS_AS(parse_touchstone("! only comments\n"), ParseError);      // no option line
    CHECK_THROWS_AS(parse_touchstone("# GHz S RI R 50\n"), ParseError);      // no data
    CHECK_THROWS_AS(parse_touchstone("# parsec S RI R 50\n9 0 0 0 0 0 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_touchstone("# GHz S XY R 50\n9 0 0 0 0 0 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_touchstone("# GHz S RI R\n9 0 0 0 0 0 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_touchstone("# GHz S RI R 50\n# GHz S RI R 50\n"), ParseError);
}

TEST_CASE("touchstone data errors carry line numbers") {
    try {
        parse_touchstone("# GHz S RI R 50\n9 0 0 0.5 0 0 0 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        parse_touchstone("# GHz S RI R 50\n9 0 0 0 0 0 0 0 0\n8 0 0 0 0 0 0 0 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3); // non-monotonic frequency
    }
    CHECK_THROWS_AS(parse_touchstone("# GHz S RI R 50\n9 0 0 zz 0 0 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_touchstone("# GHz S RI R 50\n-9 0 0 0 0 0 0 0 0\n"), ParseError);
}

TEST_CASE("touchstone accepts CRLF and inline comments") {
    auto recs = parse_touchstone("# GHz S RI R 50\r\n"
                                 "9.0 0 0 0.25 0 0 0 0 0 ! trailing note\r\n"
                                 "9.5 0 0 0.5 0 0 0 0 0\r\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[1].frequency == 9.5);
}

TEST_CASE("frequency units agree after normalization") {
    auto make = [](const char* unit, const char* value) {
        std::string text = std::string("# ") + unit + " S RI R 50\n" + value +
                           " 0 0 0.5 0.25 0 0 0 0\n";
        return parse_touchstone(text)[0].frequency;
    };
    double ghz = make("GHz", "9.123");
    CHECK(std::fabs(make("MHz", "9123") - ghz) / ghz < 1e-12);
    CHECK(std::fabs(make("kHz", "9123000") - ghz) / ghz < 1e-12);
    CHECK(std::fabs(make("Hz", "9123000000") - ghz) / ghz < 1e-12);
}

TEST_CASE("RI, MA and DB encodings of the same data agree") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> mag_dist(1e-3, 2.0), ang_dist(-180.0, 180.0);
    for (int trial = 0; trial < 100; ++trial) {
        double mag = mag_dist(rng), ang = ang_dist(rng);
        double re = mag * std::cos(ang * M_PI / 180.0);
        double im = mag * std::sin(ang * M_PI / 180.0);
        char ri[160], ma[160], db[160];
        std::snprintf(ri, sizeof ri, "# GHz S RI R 50\n9 0 0 %.17g %.17g 0 0 0 0\n", re, im);
        std::snprintf(ma, sizeof ma, "# GHz S MA R 50\n9 0 0 %.17g %.17g 0 0 0 0\n", mag, ang);
        std::snprintf(db, sizeof db, "# GHz S DB R 50\n9 0 0 %.17g %.17g 0 0 0 0\n",
                      20.0 * std::log10(mag), ang);
        auto a = parse_touchstone(ri)[0].s21;
        auto b = parse_touchstone(ma)[0].s21;
        auto c = parse_touchstone(db)[0].s21;
        CHECK(std::abs(a - b) < 1e-9);
        CHECK(std::abs(a - c) < 1e-9);
    }
}

TEST_CASE("touchstone writer round-trips") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<TouchstoneRecord> recs;
    for (int i = 0; i < 20; ++i) {
        TouchstoneRecord r;
        r.frequency = 8.0 + 0.1 * i;
        r.s11 = {val(rng), val(rng)};
        r.s21 = {val(rng), val(rng)};
        r.s12 = {val(rng), val(rng)};
        r.s22 = {val(rng), val(rng)};
        recs.push_back(r);
    }
    std::string text = to_touchstone(recs);
    CHECK(text.substr(0, text.find('\n')) == "# GHz S RI R 50");
    auto back = parse_touchstone(text);
    // value-level identity at 9 significant digits: a second pass is stable
    CHECK(to_touchstone(back) == text);
}

TEST_CASE("spectrum CSV parsing") {
    SUBCASE("RI rows") {
        MeasuredSpectrum s = parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n"
                                                "8.5,0.25,-0.5\n"
                                                "9.5,-1,0\n",
                                                "bench.csv");
        REQUIRE(s.points.size() == 2);
        CHECK(s.points[0].first == 8.5);
        CHECK(s.points[0].second == std::complex<double>(0.25, -0.5));
        CHECK(s.source == "bench.csv (csv ri)");
    }
    SUBCASE("magnitude-only rows get zero phase") {
        MeasuredSpectrum s =
            parse_spectrum_csv("frequency_ghz,s21_mag_db\n9,-20\n", "mag.csv");
        CHECK(std::abs(s.points[0].second - std::complex<double>(0.1, 0.0)) < 1e-15);
        CHECK(s.source == "mag.csv (csv db)");
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_spectrum_csv("frequency,s21\n1,2\n"), ParseError);
        CHECK_THROWS_AS(parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n"), ParseError);
        CHECK_THROWS_AS(parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n9,a,0\n"), ParseError);
        CHECK_THROWS_AS(parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n9,0\n"), ParseError);
        CHECK_THROWS_AS(
            parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n9,0,0\n8,0,0\n"), ParseError);
        try {
            parse_spectrum_csv("frequency_ghz,s21_re,s21_im\n9,0,0\n8,0,0\n");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
}

TEST_CASE("spectrum CSV serialization") {
    SUBCASE("single point gives header plus one row") {
        MeasuredSpectrum s;
        s.points.emplace_back(9.0, std::complex<double>(0.5, -0.25));
        std::string text = serialize_spectrum(s);
        CHECK(text == "frequency_ghz,s21_re,s21_im\n9,0.5,-0.25\n");
    }
    SUBCASE("parse-serialize is the identity on random spectra") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> val(-2.0, 2.0);
        for (int trial = 0; trial < 50; ++trial) {
            MeasuredSpectrum s;
            double f = 1.0;
            for (int i = 0; i < 30; ++i) {
                f += std::uniform_real_distribution<double>(1e-3, 0.1)(rng);
                s.points.emplace_back(f, std::complex<double>(val(rng), val(rng)));
            }
            std::string once = serialize_spectrum(s);
            std::string twice = serialize_spectrum(parse_spectrum_csv(once));
            CHECK(once == twice);
        }
    }
    SUBCASE("values keep 9 significant digits") {
        MeasuredSpectrum s;
        s.points.emplace_back(9.123456789123, std::complex<double>(0.123456789123, 0.0));
        std::string text = serialize_spectrum(s);
        CHECK(text.find("9.12345679") != std::string::npos);
        CHECK(text.find("0.123456789") != std::string::npos);
    }
}

TEST_CASE("touchstone records convert to a measured spectrum") {
    auto recs = parse_touchstone("# GHz S RI R 50\n9 0.1 0.2 0.3 0.4 0.5 0.6 0.7 0.8\n");
    MeasuredSpectrum s = to_measured(recs, "dev.s2p");
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].second == std::complex<double>(0.3, 0.4));
    CHECK(s.source == "dev.s2p (touchstone)");
}
